#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scrumcard/domain.hpp"
#include "scrumcard/metrics.hpp"

namespace scrumcard {

enum class RatingLevel { critical = 0, warning = 1, acceptable = 2, good = 3, excellent = 4 };

std::string to_string(RatingLevel level);

struct Rating {
    RatingLevel level = RatingLevel::acceptable;
    std::string rationale;  // names the threshold crossed (or respected)
};

enum class Trend { improving, stable, worsening, not_applicable };

std::string to_string(Trend t);

enum class MetricId { budget, balance, daily_trend, task_size, mraee, unestimated, meetings };

std::string to_string(MetricId id);

struct MetricPanel {
    MetricId metric_id = MetricId::budget;
    SprintSeries series;
    Rating rating;
    Trend improvement = Trend::not_applicable;
};

struct DonenessSprint {
    int sprint = 1;
    bool testing_ok = false;
    bool demo_ok = false;
    bool td_ok = false;
    bool release_applicable = false;
    bool release_ok = false;
};

struct DonenessReport {
    std::vector<DonenessSprint> per_sprint;
    bool overall_ok = false;
};

enum class MemberFlag { daily_outlier, sprint_budget_violation, low_participation, never_presented };

std::string to_string(MemberFlag f);

struct MemberAssessment {
    std::string member_id;
    std::vector<MemberFlag> flags;
    int sprints_over_budget = 0;
    double score = 1.0;
};

struct TeamAssessment {
    std::string team_id;
    std::vector<MetricPanel> panels;
    DonenessReport doneness;
    std::vector<MemberAssessment> member_assessments;
    double team_score = 0.0;
    double final_grade = 0.0;

    const MetricPanel* find_panel(MetricId id) const;
};

// Threshold classifiers. Comparisons are strict on the unfavorable side, so
// a value exactly at a threshold takes the more favorable rating.
Rating classify_budget(const SprintSeries& team_effort, int member_count, const ProjectConfig& cfg);
Rating classify_balance(double gini, const ProjectConfig& cfg);
Rating classify_daily_trend(const std::vector<double>& r_per_sprint, const ProjectConfig& cfg);
Rating classify_task_size(const BoxplotStats& estimated_overall, const ProjectConfig& cfg);
Rating classify_mraee(const SprintSeries& series, const ProjectConfig& cfg);
Rating classify_unestimated(const SprintSeries& series, const ProjectConfig& cfg);
Rating classify_meetings(const MeetingStats& scrum, const MeetingStats& planning, const ProjectConfig& cfg);

// Least-squares slope of the defined per-sprint values against sprint index;
// lower values are better for every current metric. Requires >= 2 defined
// values, otherwise not_applicable.
Trend improvement(const std::vector<std::optional<double>>& per_sprint);

// Doneness rules per sprint. Throws MissingEvidenceError when a sprint has
// no evidence record.
struct MissingEvidenceError : std::runtime_error {
    explicit MissingEvidenceError(const std::string& what) : std::runtime_error(what) {}
};

DonenessReport check_doneness(const CohortDataset& dataset);

MemberAssessment assess_member(const CohortDataset& dataset, const std::string& member_id);

TeamAssessment aggregate(const CohortDataset& dataset,
                         std::vector<MetricPanel> panels,
                         DonenessReport doneness,
                         std::vector<MemberAssessment> members);

// Grade arithmetic exposed for direct verification.
double rating_value(RatingLevel level);
double coordination_subscore(const std::vector<MetricPanel>& panels);
double doneness_subscore(const DonenessReport& report);

// Full pipeline: metrics -> panels -> doneness -> members -> grade.
TeamAssessment assess(const CohortDataset& dataset);

}  // namespace scrumcard
