#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scrumcard/domain.hpp"

namespace scrumcard {

// Per-sprint values with an overall aggregate. Sprints with no data carry
// no value (e.g. MRAEE in a sprint without estimated active tasks).
struct SprintSeries {
    std::vector<std::optional<double>> per_sprint;
    double overall = 0.0;

    std::vector<double> defined() const;
};

struct DailyEffortSeries {
    int sprint = 1;
    std::vector<double> hours_by_day;  // zero-filled, length sprint_length_days
    double trend_r = 0.0;              // Pearson r vs day index, 0 for flat series
    bool flat = false;                 // hours variance was zero
};

// Tukey five-number summary with 1.5*IQR whiskers clamped to the data.
struct BoxplotStats {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    double whisker_low = 0, whisker_high = 0;
    std::vector<double> outliers;
    std::size_t n = 0;
};

struct MeetingSprintStats {
    int count = 0;
    std::optional<double> mean_duration_minutes;
    bool full_attendance = true;
    int total_absences = 0;
};

struct MeetingStats {
    MeetingKind kind = MeetingKind::scrum;
    std::vector<MeetingSprintStats> per_sprint;
};

enum class SizeBasis { estimated, actual };

// Pearson correlation coefficient; 0 when either series has zero variance.
double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

// Quantile by (n-1)*p positional interpolation over sorted values.
double quantile(std::vector<double> values, double p);

BoxplotStats boxplot_stats(std::vector<double> values);

// Total hours per sprint; overall = mean across sprints.
SprintSeries team_sprint_effort(const CohortDataset& dataset);

// members x sprints matrix of hours, row order = dataset.members order.
std::vector<std::vector<double>> member_sprint_effort(const CohortDataset& dataset);

// Per-member project-total hours, in dataset.members order.
std::vector<double> member_total_effort(const CohortDataset& dataset);

// Gini index as normalized mean absolute difference, in [0,1].
// All-zero totals map to 0 (callers attach a data-quality warning).
double gini_imbalance(const std::vector<double>& totals);

DailyEffortSeries daily_effort(const CohortDataset& dataset, int sprint);

DailyEffortSeries member_daily_effort(const CohortDataset& dataset,
                                      const std::string& member_id, int sprint);

// Task sizes normalized per participant for one sprint. The divisor is
// planned_assignees when present, else the count of distinct contributors,
// else 1. Tasks lacking the requested quantity are excluded.
BoxplotStats normalized_task_sizes(const CohortDataset& dataset, int sprint, SizeBasis which);

// Pooled over all sprints; used for the size-cap classification.
BoxplotStats normalized_task_sizes_overall(const CohortDataset& dataset, SizeBasis which);

// Mean absolute relative estimation error |actual-estimate|/estimate over
// tasks with estimate > 0 and logged effort > 0; overall = mean of the
// defined per-sprint values.
SprintSeries mraee(const CohortDataset& dataset);

// Fraction of active tasks (tasks with logged effort) lacking an estimate;
// overall is pooled across sprints, not a mean of means.
SprintSeries unestimated_active_fraction(const CohortDataset& dataset);

MeetingStats meeting_stats(const CohortDataset& dataset, MeetingKind kind);

}  // namespace scrumcard
