#pragma once

#include <optional>
#include <map>
#include <string>
#include <vector>

namespace scrumcard {

// Project-level parameters and assessment thresholds. Defaults follow the
// course setup: four two-week sprints, 16 h per person per sprint.
struct ProjectConfig {
    int sprint_count = 4;
    int sprint_length_days = 14;
    double budget_hours_per_person_per_sprint = 16.0;
    double budget_tolerance_hours = 1.0;
    double task_size_cap_hours_per_participant = 2.0;
    double gini_good = 0.03;
    double gini_bad = 0.09;
    double trend_suspect = 0.3;
    double trend_critical = 0.5;
    double mraee_excellent = 0.20;
    double mraee_critical = 0.50;
    double unestimated_critical = 0.05;
    double daily_outlier_hours = 10.0;
    double individual_budget_tolerance_fraction = 0.25;
    std::vector<int> release_sprints = {2, 4};
    int demo_failure_tolerance = 1;
    double team_weight = 0.8;
    double individual_weight = 0.2;

    // Returns a message per violated invariant; empty when valid.
    std::vector<std::string> check() const;
};

struct Member {
    std::string member_id;
    std::string display_name;
};

enum class TaskKind { story, task, technical_debt };

struct Task {
    std::string task_id;
    std::string title;
    TaskKind kind = TaskKind::task;
    int sprint = 1;
    std::optional<double> estimate_hours;
    std::optional<int> planned_assignees;
};

struct EffortEntry {
    std::string task_id;
    std::string member_id;
    int day = 1;   // day within the task's sprint, 1..sprint_length_days
    double hours = 0.0;
};

enum class MeetingKind { scrum, planning };

struct Meeting {
    std::string meeting_id;
    MeetingKind kind = MeetingKind::scrum;
    int sprint = 1;
    int day = 1;
    double duration_minutes = 0.0;
    std::vector<std::string> participants;
};

struct DonenessEvidence {
    int sprint = 1;
    bool unit_test_evidence = false;
    bool e2e_test_evidence = false;
    int demo_failures = 0;
    bool td_tasks_consistent = false;
    bool docker_image_available = false;
};

struct ManualScores {
    std::vector<double> review_quality;         // one per sprint, in [0,1]
    std::vector<double> retrospective_quality;  // one per sprint, in [0,1]
    std::map<std::string, int> participation;   // member_id -> times presented
};

// One team's full project record. Immutable after construction by convention;
// all analysis functions take it by const reference.
struct CohortDataset {
    std::string team_id;
    ProjectConfig config;
    std::vector<Member> members;
    std::vector<Task> tasks;
    std::vector<EffortEntry> effort;
    std::vector<Meeting> meetings;
    std::vector<DonenessEvidence> doneness;
    std::optional<ManualScores> manual;

    const Task* find_task(const std::string& task_id) const;
    const Member* find_member(const std::string& member_id) const;
};

struct ReferenceError {
    std::string location;  // e.g. "effort[3]"
    std::string message;
};

// Checks every cross-reference and range constraint. Empty result iff the
// dataset is internally consistent.
std::vector<ReferenceError> resolve_references(const CohortDataset& dataset);

}  // namespace scrumcard
