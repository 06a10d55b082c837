#include "scrumcard/domain.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace scrumcard {

std::vector<std::string> ProjectConfig::check() const {
    std::vector<std::string> out;
    auto fail = [&](const std::string& m) { out.push_back(m); };
    if (sprint_count < 1) fail("sprint_count must be positive");
    if (sprint_length_days < 1) fail("sprint_length_days must be positive");
    if (budget_hours_per_person_per_sprint <= 0) fail("budget_hours_per_person_per_sprint must be positive");
    if (budget_tolerance_hours < 0) fail("budget_tolerance_hours must be non-negative");
    if (task_size_cap_hours_per_participant <= 0) fail("task_size_cap_hours_per_participant must be positive");
    if (!(gini_good >= 0 && gini_good <= 1 && gini_bad >= 0 && gini_bad <= 1)) fail("gini thresholds must be fractions");
    if (!(gini_good < gini_bad)) fail("gini_good must be below gini_bad");
    if (!(trend_suspect >= -1 && trend_critical <= 1)) fail("trend thresholds must lie in [-1,1]");
    if (!(trend_suspect < trend_critical)) fail("trend_suspect must be below trend_critical");
    if (!(mraee_excellent < mraee_critical)) fail("mraee_excellent must be below mraee_critical");
    if (!(unestimated_critical >= 0 && unestimated_critical <= 1)) fail("unestimated_critical must be a fraction");
    if (daily_outlier_hours <= 0) fail("daily_outlier_hours must be positive");
    if (!(individual_budget_tolerance_fraction >= 0 && individual_budget_tolerance_fraction <= 1))
        fail("individual_budget_tolerance_fraction must be a fraction");
    if (demo_failure_tolerance < 0) fail("demo_failure_tolerance must be non-negative");
    if (std::fabs(team_weight + individual_weight - 1.0) > 1e-9) fail("team_weight + individual_weight must equal 1");
    if (team_weight < 0 || individual_weight < 0) fail("grade weights must be non-negative");
    for (int s : release_sprints)
        if (s < 1 || s > sprint_count) fail("release sprint " + std::to_string(s) + " out of range");
    return out;
}

const Task* CohortDataset::find_task(const std::string& task_id) const {
    for (const auto& t : tasks)
        if (t.task_id == task_id) return &t;
    return nullptr;
}

const Member* CohortDataset::find_member(const std::string& member_id) const {
    for (const auto& m : members)
        if (m.member_id == member_id) return &m;
    return nullptr;
}

std::vector<ReferenceError> resolve_references(const CohortDataset& dataset) {
    std::vector<ReferenceError> errors;
    auto add = [&](std::string loc, std::string msg) {
        errors.push_back({std::move(loc), std::move(msg)});
    };
    const auto& cfg = dataset.config;

    std::set<std::string> member_ids;
    for (std::size_t i = 0; i < dataset.members.size(); ++i) {
        const auto& m = dataset.members[i];
        if (!member_ids.insert(m.member_id).second)
            add("members[" + std::to_string(i) + "]", "duplicate member_id \"" + m.member_id + "\"");
    }

    std::set<std::string> task_ids;
    for (std::size_t i = 0; i < dataset.tasks.size(); ++i) {
        const auto& t = dataset.tasks[i];
        std::string loc = "tasks[" + std::to_string(i) + "]";
        if (!task_ids.insert(t.task_id).second)
            add(loc, "duplicate task_id \"" + t.task_id + "\"");
        if (t.sprint < 1 || t.sprint > cfg.sprint_count)
            add(loc, "sprint " + std::to_string(t.sprint) + " out of range 1.." + std::to_string(cfg.sprint_count));
        if (t.estimate_hours && *t.estimate_hours < 0)
            add(loc, "estimate_hours must be non-negative");
        if (t.planned_assignees && *t.planned_assignees < 1)
            add(loc, "planned_assignees must be positive");
    }

    for (std::size_t i = 0; i < dataset.effort.size(); ++i) {
        const auto& e = dataset.effort[i];
        std::string loc = "effort[" + std::to_string(i) + "]";
        if (!task_ids.count(e.task_id))
            add(loc, "unknown task \"" + e.task_id + "\"");
        if (!member_ids.count(e.member_id))
            add(loc, "unknown member \"" + e.member_id + "\"");
        if (e.day < 1 || e.day > cfg.sprint_length_days)
            add(loc, "day " + std::to_string(e.day) + " out of range 1.." + std::to_string(cfg.sprint_length_days));
        if (e.hours <= 0)
            add(loc, "hours must be positive");
    }

    std::set<std::string> meeting_ids;
    for (std::size_t i = 0; i < dataset.meetings.size(); ++i) {
        const auto& mt = dataset.meetings[i];
        std::string loc = "meetings[" + std::to_string(i) + "]";
        if (!meeting_ids.insert(mt.meeting_id).second)
            add(loc, "duplicate meeting_id \"" + mt.meeting_id + "\"");
        if (mt.sprint < 1 || mt.sprint > cfg.sprint_count)
            add(loc, "sprint " + std::to_string(mt.sprint) + " out of range");
        if (mt.day < 1 || mt.day > cfg.sprint_length_days)
            add(loc, "day " + std::to_string(mt.day) + " out of range");
        if (mt.duration_minutes <= 0)
            add(loc, "duration_minutes must be positive");
        if (mt.participants.empty())
            add(loc, "participants must be non-empty");
        for (const auto& p : mt.participants)
            if (!member_ids.count(p))
                add(loc, "unknown participant \"" + p + "\"");
    }

    std::set<int> doneness_sprints;
    for (std::size_t i = 0; i < dataset.doneness.size(); ++i) {
        const auto& d = dataset.doneness[i];
        std::string loc = "doneness[" + std::to_string(i) + "]";
        if (d.sprint < 1 || d.sprint > cfg.sprint_count)
            add(loc, "sprint " + std::to_string(d.sprint) + " out of range");
        else if (!doneness_sprints.insert(d.sprint).second)
            add(loc, "duplicate doneness record for sprint " + std::to_string(d.sprint));
        if (d.demo_failures < 0)
            add(loc, "demo_failures must be non-negative");
    }

    if (dataset.manual) {
        const auto& man = *dataset.manual;
        auto check_scores = [&](const std::vector<double>& v, const std::string& name) {
            if (!v.empty() && static_cast<int>(v.size()) != cfg.sprint_count)
                add("manual." + name, "expected one score per sprint");
            for (double s : v)
                if (s < 0.0 || s > 1.0) add("manual." + name, "score out of [0,1]");
        };
        check_scores(man.review_quality, "review_quality");
        check_scores(man.retrospective_quality, "retrospective_quality");
        for (const auto& [id, count] : man.participation) {
            if (!member_ids.count(id))
                add("manual.participation", "unknown member \"" + id + "\"");
            if (count < 0)
                add("manual.participation", "count must be non-negative");
        }
    }

    for (const auto& msg : cfg.check()) add("config", msg);

    return errors;
}

}  // namespace scrumcard
