#include "scrumcard/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scrumcard {

std::string to_string(RatingLevel level) {
    switch (level) {
        case RatingLevel::excellent: return "excellent";
        case RatingLevel::good: return "good";
        case RatingLevel::acceptable: return "acceptable";
        case RatingLevel::warning: return "warning";
        case RatingLevel::critical: return "critical";
    }
    return "?";
}

std::string to_string(Trend t) {
    switch (t) {
        case Trend::improving: return "improving";
        case Trend::stable: return "stable";
        case Trend::worsening: return "worsening";
        case Trend::not_applicable: return "n/a";
    }
    return "?";
}

std::string to_string(MetricId id) {
    switch (id) {
        case MetricId::budget: return "budget";
        case MetricId::balance: return "balance";
        case MetricId::daily_trend: return "daily_trend";
        case MetricId::task_size: return "task_size";
        case MetricId::mraee: return "mraee";
        case MetricId::unestimated: return "unestimated";
        case MetricId::meetings: return "meetings";
    }
    return "?";
}

std::string to_string(MemberFlag f) {
    switch (f) {
        case MemberFlag::daily_outlier: return "daily_outlier";
        case MemberFlag::sprint_budget_violation: return "sprint_budget_violation";
        case MemberFlag::low_participation: return "low_participation";
        case MemberFlag::never_presented: return "never_presented";
    }
    return "?";
}

const MetricPanel* TeamAssessment::find_panel(MetricId id) const {
    for (const auto& p : panels)
        if (p.metric_id == id) return &p;
    return nullptr;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Rating classify_budget(const SprintSeries& team_effort, int member_count, const ProjectConfig& cfg) {
    const double target = member_count * cfg.budget_hours_per_person_per_sprint;
    const double tol = member_count * cfg.budget_tolerance_hours;
    const int n = static_cast<int>(team_effort.per_sprint.size());
    const int first = std::max(0, n - 3);  // the latest three sprints
    bool all_in_band = true;
    bool any_far = false;
    for (int i = first; i < n; ++i) {
        double v = team_effort.per_sprint[i].value_or(0.0);
        double dev = std::fabs(v - target);
        if (dev > tol) all_in_band = false;
        if (dev > 0.25 * target) any_far = true;
    }
    if (any_far)
        return {RatingLevel::critical, "a recent sprint deviates from the " + fmt(target) +
                                           " h budget by more than 25%"};
    if (all_in_band)
        return {RatingLevel::good, "latest three sprints within " + fmt(target) + " +/- " + fmt(tol) + " h"};
    return {RatingLevel::warning, "a recent sprint falls outside " + fmt(target) + " +/- " + fmt(tol) + " h"};
}

Rating classify_balance(double gini, const ProjectConfig& cfg) {
    if (gini > cfg.gini_bad)
        return {RatingLevel::critical, "Gini " + fmt(gini) + " above " + fmt(cfg.gini_bad)};
    if (gini <= cfg.gini_good)
        return {RatingLevel::good, "Gini " + fmt(gini) + " within " + fmt(cfg.gini_good)};
    return {RatingLevel::acceptable,
            "Gini " + fmt(gini) + " between " + fmt(cfg.gini_good) + " and " + fmt(cfg.gini_bad)};
}

Rating classify_daily_trend(const std::vector<double>& r_per_sprint, const ProjectConfig& cfg) {
    const int n = static_cast<int>(r_per_sprint.size());
    const int first = std::max(0, n - 3);  // worst of the latest three sprints
    Rating worst{RatingLevel::good, "r within " + fmt(cfg.trend_suspect) + " in the latest three sprints"};
    for (int i = first; i < n; ++i) {
        double r = r_per_sprint[i];
        if (r > cfg.trend_critical)
            return {RatingLevel::critical,
                    "sprint " + std::to_string(i + 1) + " r " + fmt(r) + " above " + fmt(cfg.trend_critical)};
        if (r > cfg.trend_suspect && worst.level > RatingLevel::warning)
            worst = {RatingLevel::warning,
                     "sprint " + std::to_string(i + 1) + " r " + fmt(r) + " above " + fmt(cfg.trend_suspect)};
    }
    return worst;
}

Rating classify_task_size(const BoxplotStats& estimated_overall, const ProjectConfig& cfg) {
    const double cap = cfg.task_size_cap_hours_per_participant;
    if (estimated_overall.n == 0)
        return {RatingLevel::warning, "no estimated tasks to size"};
    if (estimated_overall.q3 <= cap)
        return {RatingLevel::good, "three quarters of estimated task sizes within " + fmt(cap) + " h"};
    if (estimated_overall.q3 <= 1.5 * cap)
        return {RatingLevel::warning, "estimated q3 " + fmt(estimated_overall.q3) + " above the " +
                                          fmt(cap) + " h cap"};
    return {RatingLevel::critical, "estimated q3 " + fmt(estimated_overall.q3) + " above " +
                                       fmt(1.5 * cap) + " h"};
}

Rating classify_mraee(const SprintSeries& series, const ProjectConfig& cfg) {
    const int n = static_cast<int>(series.per_sprint.size());
    bool late_critical = false;
    for (int i = std::max(0, n - 2); i < n; ++i)
        if (series.per_sprint[i] && *series.per_sprint[i] > cfg.mraee_critical) late_critical = true;
    if (series.overall > cfg.mraee_critical || late_critical)
        return {RatingLevel::critical, "MRAEE above " + fmt(cfg.mraee_critical) +
                                           " overall or in the latest two sprints"};
    if (series.overall <= cfg.mraee_excellent)
        return {RatingLevel::excellent, "overall MRAEE " + fmt(series.overall) + " within " +
                                            fmt(cfg.mraee_excellent)};
    return {RatingLevel::acceptable, "overall MRAEE " + fmt(series.overall) + " between " +
                                         fmt(cfg.mraee_excellent) + " and " + fmt(cfg.mraee_critical)};
}

Rating classify_unestimated(const SprintSeries& series, const ProjectConfig& cfg) {
    if (series.overall == 0.0)
        return {RatingLevel::good, "all active tasks estimated"};
    if (series.overall <= cfg.unestimated_critical)
        return {RatingLevel::acceptable, "unestimated fraction " + fmt(series.overall) + " within " +
                                             fmt(cfg.unestimated_critical)};
    return {RatingLevel::critical, "unestimated fraction " + fmt(series.overall) + " above " +
                                       fmt(cfg.unestimated_critical)};
}

Rating classify_meetings(const MeetingStats& scrum, const MeetingStats& planning,
                         const ProjectConfig& cfg) {
    (void)cfg;
    for (std::size_t i = 0; i < scrum.per_sprint.size(); ++i)
        if (scrum.per_sprint[i].count == 0)
            return {RatingLevel::critical,
                    "no tracked scrum meetings in sprint " + std::to_string(i + 1)};
    bool every_sprint_covered = true;
    for (const auto& sp : planning.per_sprint)
        if (sp.count == 0) every_sprint_covered = false;
    int planning_absences = 0;
    for (const auto& sp : planning.per_sprint) planning_absences += sp.total_absences;
    if (every_sprint_covered && planning_absences <= 1)
        return {RatingLevel::good, "meetings tracked every sprint, at most one planning absence"};
    return {RatingLevel::warning, every_sprint_covered
                                      ? "more than one planning absence"
                                      : "a sprint has no tracked planning meeting"};
}

Trend improvement(const std::vector<std::optional<double>>& per_sprint) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < per_sprint.size(); ++i) {
        if (!per_sprint[i]) continue;
        xs.push_back(static_cast<double>(i + 1));
        ys.push_back(*per_sprint[i]);
    }
    if (xs.size() < 2) return Trend::not_applicable;
    const std::size_t n = xs.size();
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;
    double eps = my == 0.0 ? 1e-9 : 0.05 * std::fabs(my);
    if (slope < -eps) return Trend::improving;   // lower is better
    if (slope > eps) return Trend::worsening;
    return Trend::stable;
}

DonenessReport check_doneness(const CohortDataset& dataset) {
    const auto& cfg = dataset.config;
    std::vector<const DonenessEvidence*> by_sprint(cfg.sprint_count, nullptr);
    for (const auto& d : dataset.doneness)
        if (d.sprint >= 1 && d.sprint <= cfg.sprint_count) by_sprint[d.sprint - 1] = &d;
    std::string missing;
    for (int s = 0; s < cfg.sprint_count; ++s)
        if (!by_sprint[s]) missing += (missing.empty() ? "" : ", ") + std::to_string(s + 1);
    if (!missing.empty())
        throw MissingEvidenceError("missing doneness evidence for sprint(s) " + missing);

    int total_failures = 0;
    for (const auto& d : dataset.doneness) total_failures += d.demo_failures;
    const bool demo_ok = total_failures <= cfg.demo_failure_tolerance;

    // TD reduction tasks are expected from sprint 3 on
    std::vector<bool> has_td_task(cfg.sprint_count, false);
    for (const auto& e : dataset.effort) {
        const Task* t = dataset.find_task(e.task_id);
        if (t && t->kind == TaskKind::technical_debt) has_td_task[t->sprint - 1] = true;
    }

    DonenessReport report;
    report.overall_ok = true;
    for (int s = 1; s <= cfg.sprint_count; ++s) {
        const auto& ev = *by_sprint[s - 1];
        DonenessSprint ds;
        ds.sprint = s;
        ds.testing_ok = ev.unit_test_evidence && ev.e2e_test_evidence;
        ds.demo_ok = demo_ok;
        ds.td_ok = ev.td_tasks_consistent && (s < 3 || has_td_task[s - 1]);
        ds.release_applicable =
            std::find(cfg.release_sprints.begin(), cfg.release_sprints.end(), s) !=
            cfg.release_sprints.end();
        ds.release_ok = !ds.release_applicable || ev.docker_image_available;
        report.overall_ok = report.overall_ok && ds.testing_ok && ds.demo_ok && ds.td_ok &&
                            (!ds.release_applicable || ds.release_ok);
        report.per_sprint.push_back(ds);
    }
    return report;
}

MemberAssessment assess_member(const CohortDataset& dataset, const std::string& member_id) {
    const auto& cfg = dataset.config;
    MemberAssessment a;
    a.member_id = member_id;

    std::map<std::pair<int, int>, double> day_totals;  // (sprint, day) -> hours
    std::vector<double> sprint_totals(cfg.sprint_count, 0.0);
    for (const auto& e : dataset.effort) {
        if (e.member_id != member_id) continue;
        const Task* t = dataset.find_task(e.task_id);
        if (!t) continue;
        day_totals[{t->sprint, e.day}] += e.hours;
        sprint_totals[t->sprint - 1] += e.hours;
    }

    bool outlier = false;
    for (const auto& [key, hours] : day_totals)
        if (hours > cfg.daily_outlier_hours) outlier = true;
    if (outlier) a.flags.push_back(MemberFlag::daily_outlier);

    const double budget = cfg.budget_hours_per_person_per_sprint;
    const double lo = budget * (1.0 - cfg.individual_budget_tolerance_fraction);
    const double hi = budget * (1.0 + cfg.individual_budget_tolerance_fraction);
    for (double v : sprint_totals)
        if (v < lo || v > hi) a.sprints_over_budget += 1;
    if (a.sprints_over_budget > 0) a.flags.push_back(MemberFlag::sprint_budget_violation);

    if (dataset.manual && !dataset.manual->participation.empty()) {
        auto it = dataset.manual->participation.find(member_id);
        int count = it == dataset.manual->participation.end() ? 0 : it->second;
        if (count == 0)
            a.flags.push_back(MemberFlag::never_presented);
        else if (count < cfg.sprint_count)
            a.flags.push_back(MemberFlag::low_participation);
    }

    double deduction = 0.0;
    if (outlier) deduction += 0.2;
    deduction += 0.2 * std::min(a.sprints_over_budget, 2);
    for (auto f : a.flags) {
        if (f == MemberFlag::never_presented) deduction += 0.3;
        if (f == MemberFlag::low_participation) deduction += 0.1;
    }
    a.score = std::max(0.0, 1.0 - deduction);
    return a;
}

double rating_value(RatingLevel level) {
    switch (level) {
        case RatingLevel::excellent: return 1.0;
        case RatingLevel::good: return 0.9;
        case RatingLevel::acceptable: return 0.7;
        case RatingLevel::warning: return 0.5;
        case RatingLevel::critical: return 0.2;
    }
    return 0.0;
}

double coordination_subscore(const std::vector<MetricPanel>& panels) {
    if (panels.empty()) return 0.0;
    double sum = 0.0;
    int improving = 0;
    for (const auto& p : panels) {
        sum += rating_value(p.rating.level);
        if (p.improvement == Trend::improving) ++improving;
    }
    return std::min(1.0, sum / panels.size() + 0.05 * improving);
}

double doneness_subscore(const DonenessReport& report) {
    int applicable = 0, ok = 0;
    for (const auto& s : report.per_sprint) {
        applicable += 3;
        ok += s.testing_ok + s.demo_ok + s.td_ok;
        if (s.release_applicable) {
            applicable += 1;
            ok += s.release_ok;
        }
    }
    return applicable ? static_cast<double>(ok) / applicable : 0.0;
}

TeamAssessment aggregate(const CohortDataset& dataset,
                         std::vector<MetricPanel> panels,
                         DonenessReport doneness,
                         std::vector<MemberAssessment> members) {
    const auto& cfg = dataset.config;
    TeamAssessment a;
    a.team_id = dataset.team_id;

    const double coordination = coordination_subscore(panels);
    const double done = doneness_subscore(doneness);

    std::optional<double> quality;
    if (dataset.manual) {
        double sum = 0;
        std::size_t n = 0;
        for (double v : dataset.manual->review_quality) { sum += v; ++n; }
        for (double v : dataset.manual->retrospective_quality) { sum += v; ++n; }
        if (n > 0) quality = sum / n;
    }
    a.team_score = quality ? (coordination + *quality + done) / 3.0 : (coordination + done) / 2.0;

    double individual = 0.0;
    if (!members.empty()) {
        for (const auto& m : members) individual += m.score;
        individual /= members.size();
    }
    a.final_grade = cfg.team_weight * a.team_score + cfg.individual_weight * individual;
    a.panels = std::move(panels);
    a.doneness = std::move(doneness);
    a.member_assessments = std::move(members);
    return a;
}

TeamAssessment assess(const CohortDataset& dataset) {
    const auto& cfg = dataset.config;
    const int members = static_cast<int>(dataset.members.size());
    std::vector<MetricPanel> panels;

    {
        MetricPanel p;
        p.metric_id = MetricId::budget;
        p.series = team_sprint_effort(dataset);
        p.rating = classify_budget(p.series, members, cfg);
        const double target = members * cfg.budget_hours_per_person_per_sprint;
        std::vector<std::optional<double>> deviation;
        for (const auto& v : p.series.per_sprint)
            deviation.push_back(std::fabs(v.value_or(0.0) - target));
        p.improvement = improvement(deviation);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::balance;
        auto matrix = member_sprint_effort(dataset);
        p.series.per_sprint.assign(cfg.sprint_count, std::nullopt);
        for (int s = 0; s < cfg.sprint_count; ++s) {
            std::vector<double> col;
            for (const auto& row : matrix) col.push_back(row[s]);
            p.series.per_sprint[s] = col.empty() ? 0.0 : gini_imbalance(col);
        }
        p.series.overall = dataset.members.empty() ? 0.0 : gini_imbalance(member_total_effort(dataset));
        p.rating = classify_balance(p.series.overall, cfg);
        p.improvement = improvement(p.series.per_sprint);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::daily_trend;
        std::vector<double> rs;
        for (int s = 1; s <= cfg.sprint_count; ++s) {
            auto series = daily_effort(dataset, s);
            rs.push_back(series.trend_r);
            p.series.per_sprint.push_back(series.trend_r);
        }
        double worst = -1.0;
        for (int i = std::max(0, cfg.sprint_count - 3); i < cfg.sprint_count; ++i)
            worst = std::max(worst, rs[i]);
        p.series.overall = worst;
        p.rating = classify_daily_trend(rs, cfg);
        p.improvement = improvement(p.series.per_sprint);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::task_size;
        for (int s = 1; s <= cfg.sprint_count; ++s) {
            auto stats = normalized_task_sizes(dataset, s, SizeBasis::estimated);
            p.series.per_sprint.push_back(stats.n ? std::optional<double>(stats.q3) : std::nullopt);
        }
        auto overall = normalized_task_sizes_overall(dataset, SizeBasis::estimated);
        p.series.overall = overall.n ? overall.q3 : 0.0;
        p.rating = classify_task_size(overall, cfg);
        p.improvement = improvement(p.series.per_sprint);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::mraee;
        p.series = mraee(dataset);
        p.rating = classify_mraee(p.series, cfg);
        p.improvement = improvement(p.series.per_sprint);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::unestimated;
        p.series = unestimated_active_fraction(dataset);
        p.rating = classify_unestimated(p.series, cfg);
        p.improvement = improvement(p.series.per_sprint);
        panels.push_back(std::move(p));
    }
    {
        MetricPanel p;
        p.metric_id = MetricId::meetings;
        auto scrum = meeting_stats(dataset, MeetingKind::scrum);
        auto planning = meeting_stats(dataset, MeetingKind::planning);
        double total = 0;
        for (int s = 0; s < cfg.sprint_count; ++s) {
            int count = scrum.per_sprint[s].count + planning.per_sprint[s].count;
            p.series.per_sprint.push_back(static_cast<double>(count));
            total += count;
        }
        p.series.overall = total;
        p.rating = classify_meetings(scrum, planning, cfg);
        p.improvement = Trend::not_applicable;  // more meetings is not "worse"
        panels.push_back(std::move(p));
    }

    std::vector<MemberAssessment> member_assessments;
    for (const auto& m : dataset.members)
        member_assessments.push_back(assess_member(dataset, m.member_id));

    return aggregate(dataset, std::move(panels), check_doneness(dataset),
                     std::move(member_assessments));
}

}  // namespace scrumcard
