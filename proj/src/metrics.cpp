#include "scrumcard/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace scrumcard {

std::vector<double> SprintSeries::defined() const {
    std::vector<double> out;
    for (const auto& v : per_sprint)
        if (v) out.push_back(*v);
    return out;
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("pearson_r: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

double quantile(std::vector<double> values, double p) {
    if (values.empty())
        throw std::invalid_argument("quantile of empty set");
    std::sort(values.begin(), values.end());
    double pos = (static_cast<double>(values.size()) - 1.0) * p;
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

BoxplotStats boxplot_stats(std::vector<double> values) {
    BoxplotStats s;
    s.n = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(values, 0.25);
    s.median = quantile(values, 0.5);
    s.q3 = quantile(values, 0.75);
    double iqr = s.q3 - s.q1;
    double fence_low = s.q1 - 1.5 * iqr;
    double fence_high = s.q3 + 1.5 * iqr;
    s.whisker_low = s.max;
    s.whisker_high = s.min;
    for (double v : values) {
        if (v < fence_low || v > fence_high) {
            s.outliers.push_back(v);
        } else {
            s.whisker_low = std::min(s.whisker_low, v);
            s.whisker_high = std::max(s.whisker_high, v);
        }
    }
    return s;
}

namespace {

// sprint of the task each entry belongs to; entries are assumed validated
int entry_sprint(const CohortDataset& d, const EffortEntry& e) {
    const Task* t = d.find_task(e.task_id);
    if (!t) throw std::logic_error("effort entry references unknown task \"" + e.task_id + "\"");
    return t->sprint;
}

}  // namespace

SprintSeries team_sprint_effort(const CohortDataset& dataset) {
    SprintSeries s;
    s.per_sprint.assign(dataset.config.sprint_count, 0.0);
    for (const auto& e : dataset.effort)
        *s.per_sprint[entry_sprint(dataset, e) - 1] += e.hours;
    double sum = 0;
    for (const auto& v : s.per_sprint) sum += *v;
    s.overall = sum / dataset.config.sprint_count;
    return s;
}

std::vector<std::vector<double>> member_sprint_effort(const CohortDataset& dataset) {
    std::map<std::string, std::size_t> row;
    for (std::size_t i = 0; i < dataset.members.size(); ++i)
        row[dataset.members[i].member_id] = i;
    std::vector<std::vector<double>> m(
        dataset.members.size(), std::vector<double>(dataset.config.sprint_count, 0.0));
    for (const auto& e : dataset.effort)
        m[row.at(e.member_id)][entry_sprint(dataset, e) - 1] += e.hours;
    return m;
}

std::vector<double> member_total_effort(const CohortDataset& dataset) {
    auto m = member_sprint_effort(dataset);
    std::vector<double> totals(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        totals[i] = std::accumulate(m[i].begin(), m[i].end(), 0.0);
    return totals;
}

double gini_imbalance(const std::vector<double>& totals) {
    if (totals.empty())
        throw std::invalid_argument("gini_imbalance of empty list");
    const std::size_t n = totals.size();
    double mean = std::accumulate(totals.begin(), totals.end(), 0.0) / n;
    if (mean == 0.0) return 0.0;
    // O(n log n) form of the pairwise absolute-difference sum
    std::vector<double> x(totals);
    std::sort(x.begin(), x.end());
    double weighted = 0;
    for (std::size_t i = 0; i < n; ++i)
        weighted += (2.0 * static_cast<double>(i) + 1.0 - static_cast<double>(n)) * x[i];
    return weighted / (static_cast<double>(n) * static_cast<double>(n) * mean);
}

namespace {

DailyEffortSeries daily_series(const CohortDataset& dataset, int sprint,
                               const std::optional<std::string>& member_id) {
    if (sprint < 1 || sprint > dataset.config.sprint_count)
        throw std::out_of_range("sprint out of range");
    DailyEffortSeries out;
    out.sprint = sprint;
    out.hours_by_day.assign(dataset.config.sprint_length_days, 0.0);
    for (const auto& e : dataset.effort) {
        if (member_id && e.member_id != *member_id) continue;
        if (entry_sprint(dataset, e) != sprint) continue;
        out.hours_by_day[e.day - 1] += e.hours;
    }
    std::vector<double> days(out.hours_by_day.size());
    std::iota(days.begin(), days.end(), 1.0);
    out.trend_r = pearson_r(days, out.hours_by_day);
    double first = out.hours_by_day.empty() ? 0.0 : out.hours_by_day.front();
    out.flat = std::all_of(out.hours_by_day.begin(), out.hours_by_day.end(),
                           [&](double h) { return h == first; });
    return out;
}

}  // namespace

DailyEffortSeries daily_effort(const CohortDataset& dataset, int sprint) {
    return daily_series(dataset, sprint, std::nullopt);
}

DailyEffortSeries member_daily_effort(const CohortDataset& dataset,
                                      const std::string& member_id, int sprint) {
    if (!dataset.find_member(member_id))
        throw std::invalid_argument("unknown member \"" + member_id + "\"");
    return daily_series(dataset, sprint, member_id);
}

namespace {

struct TaskEffort {
    double total_hours = 0.0;
    std::set<std::string> contributors;
};

std::map<std::string, TaskEffort> effort_by_task(const CohortDataset& dataset) {
    std::map<std::string, TaskEffort> by_task;
    for (const auto& e : dataset.effort) {
        auto& te = by_task[e.task_id];
        te.total_hours += e.hours;
        te.contributors.insert(e.member_id);
    }
    return by_task;
}

double size_divisor(const Task& t, const std::map<std::string, TaskEffort>& by_task) {
    if (t.planned_assignees) return static_cast<double>(*t.planned_assignees);
    auto it = by_task.find(t.task_id);
    if (it != by_task.end() && !it->second.contributors.empty())
        return static_cast<double>(it->second.contributors.size());
    return 1.0;
}

std::vector<double> normalized_sizes(const CohortDataset& dataset,
                                     std::optional<int> sprint, SizeBasis which) {
    auto by_task = effort_by_task(dataset);
    std::vector<double> sizes;
    for (const auto& t : dataset.tasks) {
        if (sprint && t.sprint != *sprint) continue;
        double div = size_divisor(t, by_task);
        if (which == SizeBasis::estimated) {
            if (!t.estimate_hours) continue;
            sizes.push_back(*t.estimate_hours / div);
        } else {
            auto it = by_task.find(t.task_id);
            if (it == by_task.end()) continue;
            sizes.push_back(it->second.total_hours / div);
        }
    }
    return sizes;
}

}  // namespace

BoxplotStats normalized_task_sizes(const CohortDataset& dataset, int sprint, SizeBasis which) {
    return boxplot_stats(normalized_sizes(dataset, sprint, which));
}

BoxplotStats normalized_task_sizes_overall(const CohortDataset& dataset, SizeBasis which) {
    return boxplot_stats(normalized_sizes(dataset, std::nullopt, which));
}

SprintSeries mraee(const CohortDataset& dataset) {
    auto by_task = effort_by_task(dataset);
    SprintSeries s;
    s.per_sprint.assign(dataset.config.sprint_count, std::nullopt);
    std::vector<double> sums(dataset.config.sprint_count, 0.0);
    std::vector<int> counts(dataset.config.sprint_count, 0);
    for (const auto& t : dataset.tasks) {
        if (!t.estimate_hours || *t.estimate_hours <= 0) continue;
        auto it = by_task.find(t.task_id);
        if (it == by_task.end() || it->second.total_hours <= 0) continue;
        double err = std::fabs(it->second.total_hours - *t.estimate_hours) / *t.estimate_hours;
        sums[t.sprint - 1] += err;
        counts[t.sprint - 1] += 1;
    }
    double total = 0;
    int defined = 0;
    for (int i = 0; i < dataset.config.sprint_count; ++i) {
        if (counts[i] == 0) continue;
        s.per_sprint[i] = sums[i] / counts[i];
        total += *s.per_sprint[i];
        ++defined;
    }
    s.overall = defined ? total / defined : 0.0;
    return s;
}

SprintSeries unestimated_active_fraction(const CohortDataset& dataset) {
    auto by_task = effort_by_task(dataset);
    SprintSeries s;
    s.per_sprint.assign(dataset.config.sprint_count, std::nullopt);
    std::vector<int> active(dataset.config.sprint_count, 0);
    std::vector<int> unestimated(dataset.config.sprint_count, 0);
    for (const auto& t : dataset.tasks) {
        auto it = by_task.find(t.task_id);
        if (it == by_task.end() || it->second.total_hours <= 0) continue;
        active[t.sprint - 1] += 1;
        if (!t.estimate_hours) unestimated[t.sprint - 1] += 1;
    }
    int total_active = 0, total_unestimated = 0;
    for (int i = 0; i < dataset.config.sprint_count; ++i) {
        total_active += active[i];
        total_unestimated += unestimated[i];
        if (active[i] > 0)
            s.per_sprint[i] = static_cast<double>(unestimated[i]) / active[i];
    }
    s.overall = total_active ? static_cast<double>(total_unestimated) / total_active : 0.0;
    return s;
}

MeetingStats meeting_stats(const CohortDataset& dataset, MeetingKind kind) {
    MeetingStats stats;
    stats.kind = kind;
    stats.per_sprint.assign(dataset.config.sprint_count, {});
    std::vector<double> duration_sums(dataset.config.sprint_count, 0.0);
    const int team_size = static_cast<int>(dataset.members.size());
    for (const auto& m : dataset.meetings) {
        if (m.kind != kind) continue;
        auto& sp = stats.per_sprint[m.sprint - 1];
        sp.count += 1;
        duration_sums[m.sprint - 1] += m.duration_minutes;
        std::set<std::string> present(m.participants.begin(), m.participants.end());
        int absences = team_size - static_cast<int>(present.size());
        if (absences > 0) sp.full_attendance = false;
        sp.total_absences += std::max(absences, 0);
    }
    for (int i = 0; i < dataset.config.sprint_count; ++i)
        if (stats.per_sprint[i].count > 0)
            stats.per_sprint[i].mean_duration_minutes =
                duration_sums[i] / stats.per_sprint[i].count;
    return stats;
}

}  // namespace scrumcard
