#include "scrumcard/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace scrumcard {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::compliant: return "compliant";
        case Scenario::bulk_backfill: return "bulk_backfill";
        case Scenario::slacker: return "slacker";
        case Scenario::subteam_split: return "subteam_split";
        case Scenario::ramp_up: return "ramp_up";
        case Scenario::unestimated_heavy: return "unestimated_heavy";
        case Scenario::overcommit: return "overcommit";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& name) {
    for (Scenario s : {Scenario::compliant, Scenario::bulk_backfill, Scenario::slacker,
                       Scenario::subteam_split, Scenario::ramp_up, Scenario::unestimated_heavy,
                       Scenario::overcommit})
        if (to_string(s) == name) return s;
    throw std::invalid_argument("unknown scenario \"" + name + "\"");
}

std::string scenario_target_description(Scenario s) {
    switch (s) {
        case Scenario::compliant:
            return "every team criterion rated good or better";
        case Scenario::bulk_backfill:
            return "65% of each sprint's hours logged in the last three days; "
                   "daily trend r above 0.5 (critical); other criteria compliant";
        case Scenario::slacker:
            return "one member logs under 40% of the others' mean; Gini imbalance "
                   "above 0.09 (critical); team budget kept compliant";
        case Scenario::subteam_split:
            return "two disjoint member groups never share a task; no single "
                   "metric trips, detectable from the task-sharing structure";
        case Scenario::ramp_up:
            return "effort rises linearly within each sprint; daily trend r in "
                   "(0.3, 0.5] (warning); other criteria compliant";
        case Scenario::unestimated_heavy:
            return "about one in seven active tasks has no estimate, above the "
                   "5% bar (critical); other criteria compliant";
        case Scenario::overcommit:
            return "no testing evidence in sprints 1-2, doneness fails; effort "
                   "criteria compliant";
    }
    return "?";
}

namespace {

// Cross-platform deterministic uniforms: raw mt19937_64 draws mapped to
// [lo, hi) directly, no std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) {
        double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

private:
    std::mt19937_64 gen_;
};

// Removes the mean and the linear-in-index component, so the result has zero
// sum and zero covariance with the index.
void detrend(std::vector<double>& v) {
    const std::size_t n = v.size();
    double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double mi = (n + 1) / 2.0;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = (i + 1.0) - mi;
        sxy += dx * (v[i] - mean);
        sxx += dx * dx;
    }
    double slope = sxy / sxx;
    for (std::size_t i = 0; i < n; ++i)
        v[i] = v[i] - mean - slope * ((i + 1.0) - mi);
}

// Per-day fraction of a sprint's total effort, summing to 1. The correlation
// between day index and the returned shape is set structurally per scenario.
std::vector<double> day_shape(Scenario scenario, int days, Rng& rng) {
    std::vector<double> shape(days, 1.0 / days);
    switch (scenario) {
        case Scenario::bulk_backfill: {
            // 35% spread over the early days, 65% bulk-logged in the last 3
            const int tail = std::min(3, days);
            const int head = days - tail;
            for (int d = 0; d < head; ++d) shape[d] = 0.35 / head;
            for (int d = head; d < days; ++d) shape[d] = 0.65 / tail;
            return shape;
        }
        case Scenario::ramp_up: {
            std::vector<double> noise(days);
            for (auto& x : noise) x = rng.uniform(-0.02, 0.02);
            detrend(noise);
            double sum_sq = 0;
            for (double x : noise) sum_sq += x * x;
            double mi = (days + 1) / 2.0;
            double sxx = 0;
            for (int d = 1; d <= days; ++d) sxx += (d - mi) * (d - mi);
            // slope chosen so the Pearson r of the shape is exactly 0.4
            const double target_r = 0.4;
            double slope = target_r / std::sqrt(1 - target_r * target_r) *
                           std::sqrt(sum_sq) / std::sqrt(sxx);
            for (int d = 1; d <= days; ++d)
                shape[d - 1] += noise[d - 1] + slope * (d - mi);
            return shape;
        }
        default: {
            // flat with zero-trend noise: r stays at 0 by construction
            std::vector<double> noise(days);
            for (auto& x : noise) x = rng.uniform(-0.3, 0.3);
            detrend(noise);
            for (int d = 0; d < days; ++d) shape[d] *= 1.0 + noise[d];
            return shape;
        }
    }
}

struct TaskPlan {
    Task task;
    // per-member share of the actual hours, in dataset member order
    std::vector<std::pair<int, double>> shares;
};

}  // namespace

CohortDataset generate(const ScenarioSpec& spec) {
    if (spec.team_size < 2)
        throw std::invalid_argument("team_size must be at least 2");

    const ProjectConfig& cfg = spec.config;
    const int sprints = cfg.sprint_count;
    const int days = cfg.sprint_length_days;
    const int n = spec.team_size;
    const double budget = cfg.budget_hours_per_person_per_sprint;

    Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(spec.scenario));

    CohortDataset d;
    d.team_id = "team-" + to_string(spec.scenario) + "-" + std::to_string(spec.seed);
    d.config = cfg;
    for (int m = 0; m < n; ++m)
        d.members.push_back({"m" + std::to_string(m + 1), "Member " + std::to_string(m + 1)});

    // subteam split: two halves that never co-work a task
    const int group_a_size = (n + 1) / 2;

    int task_counter = 0;
    for (int sprint = 1; sprint <= sprints; ++sprint) {
        // per-member sprint targets just under budget, inside 16 +/- 1
        std::vector<double> targets(n);
        for (int m = 0; m < n; ++m)
            targets[m] = budget - 0.2 + rng.uniform(-0.5, 0.5);
        if (spec.scenario == Scenario::slacker) {
            // slacker at 35% of budget; the rest absorb the slack so the team
            // total stays inside the budget band
            double team_total = std::accumulate(targets.begin(), targets.end(), 0.0);
            targets[n - 1] = 0.35 * budget;
            double rest = (team_total - targets[n - 1]) / (n - 1);
            for (int m = 0; m < n - 1; ++m) targets[m] = rest;
        }

        std::vector<TaskPlan> plans;
        std::vector<double> remaining = targets;

        auto next_task_id = [&] { return "t" + std::to_string(++task_counter); };

        // shared pair tasks inside each sub-team
        if (spec.scenario == Scenario::subteam_split) {
            auto add_pair_task = [&](int a, int b) {
                TaskPlan p;
                p.task.task_id = next_task_id();
                p.task.title = "shared work " + p.task.task_id;
                p.task.kind = TaskKind::task;
                p.task.sprint = sprint;
                p.task.estimate_hours = 2.0;
                p.task.planned_assignees = 2;
                p.shares = {{a, 1.0}, {b, 1.0}};
                remaining[a] -= 1.0;
                remaining[b] -= 1.0;
                plans.push_back(std::move(p));
            };
            for (int m = 0; m + 1 < group_a_size; ++m) add_pair_task(m, m + 1);
            for (int m = group_a_size; m + 1 < n; ++m) add_pair_task(m, m + 1);
        }

        // explicit technical-debt work from sprint 3 on
        if (sprint >= 3) {
            TaskPlan p;
            p.task.task_id = next_task_id();
            p.task.title = "TD reduction " + p.task.task_id;
            p.task.kind = TaskKind::technical_debt;
            p.task.sprint = sprint;
            p.task.estimate_hours = 1.0;
            p.shares = {{0, 1.0}};
            remaining[0] -= 1.0;
            plans.push_back(std::move(p));
        }

        // solo tasks fill each member's remaining target; estimates stay
        // under the 2 h/participant cap and within 10% of actuals
        for (int m = 0; m < n; ++m) {
            while (remaining[m] > 1.9) {
                double estimate = rng.uniform(0.7, 1.5);
                double err = rng.uniform(-0.1, 0.1);
                TaskPlan p;
                p.task.task_id = next_task_id();
                p.task.title = "work item " + p.task.task_id;
                p.task.kind = (task_counter % 3 == 0) ? TaskKind::story : TaskKind::task;
                p.task.sprint = sprint;
                p.task.estimate_hours = estimate;
                double actual = estimate * (1.0 + err);
                p.shares = {{m, actual}};
                remaining[m] -= actual;
                plans.push_back(std::move(p));
            }
            if (remaining[m] > 0.05) {
                double actual = remaining[m];
                double err = rng.uniform(0.0, 0.1);
                TaskPlan p;
                p.task.task_id = next_task_id();
                p.task.title = "work item " + p.task.task_id;
                p.task.kind = TaskKind::task;
                p.task.sprint = sprint;
                p.task.estimate_hours = actual / (1.0 + err);
                p.shares = {{m, actual}};
                remaining[m] = 0.0;
                plans.push_back(std::move(p));
            }
        }

        if (spec.scenario == Scenario::unestimated_heavy) {
            // roughly one in seven active tasks left unestimated: always
            // strictly above the 5% critical bar
            for (std::size_t i = 0; i < plans.size(); ++i)
                if (i % 7 == 3) plans[i].task.estimate_hours.reset();
        }

        // spread each member's task hours over the sprint days following the
        // scenario's daily shape
        std::vector<double> shape = day_shape(spec.scenario, days, rng);
        for (int m = 0; m < n; ++m) {
            double member_total = 0;
            for (const auto& p : plans)
                for (const auto& [mem, share] : p.shares)
                    if (mem == m) member_total += share;
            if (member_total <= 0) continue;

            std::size_t plan_idx = 0;
            double task_left = 0;
            auto advance = [&] {
                while (plan_idx < plans.size()) {
                    for (const auto& [mem, share] : plans[plan_idx].shares)
                        if (mem == m && share > 0) {
                            task_left = share;
                            return true;
                        }
                    ++plan_idx;
                }
                return false;
            };
            if (!advance()) continue;
            for (int day = 1; day <= days; ++day) {
                double day_left = shape[day - 1] * member_total;
                while (day_left > 1e-9) {
                    double chunk = std::min(day_left, task_left);
                    d.effort.push_back({plans[plan_idx].task.task_id,
                                        d.members[m].member_id, day, chunk});
                    day_left -= chunk;
                    task_left -= chunk;
                    if (task_left <= 1e-9) {
                        ++plan_idx;
                        if (!advance()) { day_left = 0; plan_idx = plans.size(); break; }
                    }
                }
                if (plan_idx >= plans.size()) break;
            }
        }

        for (auto& p : plans) d.tasks.push_back(std::move(p.task));

        // meetings: one planning at sprint start, scrums through the sprint,
        // everyone attending
        Meeting planning;
        planning.meeting_id = "s" + std::to_string(sprint) + "-planning";
        planning.kind = MeetingKind::planning;
        planning.sprint = sprint;
        planning.day = 1;
        planning.duration_minutes = 45.0 + rng.uniform(0.0, 30.0);
        for (const auto& mem : d.members) planning.participants.push_back(mem.member_id);
        d.meetings.push_back(std::move(planning));
        for (int i = 0; i < 4; ++i) {
            Meeting scrum;
            scrum.meeting_id = "s" + std::to_string(sprint) + "-scrum" + std::to_string(i + 1);
            scrum.kind = MeetingKind::scrum;
            scrum.sprint = sprint;
            scrum.day = std::min(2 + i * 3, days);
            scrum.duration_minutes = 10.0 + rng.uniform(0.0, 10.0);
            for (const auto& mem : d.members) scrum.participants.push_back(mem.member_id);
            d.meetings.push_back(std::move(scrum));
        }

        DonenessEvidence ev;
        ev.sprint = sprint;
        bool testing = true;
        if (spec.scenario == Scenario::overcommit && sprint <= 2) testing = false;
        ev.unit_test_evidence = testing;
        ev.e2e_test_evidence = testing;
        ev.demo_failures = 0;
        ev.td_tasks_consistent = true;
        ev.docker_image_available = true;
        d.doneness.push_back(ev);
    }

    ManualScores manual;
    for (int s = 0; s < sprints; ++s) {
        manual.review_quality.push_back(1.0);
        manual.retrospective_quality.push_back(1.0);
    }
    for (const auto& m : d.members) manual.participation[m.member_id] = sprints;
    d.manual = std::move(manual);

    return d;
}

}  // namespace scrumcard
