// Acceptance suite: one test case per acceptance criterion, each printing a
// single PASS/FAIL line so the run can be audited at a glance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "scrumcard/compliance.hpp"
#include "scrumcard/ingest.hpp"
#include "scrumcard/metrics.hpp"
#include "scrumcard/render.hpp"
#include "scrumcard/synth.hpp"

using namespace scrumcard;
using namespace scrumcard::testing;
namespace fs = std::filesystem;

namespace {

// Collects plain boolean expectations so each criterion can report a single
// verdict line in addition to the doctest assertion.
struct Checker {
    bool ok = true;
    std::string log;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log += "    " + what + "\n";
        }
    }

    void near(double got, double want, double tol, const std::string& what) {
        std::ostringstream os;
        os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
        expect(std::fabs(got - want) <= tol, os.str());
    }
};

void report(int n, const char* title, const Checker& c, double seconds, double budget) {
    std::printf("[acceptance] criterion %d (%s): %s  (%.2fs, budget %.0fs)\n", n, title,
                c.ok && seconds < budget ? "PASS" : "FAIL", seconds, budget);
    if (!c.log.empty()) std::fputs(c.log.c_str(), stdout);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

SprintSeries constant_series(double v, int n = 4) {
    SprintSeries s;
    for (int i = 0; i < n; ++i) s.per_sprint.emplace_back(v);
    s.overall = v;
    return s;
}

}  // namespace

TEST_CASE("criterion 1: threshold faithfulness") {
    Timer timer;
    Checker c;
    ProjectConfig cfg;

    // sweep each threshold with values below, exactly at, and just above it;
    // the boundary value must take the favorable rating
    auto level_name = [](RatingLevel l) { return to_string(l); };
    auto sweep = [&](const char* metric, const std::vector<double>& points,
                     RatingLevel (*expected)(double), RatingLevel (*actual)(double)) {
        for (double v : points) {
            RatingLevel want = expected(v), got = actual(v);
            std::ostringstream os;
            os << metric << " at " << v << ": got " << level_name(got) << ", want "
               << level_name(want);
            c.expect(got == want, os.str());
        }
    };

    static ProjectConfig scfg;
    scfg = cfg;
    sweep(
        "balance", {0.0, 0.01, 0.0299, 0.03, 0.030000001, 0.05, 0.0899, 0.09, 0.090000001, 0.2},
        [](double g) {
            return g <= 0.03 ? RatingLevel::good
                   : g <= 0.09 ? RatingLevel::acceptable
                               : RatingLevel::critical;
        },
        [](double g) { return classify_balance(g, scfg).level; });

    sweep(
        "daily_trend", {-1.0, 0.0, 0.2999, 0.3, 0.300000001, 0.4, 0.4999, 0.5, 0.500000001, 0.9},
        [](double r) {
            return r <= 0.3 ? RatingLevel::good
                   : r <= 0.5 ? RatingLevel::warning
                              : RatingLevel::critical;
        },
        [](double r) { return classify_daily_trend({r, r, r, r}, scfg).level; });

    sweep(
        "mraee", {0.0, 0.1, 0.1999, 0.2, 0.200000001, 0.3, 0.4999, 0.5, 0.500000001, 0.8},
        [](double m) {
            return m <= 0.2 ? RatingLevel::excellent
                   : m <= 0.5 ? RatingLevel::acceptable
                              : RatingLevel::critical;
        },
        [](double m) { return classify_mraee(constant_series(m), scfg).level; });

    sweep(
        "unestimated", {0.0, 0.01, 0.0499, 0.05, 0.050000001, 0.1, 0.5},
        [](double u) {
            return u == 0.0 ? RatingLevel::good
                   : u <= 0.05 ? RatingLevel::acceptable
                               : RatingLevel::critical;
        },
        [](double u) { return classify_unestimated(constant_series(u), scfg).level; });

    sweep(
        "task_size", {0.5, 1.999, 2.0, 2.000000001, 2.5, 2.999, 3.0, 3.000000001, 5.0},
        [](double q3) {
            return q3 <= 2.0 ? RatingLevel::good
                   : q3 <= 3.0 ? RatingLevel::warning
                               : RatingLevel::critical;
        },
        [](double q3) {
            BoxplotStats s;
            s.n = 8;
            s.q3 = q3;
            return classify_task_size(s, scfg).level;
        });

    // budget with 5 members: target 80, band +/-5, critical beyond 25% deviation
    sweep(
        "budget", {55.0, 59.999, 60.0, 60.000001, 74.999, 75.0, 80.0, 85.0, 85.000001, 99.999,
                   100.0, 100.000001, 120.0},
        [](double v) {
            double dev = std::fabs(v - 80.0);
            return dev > 20.0 ? RatingLevel::critical
                   : dev <= 5.0 ? RatingLevel::good
                                : RatingLevel::warning;
        },
        [](double v) { return classify_budget(constant_series(v), 5, scfg).level; });

    double elapsed = timer.seconds();
    c.expect(elapsed < 1.0, "runtime exceeded 1 s");
    report(1, "threshold faithfulness", c, elapsed, 1.0);
    CHECK_MESSAGE(c.ok, c.log);
}

namespace {

// Hand-built dataset realizing the sample-card narrative: five evenly spaced
// member totals with Gini exactly 0.022, flat daily effort, shrinking MRAEE
// 0.50/0.35/0.20/0.10, everything estimated, one absence in the last
// planning meeting.
CohortDataset narrative_dataset() {
    DatasetBuilder b;
    const std::vector<double> totals = {60.48, 62.24, 64.0, 65.76, 67.52};  // Gini = 0.022
    const std::vector<double> err = {0.5, 0.35, 0.2, 0.1};                   // mean 0.2875
    for (int i = 0; i < 5; ++i) b.member("m" + std::to_string(i + 1));
    for (int s = 1; s <= 4; ++s) {
        for (int i = 0; i < 5; ++i) {
            const double actual = totals[i] / 32.0;  // 8 tasks x 4 sprints
            for (int k = 0; k < 8; ++k) {
                std::string id =
                    "t" + std::to_string(s) + "_" + std::to_string(i) + "_" + std::to_string(k);
                TaskKind kind = (i == 0 && k == 0 && s >= 3) ? TaskKind::technical_debt
                                                             : TaskKind::task;
                b.task(id, s, actual / (1.0 + err[s - 1]), std::nullopt, kind);
                for (int day = 1; day <= 14; ++day)
                    b.work(id, "m" + std::to_string(i + 1), day, actual / 14.0);
            }
        }
        auto everyone = b.all_member_ids();
        auto planning_crowd = everyone;
        if (s == 4) planning_crowd.pop_back();  // one member misses the last planning
        b.meeting("p" + std::to_string(s), MeetingKind::planning, s, 1, 60.0, planning_crowd);
        for (int day : {3, 6, 9})
            b.meeting("sc" + std::to_string(s) + "_" + std::to_string(day), MeetingKind::scrum, s,
                      day, 15.0, everyone);
    }
    return b.d;
}

}  // namespace

TEST_CASE("criterion 2: sample-card narrative reproduction") {
    Timer timer;
    Checker c;
    CohortDataset d = narrative_dataset();
    c.expect(validate(d).error_count() == 0, "narrative dataset does not validate");
    TeamAssessment a = assess(d);

    auto level_of = [&](MetricId id) { return a.find_panel(id)->rating.level; };
    c.expect(level_of(MetricId::budget) == RatingLevel::good, "budget not good");
    c.expect(level_of(MetricId::balance) == RatingLevel::good, "balance not good");
    c.expect(level_of(MetricId::daily_trend) == RatingLevel::good, "daily_trend not good");
    c.expect(level_of(MetricId::task_size) == RatingLevel::good, "task_size not good");
    c.expect(level_of(MetricId::mraee) == RatingLevel::acceptable, "mraee not acceptable");
    c.expect(level_of(MetricId::unestimated) == RatingLevel::good, "unestimated not good");
    c.expect(level_of(MetricId::meetings) == RatingLevel::good, "meetings not good");

    c.near(a.find_panel(MetricId::balance)->series.overall, 0.022, 1e-9, "Gini");
    c.near(a.find_panel(MetricId::mraee)->series.overall, 0.2875, 1e-9, "overall MRAEE");
    c.near(a.find_panel(MetricId::daily_trend)->series.overall, 0.0, 1e-9, "daily trend r");
    c.near(a.find_panel(MetricId::unestimated)->series.overall, 0.0, 1e-9,
           "unestimated fraction");
    for (int s = 0; s < 4; ++s) {
        auto v = a.find_panel(MetricId::mraee)->series.per_sprint[s];
        c.expect(v.has_value(), "MRAEE undefined in a sprint");
        if (v) c.near(*v, std::vector<double>{0.5, 0.35, 0.2, 0.1}[s], 1e-9, "sprint MRAEE");
    }
    c.expect(a.find_panel(MetricId::mraee)->improvement == Trend::improving,
             "MRAEE trend not improving");
    c.expect(a.doneness.overall_ok, "doneness not ok");
    for (const auto& m : a.member_assessments)
        c.expect(m.flags.empty(), "member " + m.member_id + " unexpectedly flagged");

    report(2, "sample-card narrative", c, timer.seconds(), 10.0);
    CHECK_MESSAGE(c.ok, c.log);
}

TEST_CASE("criterion 3: oracle equivalence over generated inputs") {
    Timer timer;
    Checker c;
    TestRng rng(1234);

    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> x;
        int n = rng.uniform_int(1, 20);
        for (int i = 0; i < n; ++i)
            x.push_back(rng.uniform_int(0, 9) == 0 ? 0.0 : rng.uniform(0.0, 50.0));
        c.near(gini_imbalance(x), gini_pairwise_oracle(x), 1e-9, "gini vs pairwise oracle");
    }

    for (int trial = 0; trial < 1000; ++trial) {
        int n = rng.uniform_int(2, 30);
        std::vector<double> x, y;
        for (int i = 0; i < n; ++i) {
            x.push_back(rng.uniform(-10.0, 10.0));
            y.push_back(rng.uniform(-10.0, 10.0));
        }
        c.near(pearson_r(x, y), pearson_covariance_oracle(x, y), 1e-9,
               "pearson_r vs covariance oracle");
    }

    for (int trial = 0; trial < 1000; ++trial) {
        int n = rng.uniform_int(1, 40);
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(rng.uniform(0.0, 20.0));
        auto stats = boxplot_stats(v);
        c.near(stats.q1, quantile_sort_oracle(v, 0.25), 1e-9, "q1 vs sort oracle");
        c.near(stats.median, quantile_sort_oracle(v, 0.5), 1e-9, "median vs sort oracle");
        c.near(stats.q3, quantile_sort_oracle(v, 0.75), 1e-9, "q3 vs sort oracle");
        c.near(stats.min, *std::min_element(v.begin(), v.end()), 1e-9, "min");
        c.near(stats.max, *std::max_element(v.begin(), v.end()), 1e-9, "max");
    }

    for (int trial = 0; trial < 1000; ++trial) {
        int n = rng.uniform_int(2, 8);
        std::vector<std::optional<double>> series;
        std::vector<double> xs, ys;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            double y = rng.uniform(0.0, 2.0);
            series.emplace_back(y);
            xs.push_back(i + 1.0);
            ys.push_back(y);
            sum += y;
        }
        double slope = least_squares_slope_oracle(xs, ys);
        double eps = 0.05 * std::fabs(sum / n);
        if (std::fabs(std::fabs(slope) - eps) < 1e-9) continue;  // skip knife-edge draws
        Trend want = slope < -eps ? Trend::improving
                     : slope > eps ? Trend::worsening
                                   : Trend::stable;
        c.expect(improvement(series) == want, "improvement vs least-squares oracle");
    }

    double elapsed = timer.seconds();
    c.expect(elapsed < 10.0, "runtime exceeded 10 s");
    report(3, "oracle equivalence", c, elapsed, 10.0);
    CHECK_MESSAGE(c.ok, c.log);
}

TEST_CASE("criterion 4: scenario detection matrix, seeds 1..100") {
    Timer timer;
    Checker c;

    struct Row {
        Scenario scenario;
        MetricId target;     // panel expected warning-or-worse
        bool doneness_fails; // or the definition of done is the target
    };
    const std::vector<Row> rows = {
        {Scenario::bulk_backfill, MetricId::daily_trend, false},
        {Scenario::slacker, MetricId::balance, false},
        {Scenario::ramp_up, MetricId::daily_trend, false},
        {Scenario::unestimated_heavy, MetricId::unestimated, false},
        {Scenario::overcommit, MetricId::budget /*unused*/, true},
    };

    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        ScenarioSpec spec;
        spec.seed = seed;

        spec.scenario = Scenario::compliant;
        {
            TeamAssessment a = assess(generate(spec));
            for (const auto& p : a.panels)
                c.expect(p.rating.level >= RatingLevel::good,
                         "compliant seed " + std::to_string(seed) + ": " +
                             to_string(p.metric_id) + " below good");
            c.expect(a.doneness.overall_ok,
                     "compliant seed " + std::to_string(seed) + ": doneness failed");
            for (const auto& m : a.member_assessments)
                c.expect(m.flags.empty(),
                         "compliant seed " + std::to_string(seed) + ": member flagged");
        }

        spec.scenario = Scenario::subteam_split;
        {
            // the split is a collaboration smell, invisible to the seven panels
            TeamAssessment a = assess(generate(spec));
            for (const auto& p : a.panels)
                c.expect(p.rating.level >= RatingLevel::good,
                         "subteam_split seed " + std::to_string(seed) + ": " +
                             to_string(p.metric_id) + " below good");
        }

        for (const auto& row : rows) {
            spec.scenario = row.scenario;
            TeamAssessment a = assess(generate(spec));
            std::string tag = to_string(row.scenario) + " seed " + std::to_string(seed);
            if (row.doneness_fails) {
                c.expect(!a.doneness.overall_ok, tag + ": doneness unexpectedly ok");
            } else {
                c.expect(a.find_panel(row.target)->rating.level <= RatingLevel::warning,
                         tag + ": target panel not warning-or-worse");
            }
            for (const auto& p : a.panels) {
                if (!row.doneness_fails && p.metric_id == row.target) continue;
                c.expect(p.rating.level >= RatingLevel::acceptable,
                         tag + ": " + to_string(p.metric_id) + " collaterally damaged");
            }
        }
    }

    double elapsed = timer.seconds();
    c.expect(elapsed < 60.0, "runtime exceeded 60 s");
    report(4, "scenario detection matrix", c, elapsed, 60.0);
    CHECK_MESSAGE(c.ok, c.log);
}

TEST_CASE("criterion 5: conservation and invariance") {
    Timer timer;
    Checker c;
    TestRng rng(77);

    for (Scenario s : {Scenario::compliant, Scenario::bulk_backfill, Scenario::slacker,
                       Scenario::subteam_split, Scenario::ramp_up, Scenario::unestimated_heavy,
                       Scenario::overcommit}) {
        for (std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
            ScenarioSpec spec;
            spec.scenario = s;
            spec.seed = seed;
            CohortDataset d = generate(spec);
            std::string tag = to_string(s) + " seed " + std::to_string(seed);

            // member effort sums to team effort, sprint by sprint
            auto team = team_sprint_effort(d);
            auto matrix = member_sprint_effort(d);
            for (std::size_t sp = 0; sp < team.per_sprint.size(); ++sp) {
                double sum = 0.0;
                for (const auto& row : matrix) sum += row[sp];
                c.near(sum, team.per_sprint[sp].value_or(0.0), 1e-9,
                       tag + ": member/team conservation");
            }

            // Gini is scale- and permutation-invariant
            auto totals = member_total_effort(d);
            double g = gini_imbalance(totals);
            auto scaled = totals;
            double k = rng.uniform(0.1, 10.0);
            for (double& v : scaled) v *= k;
            c.near(gini_imbalance(scaled), g, 1e-9, tag + ": gini scale invariance");
            auto shuffled = totals;
            for (std::size_t i = shuffled.size(); i > 1; --i)
                std::swap(shuffled[i - 1], shuffled[rng.uniform_int(0, static_cast<int>(i) - 1)]);
            c.near(gini_imbalance(shuffled), g, 1e-9, tag + ": gini permutation invariance");

            // MRAEE is invariant under a consistent renaming of ids
            CohortDataset renamed = d;
            for (auto& m : renamed.members) m.member_id = "X" + m.member_id;
            for (auto& t : renamed.tasks) t.task_id = "Y" + t.task_id;
            for (auto& e : renamed.effort) {
                e.member_id = "X" + e.member_id;
                e.task_id = "Y" + e.task_id;
            }
            for (auto& m : renamed.meetings)
                for (auto& p : m.participants) p = "X" + p;
            auto m1 = mraee(d), m2 = mraee(renamed);
            c.near(m1.overall, m2.overall, 0.0, tag + ": mraee label invariance");
        }
    }

    // assessment monotonicity: improving any single panel never lowers the grade
    DatasetBuilder b;
    b.member("m1");
    std::vector<MemberAssessment> members(1);
    members[0].member_id = "m1";
    members[0].score = 1.0;
    DonenessReport done;
    done.overall_ok = true;
    const RatingLevel levels[] = {RatingLevel::critical, RatingLevel::warning,
                                  RatingLevel::acceptable, RatingLevel::good,
                                  RatingLevel::excellent};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<MetricPanel> panels(7);
        for (auto& p : panels) {
            p.rating.level = levels[rng.uniform_int(0, 4)];
            p.improvement = Trend::stable;
        }
        int which = rng.uniform_int(0, 6);
        int cur = static_cast<int>(panels[which].rating.level);
        if (cur == 4) continue;
        double base = aggregate(b.d, panels, done, members).final_grade;
        panels[which].rating.level = static_cast<RatingLevel>(cur + 1);
        double better = aggregate(b.d, panels, done, members).final_grade;
        c.expect(better >= base - 1e-12, "grade dropped when a panel improved");
    }

    report(5, "conservation and invariance", c, timer.seconds(), 60.0);
    CHECK_MESSAGE(c.ok, c.log);
}

TEST_CASE("criterion 6: grade formula against direct arithmetic") {
    Timer timer;
    Checker c;
    TestRng rng(2024);
    const RatingLevel levels[] = {RatingLevel::critical, RatingLevel::warning,
                                  RatingLevel::acceptable, RatingLevel::good,
                                  RatingLevel::excellent};

    for (int trial = 0; trial < 100; ++trial) {
        DatasetBuilder b;
        b.member("m1").member("m2");
        const bool with_manual = rng.uniform_int(0, 1) == 1;
        double quality = 0.0;
        if (with_manual) {
            ManualScores manual;
            for (int s = 0; s < 4; ++s) {
                manual.review_quality.push_back(rng.uniform(0.0, 1.0));
                manual.retrospective_quality.push_back(rng.uniform(0.0, 1.0));
            }
            double sum = 0.0;
            for (double v : manual.review_quality) sum += v;
            for (double v : manual.retrospective_quality) sum += v;
            quality = sum / 8.0;
            b.d.manual = manual;
        }

        std::vector<MetricPanel> panels(7);
        double rating_sum = 0.0;
        int improving = 0;
        for (auto& p : panels) {
            p.rating.level = levels[rng.uniform_int(0, 4)];
            p.improvement = rng.uniform_int(0, 3) == 0 ? Trend::improving : Trend::stable;
            rating_sum += rating_value(p.rating.level);
            if (p.improvement == Trend::improving) ++improving;
        }
        double coordination = std::min(1.0, rating_sum / 7.0 + 0.05 * improving);

        DonenessReport done;
        int ok_boxes = 0, boxes = 0;
        for (int s = 1; s <= 4; ++s) {
            DonenessSprint ds;
            ds.sprint = s;
            ds.testing_ok = rng.uniform_int(0, 1) == 1;
            ds.demo_ok = rng.uniform_int(0, 1) == 1;
            ds.td_ok = rng.uniform_int(0, 1) == 1;
            ds.release_applicable = (s == 2 || s == 4);
            ds.release_ok = rng.uniform_int(0, 1) == 1;
            boxes += 3 + (ds.release_applicable ? 1 : 0);
            ok_boxes += ds.testing_ok + ds.demo_ok + ds.td_ok +
                        (ds.release_applicable ? ds.release_ok : 0);
            done.per_sprint.push_back(ds);
        }
        double doneness = static_cast<double>(ok_boxes) / boxes;

        std::vector<MemberAssessment> members(2);
        members[0].member_id = "m1";
        members[1].member_id = "m2";
        members[0].score = rng.uniform(0.0, 1.0);
        members[1].score = rng.uniform(0.0, 1.0);
        double individual = (members[0].score + members[1].score) / 2.0;

        double team = with_manual ? (coordination + quality + doneness) / 3.0
                                  : (coordination + doneness) / 2.0;
        double expected = 0.8 * team + 0.2 * individual;

        TeamAssessment a = aggregate(b.d, panels, done, members);
        c.near(a.team_score, team, 1e-12, "team score");
        c.near(a.final_grade, expected, 1e-12, "final grade");
    }

    report(6, "grade formula", c, timer.seconds(), 60.0);
    CHECK_MESSAGE(c.ok, c.log);
}

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(const std::string& cmd) {
    int status = std::system(cmd.c_str());
    return status;
}

}  // namespace

TEST_CASE("criterion 7: end-to-end determinism through the CLI") {
    Timer timer;
    Checker c;
    const std::string cli = SCRUMCARD_CLI_PATH;
    fs::path work = fs::temp_directory_path() /
                    ("scrumcard-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(work);
    fs::create_directories(work / "run1");
    fs::create_directories(work / "run2");
    const std::string data = (work / "data.json").string();

    c.expect(run(cli + " --quiet generate compliant --seed 11 --out " + data) == 0,
             "generate failed");
    for (const char* dir : {"run1", "run2"})
        c.expect(run(cli + " --quiet assess " + data + " --out " + (work / dir).string() +
                     " --card --summary") == 0,
                 std::string("assess into ") + dir + " failed");

    std::vector<fs::path> produced;
    for (const auto& entry : fs::directory_iterator(work / "run1"))
        produced.push_back(entry.path().filename());
    std::sort(produced.begin(), produced.end());
    c.expect(produced.size() == 3, "expected report + card + summary");

    std::string svg;
    for (const auto& name : produced) {
        std::string a = slurp(work / "run1" / name);
        std::string b = slurp(work / "run2" / name);
        c.expect(!a.empty(), name.string() + " is empty");
        c.expect(a == b, name.string() + " differs between runs");
        if (name.extension() == ".svg") svg = a;
    }

    c.expect(!svg.empty(), "no SVG card produced");
    std::string xml_error;
    c.expect(xml_well_formed(svg, &xml_error), "SVG not well-formed XML: " + xml_error);
    // 5 members, 16 +/- 1 h each: band 75..85; cap line at the 2 h default
    c.expect(svg.find("class=\"budget-band\" data-lo=\"75.00\" data-hi=\"85.00\"") !=
                 std::string::npos,
             "budget band missing or mis-scaled");
    c.expect(svg.find("class=\"size-cap-line\" data-value=\"2.00\"") != std::string::npos,
             "size cap line missing or mis-scaled");
    c.expect(svg.find("class=\"mraee-overall-line\"") != std::string::npos,
             "MRAEE overall line missing");

    fs::remove_all(work);
    report(7, "end-to-end determinism", c, timer.seconds(), 60.0);
    CHECK_MESSAGE(c.ok, c.log);
}
