#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "scrumcard/ingest.hpp"
#include "scrumcard/metrics.hpp"
#include "scrumcard/render.hpp"
#include "scrumcard/synth.hpp"

using namespace scrumcard;
using namespace scrumcard::testing;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

std::size_t count_substr(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("SVG card is deterministic, well-formed and self-contained") {
    for (Scenario s : {Scenario::compliant, Scenario::slacker, Scenario::bulk_backfill}) {
        CAPTURE(to_string(s));
        ScenarioSpec spec;
        spec.scenario = s;
        spec.seed = 5;
        CohortDataset d = generate(spec);
        TeamAssessment a = assess(d);
        std::string svg = render_card(a, d);
        CHECK(svg == render_card(a, d));
        std::string error;
        CHECK_MESSAGE(xml_well_formed(svg, &error), error);
        // self-contained: no external references, scripts or stylesheets
        CHECK(svg.find("href") == std::string::npos);
        CHECK(svg.find("<script") == std::string::npos);
        CHECK(svg.find("url(") == std::string::npos);
        CHECK(svg.find("width=\"1400\"") != std::string::npos);
        CHECK(svg.find("height=\"1000\"") != std::string::npos);
    }
}

TEST_CASE("card exposes its scales through data attributes") {
    ScenarioSpec spec;
    spec.seed = 5;
    CohortDataset d = generate(spec);
    TeamAssessment a = assess(d);
    std::string svg = render_card(a, d);

    auto f2 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    const double target = d.members.size() * d.config.budget_hours_per_person_per_sprint;
    const double tol = d.members.size() * d.config.budget_tolerance_hours;
    std::size_t band = svg.find("class=\"budget-band\"");
    REQUIRE(band != std::string::npos);
    CHECK(svg.find("data-lo=\"" + f2(target - tol) + "\"") != std::string::npos);
    CHECK(svg.find("data-hi=\"" + f2(target + tol) + "\"") != std::string::npos);

    CHECK(count_substr(svg, "class=\"sprint-effort-bar\"") ==
          static_cast<std::size_t>(d.config.sprint_count));
    auto team = team_sprint_effort(d);
    for (const auto& v : team.per_sprint)
        CHECK(svg.find("data-value=\"" + f2(*v) + "\"") != std::string::npos);

    CHECK(svg.find("class=\"size-cap-line\"") != std::string::npos);
    CHECK(svg.find("class=\"mraee-overall-line\"") != std::string::npos);
    CHECK(count_substr(svg, "class=\"rating-badge\"") == a.panels.size());
}

TEST_CASE("empty panels say so instead of drawing nothing") {
    DatasetBuilder b;
    b.member("m1");
    b.task("T1", 1, 2.0);
    for (int s = 1; s <= 4; ++s)
        for (int day = 1; day <= 4; ++day) b.work("T1", "m1", day, 1.0);
    // no meetings at all
    TeamAssessment a = assess(b.d);
    std::string svg = render_card(a, b.d);
    CHECK(svg.find("no data") != std::string::npos);
    std::string error;
    CHECK_MESSAGE(xml_well_formed(svg, &error), error);
}

TEST_CASE("rating colours follow the traffic-light palette") {
    ScenarioSpec spec;
    spec.seed = 5;
    CohortDataset d = generate(spec);  // compliant: no red anywhere
    const std::string red_badge = "fill=\"#c62828\" rx=\"4\" class=\"rating-badge\"";
    const std::string green_badge = "fill=\"#2e7d32\" rx=\"4\" class=\"rating-badge\"";
    std::string svg = render_card(assess(d), d);
    CHECK(svg.find(green_badge) != std::string::npos);
    CHECK(svg.find(red_badge) == std::string::npos);

    spec.scenario = Scenario::slacker;
    d = generate(spec);
    svg = render_card(assess(d), d);
    CHECK(svg.find(red_badge) != std::string::npos);
}

TEST_CASE("text summary layout") {
    ScenarioSpec spec;
    spec.seed = 5;
    CohortDataset d = generate(spec);
    TeamAssessment a = assess(d);
    std::string text = render_summary(a);
    auto lines = lines_of(text);
    REQUIRE(lines.size() == a.panels.size() + a.member_assessments.size() + 2);
    // panel lines end with their rating word
    for (std::size_t i = 0; i < a.panels.size(); ++i) {
        const std::string suffix = to_string(a.panels[i].rating.level);
        REQUIRE(lines[i].size() >= suffix.size());
        CHECK(lines[i].substr(lines[i].size() - suffix.size()) == suffix);
    }
    CHECK(lines[a.panels.size()].rfind("doneness: ok", 0) == 0);
    CHECK(lines.back().rfind("final grade:", 0) == 0);
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("summary formats the balance panel as a percentage") {
    // hand-built assessment with a known Gini so the formatting is exact
    TeamAssessment a;
    a.team_id = "t";
    MetricPanel p;
    p.metric_id = MetricId::balance;
    p.series.per_sprint = {0.022, 0.022, 0.022, 0.022};
    p.series.overall = 0.022;
    p.rating = classify_balance(0.022, ProjectConfig{});
    p.improvement = Trend::stable;
    a.panels.push_back(p);
    std::string text = render_summary(a);
    CHECK(text.find("balance: 2.2% 2.2% 2.2% 2.2% | stable | 2.2% — good\n") != std::string::npos);
}

TEST_CASE("summary marks undefined sprint values with a dash") {
    TeamAssessment a;
    a.team_id = "t";
    MetricPanel p;
    p.metric_id = MetricId::mraee;
    p.series.per_sprint = {std::nullopt, 0.1, 0.1, 0.1};
    p.series.overall = 0.1;
    p.rating.level = RatingLevel::excellent;
    p.improvement = Trend::not_applicable;
    a.panels.push_back(p);
    std::string text = render_summary(a);
    CHECK(text.find("mraee: - 10.0% 10.0% 10.0%") != std::string::npos);
}
