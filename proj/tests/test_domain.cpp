#include "doctest.h"
#include "helpers.hpp"
#include "scrumcard/domain.hpp"

using namespace scrumcard;
using scrumcard::testing::DatasetBuilder;

TEST_CASE("empty dataset resolves cleanly") {
    DatasetBuilder b;
    b.member("m1");
    CHECK(resolve_references(b.d).empty());
}

TEST_CASE("dangling task reference is named") {
    DatasetBuilder b;
    b.member("m1").work("T9", "m1", 1, 2.0);
    auto errors = resolve_references(b.d);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].message.find("T9") != std::string::npos);
}

TEST_CASE("day one past the sprint length is a range error") {
    DatasetBuilder b;
    b.member("m1").task("t1", 1).work("t1", "m1", 15, 2.0);
    auto errors = resolve_references(b.d);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].message.find("day 15") != std::string::npos);

    // boundary itself is fine
    DatasetBuilder ok;
    ok.member("m1").task("t1", 1).work("t1", "m1", 14, 2.0);
    CHECK(resolve_references(ok.d).empty());
}

TEST_CASE("duplicate ids and bad values are all reported") {
    DatasetBuilder b;
    b.member("m1").member("m1");
    b.task("t1", 1).task("t1", 9, -1.0);
    b.meeting("x", MeetingKind::scrum, 1, 1, 15.0, {"ghost"});
    auto errors = resolve_references(b.d);
    CHECK(errors.size() == 5);  // dup member, dup task, sprint range, bad estimate, ghost
}

TEST_CASE("config invariants") {
    ProjectConfig cfg;
    CHECK(cfg.check().empty());

    cfg.gini_good = 0.09;
    cfg.gini_bad = 0.03;
    CHECK_FALSE(cfg.check().empty());

    cfg = ProjectConfig{};
    cfg.team_weight = 0.9;  // weights no longer sum to 1
    CHECK_FALSE(cfg.check().empty());

    cfg = ProjectConfig{};
    cfg.release_sprints = {2, 7};
    CHECK_FALSE(cfg.check().empty());
}
