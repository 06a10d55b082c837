#pragma once

#include <cstdint>
#include <string>

#include "scrumcard/domain.hpp"

namespace scrumcard {

enum class Scenario {
    compliant,
    bulk_backfill,
    slacker,
    subteam_split,
    ramp_up,
    unestimated_heavy,
    overcommit,
};

std::string to_string(Scenario s);

// Throws std::invalid_argument for unknown names.
Scenario scenario_from_string(const std::string& name);

// One-line description of the behaviour a scenario injects and the metric
// it is expected to trip (coupled metrics included).
std::string scenario_target_description(Scenario s);

struct ScenarioSpec {
    Scenario scenario = Scenario::compliant;
    int team_size = 5;
    std::uint64_t seed = 1;
    ProjectConfig config;
};

// Deterministic: the same spec always yields an identical dataset. Violations
// are placed structurally, so each scenario's target property holds for every
// seed. Throws std::invalid_argument when team_size < 2.
CohortDataset generate(const ScenarioSpec& spec);

}  // namespace scrumcard
