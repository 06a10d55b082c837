#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "scrumcard/compliance.hpp"
#include "scrumcard/domain.hpp"

namespace scrumcard {

struct ParseError : std::runtime_error {
    std::string location;
    ParseError(std::string loc, const std::string& message)
        : std::runtime_error(loc + ": " + message), location(std::move(loc)) {}
};

enum class Severity { error, warning };

struct ValidationEntry {
    Severity severity = Severity::error;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool ok() const;
    std::size_t error_count() const;
};

struct ParseResult {
    CohortDataset dataset;
    std::vector<std::string> warnings;  // e.g. unknown fields ignored
};

// Parses the canonical JSON document. Throws ParseError on malformed input
// or field-level violations (wrong type, negative hours, missing required
// fields). Unknown fields are ignored and reported as warnings.
ParseResult parse_dataset_json(const std::string& bytes);

// Parses a CSV bundle: file name -> content. tasks.csv, effort.csv and
// meetings.csv are required; members.csv and doneness.csv are optional
// (members are inferred from effort and meeting participants when absent).
ParseResult parse_csv_bundle(const std::map<std::string, std::string>& files,
                             const std::string& team_id);

// Canonical JSON serialization; parse_dataset_json(serialize_dataset(d)) is
// metric-equal to d.
std::string serialize_dataset(const CohortDataset& dataset);

// Config object alone (used for --config override files).
ProjectConfig parse_config_json(const std::string& bytes, const ProjectConfig& base);

// Applies "name=value" overrides to config fields; throws ParseError on
// unknown names or unparsable values.
ProjectConfig apply_config_override(const ProjectConfig& base, const std::string& assignment);

// resolve_references plus semantic warnings (zero-effort sprints, meetings
// longer than eight hours).
ValidationReport validate(const CohortDataset& dataset);

// Deterministic JSON report with stable field ordering.
std::string export_report(const TeamAssessment& assessment);

TeamAssessment parse_report(const std::string& bytes);

}  // namespace scrumcard
