#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scrumcard/compliance.hpp"
#include "scrumcard/ingest.hpp"
#include "scrumcard/render.hpp"
#include "scrumcard/synth.hpp"

namespace fs = std::filesystem;
using namespace scrumcard;

namespace {

constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kUsageError = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// temp + rename, so interrupted runs never leave truncated outputs
void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

ParseResult load_dataset(const fs::path& path, const std::string& format) {
    if (format == "csv-bundle") {
        if (!fs::is_directory(path))
            throw IoError(path.string() + " is not a directory (csv-bundle expects one)");
        std::map<std::string, std::string> files;
        for (const char* name :
             {"tasks.csv", "effort.csv", "meetings.csv", "members.csv", "doneness.csv"}) {
            fs::path p = path / name;
            if (fs::exists(p)) files[name] = read_file(p);
        }
        return parse_csv_bundle(files, path.filename().string());
    }
    return parse_dataset_json(read_file(path));
}

void print_report(const ValidationReport& report, const std::string& name, bool quiet) {
    if (report.entries.empty()) {
        if (!quiet) std::cout << name << ": OK\n";
        return;
    }
    for (const auto& e : report.entries) {
        if (quiet && e.severity != Severity::error) continue;
        std::cout << name << ": " << (e.severity == Severity::error ? "error" : "warning") << " at "
                  << e.location << ": " << e.message << "\n";
    }
    if (!quiet && report.ok()) std::cout << name << ": OK (with warnings)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scrum-process compliance assessment from sprint-tracking exports"};
    app.require_subcommand(1);

    std::string format = "json";
    bool quiet = false;
    app.add_option("--format", format, "input format")
        ->check(CLI::IsMember({"json", "csv-bundle"}));
    app.add_flag("--quiet", quiet, "suppress informational output");

    auto* validate_cmd = app.add_subcommand("validate", "check dataset files");
    validate_cmd->fallthrough();
    std::vector<std::string> validate_paths;
    validate_cmd->add_option("paths", validate_paths, "dataset files")->required();

    auto* assess_cmd = app.add_subcommand("assess", "assess teams and write reports");
    assess_cmd->fallthrough();
    std::vector<std::string> assess_paths;
    std::string out_dir = ".";
    bool want_card = false, want_report = false, want_summary = false;
    std::string config_path;
    std::vector<std::string> overrides;
    assess_cmd->add_option("paths", assess_paths, "dataset files")->required();
    assess_cmd->add_option("--out", out_dir, "output directory");
    assess_cmd->add_flag("--card", want_card, "write <team_id>.card.svg");
    assess_cmd->add_flag("--report", want_report, "write <team_id>.report.json (always written)");
    assess_cmd->add_flag("--summary", want_summary, "write <team_id>.summary.txt");
    assess_cmd->add_option("--config", config_path, "config overrides (JSON file)");
    assess_cmd->add_option("--set", overrides, "config override name=value (wins over --config)");

    auto* generate_cmd = app.add_subcommand("generate", "write a synthetic scenario dataset");
    generate_cmd->fallthrough();
    std::string scenario_name;
    int team_size = 5;
    std::uint64_t seed = 1;
    std::string gen_out = "dataset.json";
    generate_cmd->add_option("scenario", scenario_name, "scenario name")->required();
    generate_cmd->add_option("--team-size", team_size, "members in the team");
    generate_cmd->add_option("--seed", seed, "generator seed");
    generate_cmd->add_option("--out", gen_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        if (*validate_cmd) {
            bool any_error = false;
            for (const auto& p : validate_paths) {
                try {
                    ParseResult result = load_dataset(p, format);
                    for (const auto& w : result.warnings)
                        if (!quiet) std::cout << p << ": warning: " << w << "\n";
                    ValidationReport report = validate(result.dataset);
                    print_report(report, p, quiet);
                    if (!report.ok()) any_error = true;
                } catch (const ParseError& e) {
                    std::cout << p << ": error: " << e.what() << "\n";
                    any_error = true;
                }
            }
            return any_error ? kValidationError : kOk;
        }

        if (*assess_cmd) {
            fs::create_directories(out_dir);
            bool any_failed = false;
            for (const auto& p : assess_paths) {
                try {
                    ParseResult result = load_dataset(p, format);
                    CohortDataset dataset = std::move(result.dataset);
                    ProjectConfig cfg = dataset.config;
                    if (!config_path.empty()) cfg = parse_config_json(read_file(config_path), cfg);
                    for (const auto& ov : overrides) cfg = apply_config_override(cfg, ov);
                    dataset.config = cfg;

                    ValidationReport report = validate(dataset);
                    if (!report.ok()) {
                        print_report(report, p, quiet);
                        std::cout << p << ": skipped (validation errors)\n";
                        any_failed = true;
                        continue;
                    }
                    TeamAssessment assessment = assess(dataset);
                    fs::path base = fs::path(out_dir) / assessment.team_id;
                    write_file_atomic(base.string() + ".report.json", export_report(assessment));
                    if (want_card)
                        write_file_atomic(base.string() + ".card.svg",
                                          render_card(assessment, dataset));
                    if (want_summary)
                        write_file_atomic(base.string() + ".summary.txt",
                                          render_summary(assessment));
                    if (!quiet)
                        std::cout << p << ": assessed " << assessment.team_id << " (final grade "
                                  << assessment.final_grade << ")\n";
                } catch (const ParseError& e) {
                    std::cout << p << ": error: " << e.what() << "\n";
                    any_failed = true;
                } catch (const MissingEvidenceError& e) {
                    std::cout << p << ": error: " << e.what() << "\n";
                    any_failed = true;
                }
            }
            (void)want_report;
            return any_failed ? kValidationError : kOk;
        }

        if (*generate_cmd) {
            ScenarioSpec spec;
            try {
                spec.scenario = scenario_from_string(scenario_name);
            } catch (const std::invalid_argument&) {
                std::cerr << "unknown scenario \"" << scenario_name
                          << "\"; valid: compliant, bulk_backfill, slacker, subteam_split, "
                             "ramp_up, unestimated_heavy, overcommit\n";
                return kUsageError;
            }
            if (team_size < 2) {
                std::cerr << "team-size must be at least 2\n";
                return kUsageError;
            }
            spec.team_size = team_size;
            spec.seed = seed;
            CohortDataset dataset = generate(spec);
            write_file_atomic(gen_out, serialize_dataset(dataset));
            if (!quiet)
                std::cout << "wrote " << gen_out << "\n"
                          << "target: " << scenario_target_description(spec.scenario) << "\n";
            return kOk;
        }
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    }
    return kUsageError;
}
