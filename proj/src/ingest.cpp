#include "scrumcard/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace scrumcard {

using nlohmann::json;
using nlohmann::ordered_json;

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [](const ValidationEntry& e) { return e.severity == Severity::error; }));
}

namespace {

const json& require(const json& obj, const char* key, const std::string& loc) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(loc, std::string("missing required field \"") + key + "\"");
    return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& loc) {
    const json& v = require(obj, key, loc);
    if (!v.is_string()) throw ParseError(loc + "." + key, "expected a string");
    return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& loc) {
    const json& v = require(obj, key, loc);
    if (!v.is_number()) throw ParseError(loc + "." + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& loc) {
    const json& v = require(obj, key, loc);
    if (!v.is_number_integer()) throw ParseError(loc + "." + key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const char* key, const std::string& loc) {
    const json& v = require(obj, key, loc);
    if (!v.is_boolean()) throw ParseError(loc + "." + key, "expected a boolean");
    return v.get<bool>();
}

void warn_unknown(const json& obj, const std::set<std::string>& known, const std::string& loc,
                  std::vector<std::string>& warnings) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            warnings.push_back(loc + ": unknown field \"" + it.key() + "\" ignored");
}

TaskKind parse_task_kind(const std::string& s, const std::string& loc) {
    if (s == "story") return TaskKind::story;
    if (s == "task") return TaskKind::task;
    if (s == "technical_debt") return TaskKind::technical_debt;
    throw ParseError(loc, "unknown task kind \"" + s + "\"");
}

MeetingKind parse_meeting_kind(const std::string& s, const std::string& loc) {
    if (s == "scrum") return MeetingKind::scrum;
    if (s == "planning") return MeetingKind::planning;
    throw ParseError(loc, "unknown meeting kind \"" + s + "\"");
}

const char* task_kind_name(TaskKind k) {
    switch (k) {
        case TaskKind::story: return "story";
        case TaskKind::task: return "task";
        case TaskKind::technical_debt: return "technical_debt";
    }
    return "?";
}

ProjectConfig parse_config_object(const json& obj, const ProjectConfig& base,
                                  std::vector<std::string>* warnings) {
    ProjectConfig cfg = base;
    if (!obj.is_object()) throw ParseError("config", "expected an object");
    static const std::set<std::string> known = {
        "sprint_count", "sprint_length_days", "budget_hours_per_person_per_sprint",
        "budget_tolerance_hours", "task_size_cap_hours_per_participant", "gini_good",
        "gini_bad", "trend_suspect", "trend_critical", "mraee_excellent", "mraee_critical",
        "unestimated_critical", "daily_outlier_hours", "individual_budget_tolerance_fraction",
        "release_sprints", "demo_failure_tolerance", "team_weight", "individual_weight"};
    if (warnings) warn_unknown(obj, known, "config", *warnings);
    auto num = [&](const char* key, double& target) {
        if (obj.contains(key)) target = get_number(obj, key, "config");
    };
    auto integer = [&](const char* key, int& target) {
        if (obj.contains(key)) target = get_int(obj, key, "config");
    };
    integer("sprint_count", cfg.sprint_count);
    integer("sprint_length_days", cfg.sprint_length_days);
    num("budget_hours_per_person_per_sprint", cfg.budget_hours_per_person_per_sprint);
    num("budget_tolerance_hours", cfg.budget_tolerance_hours);
    num("task_size_cap_hours_per_participant", cfg.task_size_cap_hours_per_participant);
    num("gini_good", cfg.gini_good);
    num("gini_bad", cfg.gini_bad);
    num("trend_suspect", cfg.trend_suspect);
    num("trend_critical", cfg.trend_critical);
    num("mraee_excellent", cfg.mraee_excellent);
    num("mraee_critical", cfg.mraee_critical);
    num("unestimated_critical", cfg.unestimated_critical);
    num("daily_outlier_hours", cfg.daily_outlier_hours);
    num("individual_budget_tolerance_fraction", cfg.individual_budget_tolerance_fraction);
    integer("demo_failure_tolerance", cfg.demo_failure_tolerance);
    num("team_weight", cfg.team_weight);
    num("individual_weight", cfg.individual_weight);
    if (obj.contains("release_sprints")) {
        const json& rs = obj["release_sprints"];
        if (!rs.is_array()) throw ParseError("config.release_sprints", "expected an array");
        cfg.release_sprints.clear();
        for (const auto& v : rs) {
            if (!v.is_number_integer())
                throw ParseError("config.release_sprints", "expected integers");
            cfg.release_sprints.push_back(v.get<int>());
        }
    }
    return cfg;
}

json parse_top_level(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError("document", e.what());
    }
}

}  // namespace

ProjectConfig parse_config_json(const std::string& bytes, const ProjectConfig& base) {
    return parse_config_object(parse_top_level(bytes), base, nullptr);
}

ProjectConfig apply_config_override(const ProjectConfig& base, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ParseError("override", "expected name=value, got \"" + assignment + "\"");
    const std::string name = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    json obj;
    try {
        obj[name] = json::parse(value);
    } catch (const json::parse_error&) {
        throw ParseError("override", "unparsable value \"" + value + "\" for " + name);
    }
    std::vector<std::string> warnings;
    ProjectConfig cfg = parse_config_object(obj, base, &warnings);
    if (!warnings.empty())
        throw ParseError("override", "unknown config field \"" + name + "\"");
    return cfg;
}

ParseResult parse_dataset_json(const std::string& bytes) {
    ParseResult result;
    CohortDataset& d = result.dataset;
    json doc = parse_top_level(bytes);
    if (!doc.is_object()) throw ParseError("document", "expected a JSON object");

    static const std::set<std::string> top_known = {"team_id", "config", "members", "tasks",
                                                    "effort", "meetings", "doneness", "manual"};
    warn_unknown(doc, top_known, "document", result.warnings);

    d.team_id = get_string(doc, "team_id", "document");
    if (doc.contains("config"))
        d.config = parse_config_object(doc["config"], ProjectConfig{}, &result.warnings);

    const json& members = require(doc, "members", "document");
    if (!members.is_array()) throw ParseError("members", "expected an array");
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::string loc = "members[" + std::to_string(i) + "]";
        const json& m = members[i];
        warn_unknown(m, {"id", "name"}, loc, result.warnings);
        d.members.push_back({get_string(m, "id", loc), get_string(m, "name", loc)});
    }

    if (doc.contains("tasks")) {
        const json& tasks = doc["tasks"];
        if (!tasks.is_array()) throw ParseError("tasks", "expected an array");
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            std::string loc = "tasks[" + std::to_string(i) + "]";
            const json& t = tasks[i];
            warn_unknown(t, {"id", "title", "kind", "sprint", "estimate_hours", "planned_assignees"},
                         loc, result.warnings);
            Task task;
            task.task_id = get_string(t, "id", loc);
            task.title = get_string(t, "title", loc);
            task.kind = parse_task_kind(get_string(t, "kind", loc), loc + ".kind");
            task.sprint = get_int(t, "sprint", loc);
            if (t.contains("estimate_hours") && !t["estimate_hours"].is_null()) {
                double e = get_number(t, "estimate_hours", loc);
                if (e < 0) throw ParseError(loc + ".estimate_hours", "must be non-negative");
                task.estimate_hours = e;
            }
            if (t.contains("planned_assignees") && !t["planned_assignees"].is_null()) {
                int p = get_int(t, "planned_assignees", loc);
                if (p < 1) throw ParseError(loc + ".planned_assignees", "must be positive");
                task.planned_assignees = p;
            }
            d.tasks.push_back(std::move(task));
        }
    }

    if (doc.contains("effort")) {
        const json& effort = doc["effort"];
        if (!effort.is_array()) throw ParseError("effort", "expected an array");
        for (std::size_t i = 0; i < effort.size(); ++i) {
            std::string loc = "effort[" + std::to_string(i) + "]";
            const json& e = effort[i];
            warn_unknown(e, {"task", "member", "day", "hours"}, loc, result.warnings);
            EffortEntry entry;
            entry.task_id = get_string(e, "task", loc);
            entry.member_id = get_string(e, "member", loc);
            entry.day = get_int(e, "day", loc);
            entry.hours = get_number(e, "hours", loc);
            if (entry.hours <= 0) throw ParseError(loc + ".hours", "must be positive");
            d.effort.push_back(std::move(entry));
        }
    }

    if (doc.contains("meetings")) {
        const json& meetings = doc["meetings"];
        if (!meetings.is_array()) throw ParseError("meetings", "expected an array");
        for (std::size_t i = 0; i < meetings.size(); ++i) {
            std::string loc = "meetings[" + std::to_string(i) + "]";
            const json& m = meetings[i];
            warn_unknown(m, {"id", "kind", "sprint", "day", "duration_minutes", "participants"},
                         loc, result.warnings);
            Meeting meeting;
            meeting.meeting_id = get_string(m, "id", loc);
            meeting.kind = parse_meeting_kind(get_string(m, "kind", loc), loc + ".kind");
            meeting.sprint = get_int(m, "sprint", loc);
            meeting.day = get_int(m, "day", loc);
            meeting.duration_minutes = get_number(m, "duration_minutes", loc);
            if (meeting.duration_minutes <= 0)
                throw ParseError(loc + ".duration_minutes", "must be positive");
            const json& parts = require(m, "participants", loc);
            if (!parts.is_array()) throw ParseError(loc + ".participants", "expected an array");
            for (const auto& p : parts) {
                if (!p.is_string()) throw ParseError(loc + ".participants", "expected strings");
                meeting.participants.push_back(p.get<std::string>());
            }
            d.meetings.push_back(std::move(meeting));
        }
    }

    if (doc.contains("doneness")) {
        const json& doneness = doc["doneness"];
        if (!doneness.is_array()) throw ParseError("doneness", "expected an array");
        for (std::size_t i = 0; i < doneness.size(); ++i) {
            std::string loc = "doneness[" + std::to_string(i) + "]";
            const json& ev = doneness[i];
            warn_unknown(ev,
                         {"sprint", "unit_test_evidence", "e2e_test_evidence", "demo_failures",
                          "td_tasks_consistent", "docker_image_available"},
                         loc, result.warnings);
            DonenessEvidence e;
            e.sprint = get_int(ev, "sprint", loc);
            e.unit_test_evidence = get_bool(ev, "unit_test_evidence", loc);
            e.e2e_test_evidence = get_bool(ev, "e2e_test_evidence", loc);
            e.demo_failures = get_int(ev, "demo_failures", loc);
            if (e.demo_failures < 0) throw ParseError(loc + ".demo_failures", "must be non-negative");
            e.td_tasks_consistent = get_bool(ev, "td_tasks_consistent", loc);
            e.docker_image_available = get_bool(ev, "docker_image_available", loc);
            d.doneness.push_back(e);
        }
    }

    if (doc.contains("manual") && !doc["manual"].is_null()) {
        const json& man = doc["manual"];
        if (!man.is_object()) throw ParseError("manual", "expected an object");
        warn_unknown(man, {"review_quality", "retrospective_quality", "participation"}, "manual",
                     result.warnings);
        ManualScores scores;
        auto read_scores = [&](const char* key, std::vector<double>& target) {
            if (!man.contains(key)) return;
            const json& arr = man[key];
            if (!arr.is_array()) throw ParseError(std::string("manual.") + key, "expected an array");
            for (const auto& v : arr) {
                if (!v.is_number()) throw ParseError(std::string("manual.") + key, "expected numbers");
                target.push_back(v.get<double>());
            }
        };
        read_scores("review_quality", scores.review_quality);
        read_scores("retrospective_quality", scores.retrospective_quality);
        if (man.contains("participation")) {
            const json& part = man["participation"];
            if (!part.is_object()) throw ParseError("manual.participation", "expected an object");
            for (auto it = part.begin(); it != part.end(); ++it) {
                if (!it.value().is_number_integer())
                    throw ParseError("manual.participation", "expected integer counts");
                scores.participation[it.key()] = it.value().get<int>();
            }
        }
        d.manual = std::move(scores);
    }

    return result;
}

std::string serialize_dataset(const CohortDataset& d) {
    ordered_json doc;
    doc["team_id"] = d.team_id;
    ordered_json cfg;
    cfg["sprint_count"] = d.config.sprint_count;
    cfg["sprint_length_days"] = d.config.sprint_length_days;
    cfg["budget_hours_per_person_per_sprint"] = d.config.budget_hours_per_person_per_sprint;
    cfg["budget_tolerance_hours"] = d.config.budget_tolerance_hours;
    cfg["task_size_cap_hours_per_participant"] = d.config.task_size_cap_hours_per_participant;
    cfg["gini_good"] = d.config.gini_good;
    cfg["gini_bad"] = d.config.gini_bad;
    cfg["trend_suspect"] = d.config.trend_suspect;
    cfg["trend_critical"] = d.config.trend_critical;
    cfg["mraee_excellent"] = d.config.mraee_excellent;
    cfg["mraee_critical"] = d.config.mraee_critical;
    cfg["unestimated_critical"] = d.config.unestimated_critical;
    cfg["daily_outlier_hours"] = d.config.daily_outlier_hours;
    cfg["individual_budget_tolerance_fraction"] = d.config.individual_budget_tolerance_fraction;
    cfg["release_sprints"] = d.config.release_sprints;
    cfg["demo_failure_tolerance"] = d.config.demo_failure_tolerance;
    cfg["team_weight"] = d.config.team_weight;
    cfg["individual_weight"] = d.config.individual_weight;
    doc["config"] = std::move(cfg);

    doc["members"] = ordered_json::array();
    for (const auto& m : d.members)
        doc["members"].push_back({{"id", m.member_id}, {"name", m.display_name}});

    doc["tasks"] = ordered_json::array();
    for (const auto& t : d.tasks) {
        ordered_json jt;
        jt["id"] = t.task_id;
        jt["title"] = t.title;
        jt["kind"] = task_kind_name(t.kind);
        jt["sprint"] = t.sprint;
        if (t.estimate_hours) jt["estimate_hours"] = *t.estimate_hours;
        if (t.planned_assignees) jt["planned_assignees"] = *t.planned_assignees;
        doc["tasks"].push_back(std::move(jt));
    }

    doc["effort"] = ordered_json::array();
    for (const auto& e : d.effort)
        doc["effort"].push_back(
            {{"task", e.task_id}, {"member", e.member_id}, {"day", e.day}, {"hours", e.hours}});

    doc["meetings"] = ordered_json::array();
    for (const auto& m : d.meetings) {
        ordered_json jm;
        jm["id"] = m.meeting_id;
        jm["kind"] = m.kind == MeetingKind::scrum ? "scrum" : "planning";
        jm["sprint"] = m.sprint;
        jm["day"] = m.day;
        jm["duration_minutes"] = m.duration_minutes;
        jm["participants"] = m.participants;
        doc["meetings"].push_back(std::move(jm));
    }

    doc["doneness"] = ordered_json::array();
    for (const auto& ev : d.doneness)
        doc["doneness"].push_back({{"sprint", ev.sprint},
                                   {"unit_test_evidence", ev.unit_test_evidence},
                                   {"e2e_test_evidence", ev.e2e_test_evidence},
                                   {"demo_failures", ev.demo_failures},
                                   {"td_tasks_consistent", ev.td_tasks_consistent},
                                   {"docker_image_available", ev.docker_image_available}});

    if (d.manual) {
        ordered_json man;
        man["review_quality"] = d.manual->review_quality;
        man["retrospective_quality"] = d.manual->retrospective_quality;
        ordered_json part = ordered_json::object();
        for (const auto& [id, count] : d.manual->participation) part[id] = count;
        man["participation"] = std::move(part);
        doc["manual"] = std::move(man);
    }

    return doc.dump(2) + "\n";
}

namespace {

// Minimal CSV reader: quoted fields with embedded commas and doubled quotes.
std::vector<std::vector<std::string>> read_csv(const std::string& text, const std::string& loc) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"': in_quotes = true; row_started = true; break;
            case ',': row.push_back(field); field.clear(); row_started = true; break;
            case '\r': break;
            case '\n':
                if (row_started || !field.empty()) {
                    row.push_back(field);
                    rows.push_back(row);
                }
                row.clear();
                field.clear();
                row_started = false;
                break;
            default: field += c; row_started = true; break;
        }
    }
    if (in_quotes) throw ParseError(loc, "unterminated quoted field");
    if (row_started || !field.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

class CsvTable {
public:
    CsvTable(const std::string& text, std::string name) : name_(std::move(name)) {
        auto rows = read_csv(text, name_);
        if (rows.empty()) throw ParseError(name_, "missing header row");
        for (std::size_t i = 0; i < rows[0].size(); ++i) columns_[rows[0][i]] = i;
        rows_.assign(rows.begin() + 1, rows.end());
    }

    std::size_t size() const { return rows_.size(); }
    bool has_column(const std::string& col) const { return columns_.count(col) > 0; }

    std::string cell(std::size_t row, const std::string& col) const {
        auto it = columns_.find(col);
        if (it == columns_.end())
            throw ParseError(name_, "missing column \"" + col + "\"");
        if (it->second >= rows_[row].size()) return "";
        return rows_[row][it->second];
    }

    std::string where(std::size_t row, const std::string& col) const {
        return name_ + " row " + std::to_string(row + 2) + " column " + col;
    }

    double number(std::size_t row, const std::string& col) const {
        const std::string v = cell(row, col);
        try {
            std::size_t used = 0;
            double x = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ParseError(where(row, col), "expected a number, got \"" + v + "\"");
        }
    }

    int integer(std::size_t row, const std::string& col) const {
        const std::string v = cell(row, col);
        try {
            std::size_t used = 0;
            int x = std::stoi(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ParseError(where(row, col), "expected an integer, got \"" + v + "\"");
        }
    }

    bool boolean(std::size_t row, const std::string& col) const {
        const std::string v = cell(row, col);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw ParseError(where(row, col), "expected a boolean, got \"" + v + "\"");
    }

private:
    std::string name_;
    std::map<std::string, std::size_t> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::vector<std::string> split_pipe(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, '|'))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

ParseResult parse_csv_bundle(const std::map<std::string, std::string>& files,
                             const std::string& team_id) {
    ParseResult result;
    CohortDataset& d = result.dataset;
    d.team_id = team_id;

    for (const char* name : {"tasks.csv", "effort.csv", "meetings.csv"})
        if (!files.count(name)) throw ParseError(name, "missing from bundle");

    CsvTable tasks(files.at("tasks.csv"), "tasks.csv");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        Task t;
        t.task_id = tasks.cell(i, "id");
        t.title = tasks.cell(i, "title");
        t.kind = parse_task_kind(tasks.cell(i, "kind"), tasks.where(i, "kind"));
        t.sprint = tasks.integer(i, "sprint");
        if (tasks.has_column("estimate_hours") && !tasks.cell(i, "estimate_hours").empty()) {
            double e = tasks.number(i, "estimate_hours");
            if (e < 0) throw ParseError(tasks.where(i, "estimate_hours"), "must be non-negative");
            t.estimate_hours = e;
        }
        if (tasks.has_column("planned_assignees") && !tasks.cell(i, "planned_assignees").empty()) {
            int p = tasks.integer(i, "planned_assignees");
            if (p < 1) throw ParseError(tasks.where(i, "planned_assignees"), "must be positive");
            t.planned_assignees = p;
        }
        d.tasks.push_back(std::move(t));
    }

    CsvTable effort(files.at("effort.csv"), "effort.csv");
    for (std::size_t i = 0; i < effort.size(); ++i) {
        EffortEntry e;
        e.task_id = effort.cell(i, "task");
        e.member_id = effort.cell(i, "member");
        e.day = effort.integer(i, "day");
        e.hours = effort.number(i, "hours");
        if (e.hours <= 0) throw ParseError(effort.where(i, "hours"), "must be positive");
        d.effort.push_back(std::move(e));
    }

    CsvTable meetings(files.at("meetings.csv"), "meetings.csv");
    for (std::size_t i = 0; i < meetings.size(); ++i) {
        Meeting m;
        m.meeting_id = meetings.cell(i, "id");
        m.kind = parse_meeting_kind(meetings.cell(i, "kind"), meetings.where(i, "kind"));
        m.sprint = meetings.integer(i, "sprint");
        m.day = meetings.integer(i, "day");
        m.duration_minutes = meetings.number(i, "duration_minutes");
        if (m.duration_minutes <= 0)
            throw ParseError(meetings.where(i, "duration_minutes"), "must be positive");
        m.participants = split_pipe(meetings.cell(i, "participants"));
        d.meetings.push_back(std::move(m));
    }

    if (files.count("members.csv")) {
        CsvTable members(files.at("members.csv"), "members.csv");
        for (std::size_t i = 0; i < members.size(); ++i)
            d.members.push_back({members.cell(i, "id"), members.cell(i, "name")});
    } else {
        std::set<std::string> ids;
        for (const auto& e : d.effort) ids.insert(e.member_id);
        for (const auto& m : d.meetings)
            for (const auto& p : m.participants) ids.insert(p);
        for (const auto& id : ids) d.members.push_back({id, id});
        result.warnings.push_back("members.csv absent; members inferred from effort and meetings");
    }

    if (files.count("doneness.csv")) {
        CsvTable doneness(files.at("doneness.csv"), "doneness.csv");
        for (std::size_t i = 0; i < doneness.size(); ++i) {
            DonenessEvidence ev;
            ev.sprint = doneness.integer(i, "sprint");
            ev.unit_test_evidence = doneness.boolean(i, "unit_test_evidence");
            ev.e2e_test_evidence = doneness.boolean(i, "e2e_test_evidence");
            ev.demo_failures = doneness.integer(i, "demo_failures");
            ev.td_tasks_consistent = doneness.boolean(i, "td_tasks_consistent");
            ev.docker_image_available = doneness.boolean(i, "docker_image_available");
            d.doneness.push_back(ev);
        }
    }

    return result;
}

ValidationReport validate(const CohortDataset& dataset) {
    ValidationReport report;
    for (const auto& err : resolve_references(dataset))
        report.entries.push_back({Severity::error, err.location, err.message});
    if (dataset.members.empty())
        report.entries.push_back({Severity::error, "members", "at least one member required"});

    if (report.ok()) {
        std::vector<double> sprint_hours(dataset.config.sprint_count, 0.0);
        for (const auto& e : dataset.effort) {
            const Task* t = dataset.find_task(e.task_id);
            if (t) sprint_hours[t->sprint - 1] += e.hours;
        }
        for (int s = 0; s < dataset.config.sprint_count; ++s)
            if (sprint_hours[s] == 0.0)
                report.entries.push_back({Severity::warning, "sprint " + std::to_string(s + 1),
                                          "no logged effort in this sprint"});
        for (std::size_t i = 0; i < dataset.meetings.size(); ++i)
            if (dataset.meetings[i].duration_minutes > 8 * 60)
                report.entries.push_back({Severity::warning, "meetings[" + std::to_string(i) + "]",
                                          "meeting longer than 8 hours"});
    }
    return report;
}

namespace {

RatingLevel rating_level_from(const std::string& s, const std::string& loc) {
    if (s == "excellent") return RatingLevel::excellent;
    if (s == "good") return RatingLevel::good;
    if (s == "acceptable") return RatingLevel::acceptable;
    if (s == "warning") return RatingLevel::warning;
    if (s == "critical") return RatingLevel::critical;
    throw ParseError(loc, "unknown rating level \"" + s + "\"");
}

Trend trend_from(const std::string& s, const std::string& loc) {
    if (s == "improving") return Trend::improving;
    if (s == "stable") return Trend::stable;
    if (s == "worsening") return Trend::worsening;
    if (s == "n/a") return Trend::not_applicable;
    throw ParseError(loc, "unknown trend \"" + s + "\"");
}

MetricId metric_id_from(const std::string& s, const std::string& loc) {
    if (s == "budget") return MetricId::budget;
    if (s == "balance") return MetricId::balance;
    if (s == "daily_trend") return MetricId::daily_trend;
    if (s == "task_size") return MetricId::task_size;
    if (s == "mraee") return MetricId::mraee;
    if (s == "unestimated") return MetricId::unestimated;
    if (s == "meetings") return MetricId::meetings;
    throw ParseError(loc, "unknown metric_id \"" + s + "\"");
}

MemberFlag member_flag_from(const std::string& s, const std::string& loc) {
    if (s == "daily_outlier") return MemberFlag::daily_outlier;
    if (s == "sprint_budget_violation") return MemberFlag::sprint_budget_violation;
    if (s == "low_participation") return MemberFlag::low_participation;
    if (s == "never_presented") return MemberFlag::never_presented;
    throw ParseError(loc, "unknown member flag \"" + s + "\"");
}

}  // namespace

std::string export_report(const TeamAssessment& a) {
    ordered_json doc;
    doc["team_id"] = a.team_id;
    doc["panels"] = ordered_json::array();
    for (const auto& p : a.panels) {
        ordered_json jp;
        jp["metric_id"] = to_string(p.metric_id);
        ordered_json series = ordered_json::array();
        for (const auto& v : p.series.per_sprint) {
            if (v)
                series.push_back(*v);
            else
                series.push_back(nullptr);
        }
        jp["per_sprint"] = std::move(series);
        jp["overall"] = p.series.overall;
        jp["rating"] = {{"level", to_string(p.rating.level)}, {"rationale", p.rating.rationale}};
        jp["improvement"] = to_string(p.improvement);
        doc["panels"].push_back(std::move(jp));
    }
    ordered_json done;
    done["per_sprint"] = ordered_json::array();
    for (const auto& s : a.doneness.per_sprint) {
        ordered_json js;
        js["sprint"] = s.sprint;
        js["testing_ok"] = s.testing_ok;
        js["demo_ok"] = s.demo_ok;
        js["td_ok"] = s.td_ok;
        js["release_applicable"] = s.release_applicable;
        js["release_ok"] = s.release_ok;
        done["per_sprint"].push_back(std::move(js));
    }
    done["overall_ok"] = a.doneness.overall_ok;
    doc["doneness"] = std::move(done);
    doc["members"] = ordered_json::array();
    for (const auto& m : a.member_assessments) {
        ordered_json jm;
        jm["member_id"] = m.member_id;
        ordered_json flags = ordered_json::array();
        for (auto f : m.flags) flags.push_back(to_string(f));
        jm["flags"] = std::move(flags);
        jm["sprints_over_budget"] = m.sprints_over_budget;
        jm["score"] = m.score;
        doc["members"].push_back(std::move(jm));
    }
    doc["team_score"] = a.team_score;
    doc["final_grade"] = a.final_grade;
    return doc.dump(2) + "\n";
}

TeamAssessment parse_report(const std::string& bytes) {
    json doc = parse_top_level(bytes);
    TeamAssessment a;
    a.team_id = get_string(doc, "team_id", "report");
    for (const auto& jp : require(doc, "panels", "report")) {
        MetricPanel p;
        p.metric_id = metric_id_from(get_string(jp, "metric_id", "panel"), "panel.metric_id");
        for (const auto& v : require(jp, "per_sprint", "panel")) {
            if (v.is_null())
                p.series.per_sprint.push_back(std::nullopt);
            else
                p.series.per_sprint.push_back(v.get<double>());
        }
        p.series.overall = get_number(jp, "overall", "panel");
        const json& r = require(jp, "rating", "panel");
        p.rating.level = rating_level_from(get_string(r, "level", "rating"), "rating.level");
        p.rating.rationale = get_string(r, "rationale", "rating");
        p.improvement = trend_from(get_string(jp, "improvement", "panel"), "panel.improvement");
        a.panels.push_back(std::move(p));
    }
    const json& done = require(doc, "doneness", "report");
    for (const auto& js : require(done, "per_sprint", "doneness")) {
        DonenessSprint s;
        s.sprint = get_int(js, "sprint", "doneness");
        s.testing_ok = get_bool(js, "testing_ok", "doneness");
        s.demo_ok = get_bool(js, "demo_ok", "doneness");
        s.td_ok = get_bool(js, "td_ok", "doneness");
        s.release_applicable = get_bool(js, "release_applicable", "doneness");
        s.release_ok = get_bool(js, "release_ok", "doneness");
        a.doneness.per_sprint.push_back(s);
    }
    a.doneness.overall_ok = get_bool(done, "overall_ok", "doneness");
    for (const auto& jm : require(doc, "members", "report")) {
        MemberAssessment m;
        m.member_id = get_string(jm, "member_id", "member");
        for (const auto& f : require(jm, "flags", "member"))
            m.flags.push_back(member_flag_from(f.get<std::string>(), "member.flags"));
        m.sprints_over_budget = get_int(jm, "sprints_over_budget", "member");
        m.score = get_number(jm, "score", "member");
        a.member_assessments.push_back(std::move(m));
    }
    a.team_score = get_number(doc, "team_score", "report");
    a.final_grade = get_number(doc, "final_grade", "report");
    return a;
}

}  // namespace scrumcard
