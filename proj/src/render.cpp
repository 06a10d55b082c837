#include "scrumcard/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "scrumcard/metrics.hpp"

namespace scrumcard {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string f1(double v) { return fmt("%.1f", v); }
std::string f2(double v) { return fmt("%.2f", v); }
std::string pct1(double fraction) { return fmt("%.1f", fraction * 100.0) + "%"; }

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const char* rating_color(RatingLevel level) {
    switch (level) {
        case RatingLevel::excellent:
        case RatingLevel::good: return "#2e7d32";
        case RatingLevel::acceptable:
        case RatingLevel::warning: return "#f9a825";
        case RatingLevel::critical: return "#c62828";
    }
    return "#000000";
}

struct Frame {
    double x, y, w, h;        // panel bounds
    double px, py, pw, ph;    // plot area inside the panel
};

class Svg {
public:
    explicit Svg(const CardLayout& layout) {
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
             << layout.width_px << "\" height=\"" << layout.height_px << "\" viewBox=\"0 0 "
             << layout.width_px << " " << layout.height_px << "\">\n";
        out_ << "<rect x=\"0\" y=\"0\" width=\"" << layout.width_px << "\" height=\""
             << layout.height_px << "\" fill=\"#ffffff\"/>\n";
    }

    void raw(const std::string& s) { out_ << s; }

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& extra = "") {
        out_ << "<rect x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" width=\"" << f2(w)
             << "\" height=\"" << f2(h) << "\" fill=\"" << fill << "\"" << extra << "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.0, const std::string& extra = "") {
        out_ << "<line x1=\"" << f2(x1) << "\" y1=\"" << f2(y1) << "\" x2=\"" << f2(x2)
             << "\" y2=\"" << f2(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
             << f2(width) << "\"" << extra << "/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 12,
              const std::string& fill = "#333333", const std::string& anchor = "start") {
        out_ << "<text x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" font-family=\"sans-serif\""
             << " font-size=\"" << f2(size) << "\" fill=\"" << fill << "\" text-anchor=\""
             << anchor << "\">" << esc(content) << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out_ << " ";
            out_ << f2(pts[i].first) << "," << f2(pts[i].second);
        }
        out_ << "\"/>\n";
    }

    std::string str() {
        return out_.str() + "</svg>\n";
    }

private:
    std::ostringstream out_;
};

Frame panel_frame(const CardLayout& layout, int column, int row) {
    const double margin = 14;
    const double col_w = (layout.width_px - 3 * margin) / 2.0;
    const double row_h = (layout.height_px - 6 * margin) / 5.0;
    Frame f;
    f.x = margin + column * (col_w + margin);
    f.y = margin + row * (row_h + margin);
    f.w = col_w;
    f.h = row_h;
    f.px = f.x + 40;
    f.py = f.y + 30;
    f.pw = f.w - 55;
    f.ph = f.h - 45;
    return f;
}

void panel_chrome(Svg& svg, const Frame& f, const std::string& title, const Rating* rating) {
    svg.rect(f.x, f.y, f.w, f.h, "none", " stroke=\"#999999\" stroke-width=\"1\"");
    svg.text(f.x + 8, f.y + 18, title, 14, "#111111");
    if (rating) {
        std::string label = to_string(rating->level);
        double badge_w = 10.0 * label.size() + 10;
        svg.rect(f.x + f.w - badge_w - 6, f.y + 5, badge_w, 18, rating_color(rating->level),
                 " rx=\"4\" class=\"rating-badge\"");
        svg.text(f.x + f.w - badge_w / 2 - 6, f.y + 18, label, 11, "#ffffff", "middle");
    }
}

void no_data(Svg& svg, const Frame& f) {
    svg.text(f.px + f.pw / 2, f.py + f.ph / 2, "no data", 14, "#888888", "middle");
}

// y scale: value -> pixel, 0 at plot bottom
double yscale(const Frame& f, double v, double vmax) {
    if (vmax <= 0) vmax = 1;
    return f.py + f.ph - (v / vmax) * f.ph;
}

void draw_team_daily(Svg& svg, const Frame& f, const CohortDataset& d, const Rating* rating) {
    panel_chrome(svg, f, "Team daily effort", rating);
    const int sprints = d.config.sprint_count;
    const int days = d.config.sprint_length_days;
    std::vector<DailyEffortSeries> series;
    double vmax = 0;
    for (int s = 1; s <= sprints; ++s) {
        series.push_back(daily_effort(d, s));
        for (double h : series.back().hours_by_day) vmax = std::max(vmax, h);
    }
    if (vmax == 0) {
        no_data(svg, f);
        return;
    }
    vmax *= 1.15;
    const int total = sprints * days;
    auto x_of = [&](int idx) { return f.px + f.pw * idx / std::max(1, total - 1); };
    std::vector<std::pair<double, double>> pts;
    for (int s = 0; s < sprints; ++s)
        for (int day = 0; day < days; ++day)
            pts.push_back({x_of(s * days + day), yscale(f, series[s].hours_by_day[day], vmax)});
    svg.polyline(pts, "#1565c0");
    for (int s = 1; s < sprints; ++s) {
        double x = x_of(s * days) - f.pw / (2.0 * total);
        svg.line(x, f.py, x, f.py + f.ph, "#cccccc", 1.0, " stroke-dasharray=\"4 3\"");
    }
    for (int s = 0; s < sprints; ++s)
        svg.text(x_of(s * days + days / 2), f.py + 12, "r=" + f2(series[s].trend_r), 11, "#555555",
                 "middle");
    svg.line(f.px, f.py + f.ph, f.px + f.pw, f.py + f.ph, "#333333");
    svg.text(f.px - 4, f.py + 4, f1(vmax), 10, "#777777", "end");
}

void draw_boxplots(Svg& svg, const Frame& f, const CohortDataset& d, SizeBasis which,
                   const std::string& title, const Rating* rating) {
    panel_chrome(svg, f, title, rating);
    const int sprints = d.config.sprint_count;
    std::vector<BoxplotStats> stats;
    double vmax = d.config.task_size_cap_hours_per_participant * 1.5;
    bool any = false;
    for (int s = 1; s <= sprints; ++s) {
        stats.push_back(normalized_task_sizes(d, s, which));
        if (stats.back().n > 0) {
            any = true;
            vmax = std::max(vmax, stats.back().max);
            for (double o : stats.back().outliers) vmax = std::max(vmax, o);
        }
    }
    if (!any) {
        no_data(svg, f);
        return;
    }
    vmax *= 1.1;
    const double cap = d.config.task_size_cap_hours_per_participant;
    double cap_y = yscale(f, cap, vmax);
    svg.line(f.px, cap_y, f.px + f.pw, cap_y, "#c62828", 1.0,
             " stroke-dasharray=\"5 3\" class=\"size-cap-line\" data-value=\"" + f2(cap) + "\"");
    svg.text(f.px + f.pw + 2, cap_y + 4, f1(cap) + "h", 10, "#c62828");
    for (int s = 0; s < sprints; ++s) {
        const auto& b = stats[s];
        double cx = f.px + f.pw * (s + 0.5) / sprints;
        if (b.n == 0) {
            svg.text(cx, f.py + f.ph / 2, "-", 12, "#aaaaaa", "middle");
            continue;
        }
        double half = f.pw / (sprints * 4.0);
        double yq1 = yscale(f, b.q1, vmax), yq3 = yscale(f, b.q3, vmax);
        double ymed = yscale(f, b.median, vmax);
        double ywl = yscale(f, b.whisker_low, vmax), ywh = yscale(f, b.whisker_high, vmax);
        svg.line(cx, ywl, cx, yq1, "#333333");
        svg.line(cx, yq3, cx, ywh, "#333333");
        svg.rect(cx - half, yq3, 2 * half, std::max(0.5, yq1 - yq3), "#90caf9",
                 " stroke=\"#333333\"");
        svg.line(cx - half, ymed, cx + half, ymed, "#111111", 1.5);
        for (double o : b.outliers) {
            double oy = yscale(f, o, vmax);
            svg.raw("<circle cx=\"" + f2(cx) + "\" cy=\"" + f2(oy) +
                    "\" r=\"2\" fill=\"none\" stroke=\"#333333\"/>\n");
        }
        svg.text(cx, f.py + f.ph + 12, "S" + std::to_string(s + 1), 10, "#555555", "middle");
    }
}

void draw_sprint_bars(Svg& svg, const Frame& f, const SprintSeries& series, double vmax,
                      const std::string& bar_class, const std::string& label_suffix,
                      bool percent) {
    const int sprints = static_cast<int>(series.per_sprint.size());
    for (int s = 0; s < sprints; ++s) {
        double cx = f.px + f.pw * (s + 0.5) / sprints;
        double bw = f.pw / (sprints * 2.0);
        if (!series.per_sprint[s]) {
            svg.text(cx, f.py + f.ph / 2, "-", 12, "#aaaaaa", "middle");
            continue;
        }
        double v = *series.per_sprint[s];
        double y = yscale(f, v, vmax);
        svg.rect(cx - bw / 2, y, bw, f.py + f.ph - y, "#1565c0",
                 " class=\"" + bar_class + "\" data-value=\"" + f2(v) + "\"");
        svg.text(cx, y - 4, (percent ? pct1(v) : f1(v)) + label_suffix, 10, "#333333", "middle");
        svg.text(cx, f.py + f.ph + 12, "S" + std::to_string(s + 1), 10, "#555555", "middle");
    }
}

void draw_mraee(Svg& svg, const Frame& f, const MetricPanel& panel, const Rating* rating) {
    panel_chrome(svg, f, "Mean absolute relative estimation error", rating);
    if (panel.series.defined().empty()) {
        no_data(svg, f);
        return;
    }
    double vmax = panel.series.overall;
    for (double v : panel.series.defined()) vmax = std::max(vmax, v);
    vmax = std::max(vmax * 1.2, 0.05);
    draw_sprint_bars(svg, f, panel.series, vmax, "mraee-bar", "", true);
    double oy = yscale(f, panel.series.overall, vmax);
    svg.line(f.px, oy, f.px + f.pw, oy, "#ef6c00", 2.0,
             " class=\"mraee-overall-line\" data-value=\"" + f2(panel.series.overall) + "\"");
    svg.text(f.px + f.pw + 2, oy + 4, pct1(panel.series.overall), 10, "#ef6c00");
}

void draw_meetings(Svg& svg, const Frame& f, const CohortDataset& d, MeetingKind kind,
                   const std::string& title, const Rating* rating) {
    panel_chrome(svg, f, title, rating);
    auto stats = meeting_stats(d, kind);
    bool any = false;
    double vmax = 1;
    for (const auto& sp : stats.per_sprint) {
        if (sp.count > 0) any = true;
        if (sp.mean_duration_minutes) vmax = std::max(vmax, *sp.mean_duration_minutes);
    }
    if (!any) {
        no_data(svg, f);
        return;
    }
    vmax *= 1.25;
    const int sprints = static_cast<int>(stats.per_sprint.size());
    for (int s = 0; s < sprints; ++s) {
        const auto& sp = stats.per_sprint[s];
        double cx = f.px + f.pw * (s + 0.5) / sprints;
        double bw = f.pw / (sprints * 2.0);
        if (sp.count == 0) {
            svg.text(cx, f.py + f.ph / 2, "none", 11, "#c62828", "middle");
        } else {
            double v = *sp.mean_duration_minutes;
            double y = yscale(f, v, vmax);
            svg.rect(cx - bw / 2, y, bw, f.py + f.ph - y, "#7b1fa2", " class=\"meeting-bar\"");
            svg.text(cx, y - 4, f1(v) + " min", 10, "#333333", "middle");
            std::string note = "n=" + std::to_string(sp.count);
            if (sp.total_absences > 0)
                note += ", " + std::to_string(sp.total_absences) + " absent";
            svg.text(cx, f.py + f.ph - 6, note, 9, "#eeeeee", "middle");
        }
        svg.text(cx, f.py + f.ph + 12, "S" + std::to_string(s + 1), 10, "#555555", "middle");
    }
}

void draw_team_effort(Svg& svg, const Frame& f, const CohortDataset& d, const MetricPanel& panel,
                      const Rating* rating) {
    panel_chrome(svg, f, "Team sprint effort", rating);
    const double target =
        d.members.size() * d.config.budget_hours_per_person_per_sprint;
    const double tol = d.members.size() * d.config.budget_tolerance_hours;
    double vmax = target + tol;
    for (double v : panel.series.defined()) vmax = std::max(vmax, v);
    vmax *= 1.15;
    double y_hi = yscale(f, target + tol, vmax);
    double y_lo = yscale(f, target - tol, vmax);
    svg.rect(f.px, y_hi, f.pw, y_lo - y_hi, "#c8e6c9",
             " class=\"budget-band\" data-lo=\"" + f2(target - tol) + "\" data-hi=\"" +
                 f2(target + tol) + "\"");
    svg.text(f.px + f.pw + 2, (y_hi + y_lo) / 2 + 4, f1(target) + "h", 10, "#2e7d32");
    draw_sprint_bars(svg, f, panel.series, vmax, "sprint-effort-bar", "h", false);
}

std::string heat_color(double v, double vmax) {
    double t = vmax <= 0 ? 0.0 : std::clamp(v / vmax, 0.0, 1.0);
    int shade = static_cast<int>(std::lround(255.0 - t * 205.0));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", shade, shade, 255 - (255 - shade) / 3);
    return buf;
}

void draw_heatmap(Svg& svg, const Frame& f, const CohortDataset& d, const Rating* rating) {
    panel_chrome(svg, f, "Individual sprint effort", rating);
    auto matrix = member_sprint_effort(d);
    if (matrix.empty()) {
        no_data(svg, f);
        return;
    }
    // fixed scale across sprints: 1.5x the individual budget
    const double vmax = 1.5 * d.config.budget_hours_per_person_per_sprint;
    const int sprints = d.config.sprint_count;
    const std::size_t members = matrix.size();
    double cw = f.pw / sprints;
    double ch = f.ph / members;
    for (std::size_t m = 0; m < members; ++m) {
        for (int s = 0; s < sprints; ++s) {
            double v = matrix[m][s];
            svg.rect(f.px + s * cw, f.py + m * ch, cw - 1, ch - 1, heat_color(v, vmax),
                     " class=\"heat-cell\"");
            svg.text(f.px + s * cw + cw / 2, f.py + m * ch + ch / 2 + 4, f1(v), 10,
                     v > vmax * 0.55 ? "#ffffff" : "#333333", "middle");
        }
        svg.text(f.px - 4, f.py + m * ch + ch / 2 + 4, d.members[m].member_id, 10, "#555555",
                 "end");
    }
    for (int s = 0; s < sprints; ++s)
        svg.text(f.px + s * cw + cw / 2, f.py + f.ph + 12, "S" + std::to_string(s + 1), 10,
                 "#555555", "middle");
}

void draw_individual_daily(Svg& svg, const Frame& f, const CohortDataset& d,
                           const Rating* rating) {
    panel_chrome(svg, f, "Individual daily effort", rating);
    if (d.members.empty()) {
        no_data(svg, f);
        return;
    }
    const int sprints = d.config.sprint_count;
    const int days = d.config.sprint_length_days;
    const int total = sprints * days;
    const double vmax = d.config.daily_outlier_hours;
    double cw = f.pw / total;
    double ch = f.ph / d.members.size();
    for (std::size_t m = 0; m < d.members.size(); ++m) {
        for (int s = 1; s <= sprints; ++s) {
            auto series = member_daily_effort(d, d.members[m].member_id, s);
            for (int day = 0; day < days; ++day) {
                double v = series.hours_by_day[day];
                int idx = (s - 1) * days + day;
                bool outlier = v > d.config.daily_outlier_hours;
                svg.rect(f.px + idx * cw, f.py + m * ch, std::max(0.5, cw - 0.5),
                         std::max(0.5, ch - 1),
                         outlier ? "#c62828" : heat_color(v, vmax), " class=\"daily-cell\"");
            }
        }
        svg.text(f.px - 4, f.py + m * ch + ch / 2 + 4, d.members[m].member_id, 10, "#555555",
                 "end");
    }
    for (int s = 1; s < sprints; ++s)
        svg.line(f.px + s * days * cw, f.py, f.px + s * days * cw, f.py + f.ph, "#666666");
}

void draw_unestimated(Svg& svg, const Frame& f, const MetricPanel& panel, const Rating* rating) {
    panel_chrome(svg, f, "Active tasks without estimation", rating);
    if (panel.series.defined().empty()) {
        no_data(svg, f);
        return;
    }
    double vmax = 0.1;
    for (double v : panel.series.defined()) vmax = std::max(vmax, v * 1.3);
    draw_sprint_bars(svg, f, panel.series, vmax, "unestimated-bar", "", true);
}

}  // namespace

std::string render_card(const TeamAssessment& assessment, const CohortDataset& dataset,
                        const CardLayout& layout) {
    Svg svg(layout);
    svg.text(layout.width_px / 2.0, 11, "Team assessment card - " + assessment.team_id, 13,
             "#111111", "middle");

    auto rating_of = [&](MetricId id) -> const Rating* {
        const MetricPanel* p = assessment.find_panel(id);
        return p ? &p->rating : nullptr;
    };
    auto panel_of = [&](MetricId id) -> const MetricPanel& {
        const MetricPanel* p = assessment.find_panel(id);
        if (!p) throw std::logic_error("assessment missing panel " + to_string(id));
        return *p;
    };

    // left column
    draw_team_daily(svg, panel_frame(layout, 0, 0), dataset, rating_of(MetricId::daily_trend));
    draw_boxplots(svg, panel_frame(layout, 0, 1), dataset, SizeBasis::estimated,
                  "Estimated normalized task size", rating_of(MetricId::task_size));
    draw_boxplots(svg, panel_frame(layout, 0, 2), dataset, SizeBasis::actual,
                  "Actual normalized task size", nullptr);
    draw_mraee(svg, panel_frame(layout, 0, 3), panel_of(MetricId::mraee),
               rating_of(MetricId::mraee));
    draw_meetings(svg, panel_frame(layout, 0, 4), dataset, MeetingKind::scrum, "Tracked meetings",
                  rating_of(MetricId::meetings));

    // right column
    draw_team_effort(svg, panel_frame(layout, 1, 0), dataset, panel_of(MetricId::budget),
                     rating_of(MetricId::budget));
    draw_heatmap(svg, panel_frame(layout, 1, 1), dataset, rating_of(MetricId::balance));
    draw_individual_daily(svg, panel_frame(layout, 1, 2), dataset, nullptr);
    draw_unestimated(svg, panel_frame(layout, 1, 3), panel_of(MetricId::unestimated),
                     rating_of(MetricId::unestimated));
    draw_meetings(svg, panel_frame(layout, 1, 4), dataset, MeetingKind::planning,
                  "Tracked planning meetings", nullptr);

    return svg.str();
}

std::string render_summary(const TeamAssessment& a) {
    std::ostringstream out;
    for (const auto& p : a.panels) {
        out << to_string(p.metric_id) << ":";
        const bool percent = p.metric_id == MetricId::balance || p.metric_id == MetricId::mraee ||
                             p.metric_id == MetricId::unestimated;
        auto show = [&](double v) {
            if (percent) return pct1(v);
            if (p.metric_id == MetricId::daily_trend) return f2(v);
            if (p.metric_id == MetricId::meetings) return std::to_string(static_cast<int>(v));
            return f1(v);
        };
        for (const auto& v : p.series.per_sprint)
            out << " " << (v ? show(*v) : std::string("-"));
        out << " | " << to_string(p.improvement) << " | " << show(p.series.overall) << " — "
            << to_string(p.rating.level) << "\n";
    }
    out << "doneness: " << (a.doneness.overall_ok ? "ok" : "not ok");
    for (const auto& s : a.doneness.per_sprint) {
        std::string bad;
        if (!s.testing_ok) bad += " testing";
        if (!s.demo_ok) bad += " demo";
        if (!s.td_ok) bad += " td";
        if (s.release_applicable && !s.release_ok) bad += " release";
        if (!bad.empty()) out << " [sprint " << s.sprint << ":" << bad << "]";
    }
    out << "\n";
    for (const auto& m : a.member_assessments) {
        out << "member " << m.member_id << ": score " << f2(m.score);
        if (m.flags.empty()) {
            out << ", no flags";
        } else {
            out << ", flags:";
            for (auto fl : m.flags) out << " " << to_string(fl);
        }
        out << "\n";
    }
    out << "final grade: " << f2(a.final_grade) << " (team " << f2(a.team_score) << ")\n";
    return out.str();
}

}  // namespace scrumcard
