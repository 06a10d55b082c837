#pragma once

#include <string>

#include "scrumcard/compliance.hpp"
#include "scrumcard/domain.hpp"

namespace scrumcard {

struct CardLayout {
    int width_px = 1400;
    int height_px = 1000;
};

// Self-contained SVG 1.1 assessment card, two columns of five panels.
// Deterministic: no timestamps, stable element order. Empty panels carry an
// explicit "no data" label.
std::string render_card(const TeamAssessment& assessment, const CohortDataset& dataset,
                        const CardLayout& layout = {});

// Plain-text summary: one line per panel, then doneness, one line per
// member, and the final grade. LF line endings.
std::string render_summary(const TeamAssessment& assessment);

}  // namespace scrumcard
