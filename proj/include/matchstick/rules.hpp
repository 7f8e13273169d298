#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "matchstick/analysis.hpp"
#include "matchstick/model.hpp"
#include "matchstick/rigidity.hpp"

namespace matchstick {

/// Outcome of the four construction rules for near-matchstick candidates:
/// rigid, no forbidden distance in the frame, at most three forbidden
/// distances, each within the deviation cap.
struct RuleReport {
    bool rule1_rigid = false;
    bool rule2_frame_clean = false;
    int red_count = 0;
    bool rule3_red_count = false;
    double max_red_deviation = 0.0;
    bool rule4_deviation_cap = false;
    std::vector<std::string> notes;

    bool all_pass() const { return rule1_rigid && rule2_frame_clean && rule3_red_count && rule4_deviation_cap; }
};

inline RuleReport check_construction_rules(const Graph& g, const RigidityReport& rig, const FrameReport& frame,
                                           const ToleranceProfile& profile) {
    RuleReport r;
    r.rule1_rigid = rig.infinitesimally_rigid;
    if (!r.rule1_rigid) r.notes.push_back("infinitesimally flexible: " + std::to_string(rig.dof) + " dof");

    r.rule2_frame_clean = frame.red_in_frame.empty();
    for (const auto& e : frame.red_in_frame)
        r.notes.push_back("red edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") in a frame triangle");

    r.red_count = static_cast<int>(g.red_edges().size());
    r.rule3_red_count = r.red_count <= 3;
    if (!r.rule3_red_count) r.notes.push_back(std::to_string(r.red_count) + " forbidden distances");

    for (const auto& e : g.red_edges()) r.max_red_deviation = std::max(r.max_red_deviation, std::abs(g.length(e) - 1.0));
    r.rule4_deviation_cap = r.max_red_deviation <= profile.rule_deviation_cap;
    if (!r.rule4_deviation_cap) r.notes.push_back("red deviation exceeds cap");
    return r;
}

inline Json to_json(const RuleReport& r) {
    Json j;
    j["rule1_rigid"] = r.rule1_rigid;
    j["rule2_frame_clean"] = r.rule2_frame_clean;
    j["rule3_red_count"] = Json{{"count", r.red_count}, {"ok", r.rule3_red_count}};
    j["rule4_deviation_cap"] = Json{{"max_red_deviation", r.max_red_deviation}, {"ok", r.rule4_deviation_cap}};
    j["notes"] = r.notes;
    return j;
}

}  // namespace matchstick
