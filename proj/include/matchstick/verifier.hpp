#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "matchstick/geometry.hpp"
#include "matchstick/model.hpp"

namespace matchstick {

struct RegularityResult {
    bool ok = true;
    std::vector<int> offending;
};

inline RegularityResult check_regular(const Graph& g, int k) {
    RegularityResult r;
    const auto deg = degree_sequence(g);
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] != k) r.offending.push_back(static_cast<int>(i));
    r.ok = r.offending.empty();
    return r;
}

struct Crossing {
    Edge first;
    Edge second;
    IntersectionClass how;
};

struct CrossingCheck {
    std::vector<Crossing> violations;
    /// Smallest clearance over all non-adjacent edge pairs (+inf if none).
    double min_clearance = std::numeric_limits<double>::infinity();
};

/// Pairwise scan of all edge pairs without a common endpoint.  Endpoint
/// touches are left to check_coincidence, which reports the two vertices.
inline CrossingCheck check_crossings(const Graph& g, const ToleranceProfile& profile) {
    CrossingCheck out;
    const auto& edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (edges[i].shares_endpoint(edges[j])) continue;
            const auto c = classify_segments(g.segment(edges[i]), g.segment(edges[j]), profile.coincidence_tol);
            out.min_clearance = std::min(out.min_clearance, c.clearance);
            if (c.kind != IntersectionKind::disjoint && c.kind != IntersectionKind::endpoint_touch)
                out.violations.push_back({edges[i], edges[j], c});
        }
    }
    return out;
}

struct VertexCoincidence {
    int a = 0;
    int b = 0;
    double distance = 0.0;
};

struct VertexEdgeCoincidence {
    int vertex = 0;
    Edge edge;
    double distance = 0.0;
};

struct CoincidenceCheck {
    std::vector<VertexCoincidence> vertex_pairs;
    std::vector<VertexEdgeCoincidence> vertex_edge;
    bool empty() const { return vertex_pairs.empty() && vertex_edge.empty(); }
};

inline CoincidenceCheck check_coincidence(const Graph& g, const ToleranceProfile& profile) {
    CoincidenceCheck out;
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d = distance(g.vertex(i), g.vertex(j));
            if (d < profile.coincidence_tol) out.vertex_pairs.push_back({i, j, d});
        }
    for (const auto& e : g.edges())
        for (int w = 0; w < n; ++w) {
            if (e.touches(w)) continue;
            const double d = point_segment_distance(g.vertex(w), g.segment(e));
            if (d < profile.coincidence_tol) out.vertex_edge.push_back({w, e, d});
        }
    return out;
}

struct RedDeviation {
    Edge edge;
    double deviation = 0.0;
};

struct VerificationReport {
    RegularityResult degrees;
    double max_unit_deviation = 0.0;  // over non-red edges
    std::vector<RedDeviation> red_deviations;
    std::vector<Crossing> crossings;
    CoincidenceCheck coincidences;
    double min_clearance = std::numeric_limits<double>::infinity();
    bool is_matchstick = false;
    bool is_near_matchstick = false;
};

inline VerificationReport verify(const Graph& g, const ToleranceProfile& profile) {
    VerificationReport r;
    r.degrees = check_regular(g, 4);
    for (const auto& el : edge_lengths(g)) {
        if (el.red)
            r.red_deviations.push_back({el.edge, el.deviation});
        else
            r.max_unit_deviation = std::max(r.max_unit_deviation, std::abs(el.deviation));
    }
    auto cross = check_crossings(g, profile);
    r.crossings = std::move(cross.violations);
    r.min_clearance = cross.min_clearance;
    r.coincidences = check_coincidence(g, profile);
    r.is_near_matchstick = r.degrees.ok && r.max_unit_deviation <= profile.unit_tol && r.crossings.empty() &&
                           r.coincidences.empty();
    r.is_matchstick = r.is_near_matchstick && g.red_edges().empty();
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {
inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace detail

inline Json to_json(const IntersectionClass& c) {
    return Json{{"kind", to_string(c.kind)}, {"clearance", c.clearance}};
}

inline Json to_json(const VerificationReport& r) {
    Json j;
    j["degrees_ok"] = r.degrees.ok;
    j["offending_vertices"] = r.degrees.offending;
    j["max_unit_deviation"] = r.max_unit_deviation;
    Json red = Json::array();
    for (const auto& d : r.red_deviations) red.push_back(Json{{"edge", to_json(d.edge)}, {"deviation", d.deviation}});
    j["red_deviations"] = std::move(red);
    Json cr = Json::array();
    for (const auto& c : r.crossings)
        cr.push_back(Json{{"edges", Json::array({to_json(c.first), to_json(c.second)})}, {"class", to_json(c.how)}});
    j["crossings"] = std::move(cr);
    Json vv = Json::array();
    for (const auto& c : r.coincidences.vertex_pairs)
        vv.push_back(Json{{"vertices", Json::array({c.a, c.b})}, {"distance", c.distance}});
    Json ve = Json::array();
    for (const auto& c : r.coincidences.vertex_edge)
        ve.push_back(Json{{"vertex", c.vertex}, {"edge", to_json(c.edge)}, {"distance", c.distance}});
    j["coincidences"] = Json{{"vertex_vertex", std::move(vv)}, {"vertex_edge", std::move(ve)}};
    j["min_clearance"] = detail::finite_or_null(r.min_clearance);
    j["is_matchstick"] = r.is_matchstick;
    j["is_near_matchstick"] = r.is_near_matchstick;
    return j;
}

}  // namespace matchstick
