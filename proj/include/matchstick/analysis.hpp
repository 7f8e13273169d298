#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchstick/geometry.hpp"
#include "matchstick/model.hpp"
#include "matchstick/verifier.hpp"

namespace matchstick {

/// Raised when an analysis precondition does not hold for the drawing.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vertices of the unbounded face in counter-clockwise order, starting at
/// the lexicographically smallest (x, then y) vertex.
inline std::vector<int> outer_boundary(const Graph& g, const ToleranceProfile& profile) {
    const int n = g.vertex_count();
    if (n == 0) throw PreconditionError("empty graph");
    if (!g.is_connected()) throw PreconditionError("outer boundary needs a connected drawing");
    if (!check_crossings(g, profile).violations.empty()) throw PreconditionError("drawing has crossing edges");
    if (n == 1) return {0};

    const auto adj = g.adjacency();
    int start = 0;
    for (int i = 1; i < n; ++i) {
        const Point p = g.vertex(i), s = g.vertex(start);
        if (p.x < s.x || (p.x == s.x && p.y < s.y)) start = i;
    }

    // Rightmost turn: first neighbour counter-clockwise from the direction
    // we arrived from.  The exterior stays on the right.
    auto next_vertex = [&](int from_dir_vertex, Point back, int at) {
        const Point p = g.vertex(at);
        const double base = std::atan2(back.y, back.x);
        int best = -1;
        double best_angle = 0.0;
        for (int w : adj[static_cast<std::size_t>(at)]) {
            if (w == from_dir_vertex && adj[static_cast<std::size_t>(at)].size() > 1) continue;
            const Point d = g.vertex(w) - p;
            double a = std::atan2(d.y, d.x) - base;
            while (a <= 0) a += 2 * std::numbers::pi;
            while (a > 2 * std::numbers::pi) a -= 2 * std::numbers::pi;
            if (best < 0 || a < best_angle) {
                best = w;
                best_angle = a;
            }
        }
        return best;
    };

    std::vector<int> cycle{start};
    const int first = next_vertex(-1, Point{-1.0, 0.0}, start);
    int prev = start, cur = first;
    const std::size_t limit = 2 * g.edges().size() + 2;
    for (;;) {
        const int nxt = next_vertex(prev, g.vertex(prev) - g.vertex(cur), cur);
        if (cur == start && nxt == first) break;
        cycle.push_back(cur);
        prev = cur;
        cur = nxt;
        if (cycle.size() > limit) throw PreconditionError("outer face walk did not close");
    }
    return cycle;
}

struct FrameReport {
    std::vector<int> outer_cycle;
    std::vector<std::array<int, 3>> frame_triangles;
    std::vector<Edge> red_in_frame;
};

/// Triangles whose sides are equal within 10 * unit_tol and which touch the
/// outer boundary, plus any red edges that end up inside them.
inline FrameReport frame_triangles(const Graph& g, const ToleranceProfile& profile) {
    FrameReport r;
    r.outer_cycle = outer_boundary(g, profile);
    std::vector<char> outer(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : r.outer_cycle) outer[static_cast<std::size_t>(v)] = 1;

    const auto adj = g.adjacency();
    const double tol = 10.0 * profile.unit_tol;
    for (const auto& e : g.edges()) {
        const auto& a = adj[static_cast<std::size_t>(e.u)];
        const auto& b = adj[static_cast<std::size_t>(e.v)];
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        for (int w : common) {
            if (w <= e.v) continue;  // report each triangle once, as u < v < w
            const std::array<Edge, 3> sides{e, Edge::of(e.u, w), Edge::of(e.v, w)};
            double lo = g.length(sides[0]), hi = lo;
            for (const auto& s : sides) {
                lo = std::min(lo, g.length(s));
                hi = std::max(hi, g.length(s));
            }
            if (hi - lo > tol) continue;
            if (!outer[static_cast<std::size_t>(e.u)] && !outer[static_cast<std::size_t>(e.v)] &&
                !outer[static_cast<std::size_t>(w)])
                continue;
            r.frame_triangles.push_back({e.u, e.v, w});
            for (const auto& s : sides)
                if (g.is_red(s) && std::find(r.red_in_frame.begin(), r.red_in_frame.end(), s) == r.red_in_frame.end())
                    r.red_in_frame.push_back(s);
        }
    }
    std::sort(r.red_in_frame.begin(), r.red_in_frame.end());
    return r;
}

// ---------------------------------------------------------------------------
// Symmetry

enum class SymmetryKind { rotation, mirror };

struct SymmetryTransform {
    SymmetryKind kind = SymmetryKind::rotation;
    Point center;
    int order = 1;         // rotations: rotation by 2*pi/order
    double angle = 0.0;    // rotations: 2*pi/order; mirrors: axis direction in [0, pi)
};

struct SymmetryReport {
    std::string label = "asymmetric";  // asymmetric | mirror | point | rotational(k)
    int rotation_order = 1;
    bool has_mirror = false;
    std::vector<SymmetryTransform> transforms;
    std::vector<std::vector<int>> vertex_permutations;
};

namespace detail {

// Vertex permutation induced by `map`, or nullopt if some image has no
// partner within tol or the induced map is not a bijection preserving edges.
template <class Map>
std::optional<std::vector<int>> induced_permutation(const Graph& g, Map map, double tol) {
    const int n = g.vertex_count();
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const Point img = map(g.vertex(i));
        int hit = -1;
        double best = tol;
        for (int j = 0; j < n; ++j) {
            const double d = distance(img, g.vertex(j));
            if (d <= best) {
                best = d;
                hit = j;
            }
        }
        if (hit < 0 || used[static_cast<std::size_t>(hit)]) return std::nullopt;
        used[static_cast<std::size_t>(hit)] = 1;
        perm[static_cast<std::size_t>(i)] = hit;
    }
    for (const auto& e : g.edges())
        if (!g.has_edge(Edge::of(perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)])))
            return std::nullopt;
    return perm;
}

inline Point rotate_about(Point p, Point c, double angle) {
    const double cs = std::cos(angle), sn = std::sin(angle);
    const Point d = p - c;
    return c + Point{cs * d.x - sn * d.y, sn * d.x + cs * d.y};
}

inline Point reflect_about(Point p, Point c, double axis_angle) {
    const Point u{std::cos(axis_angle), std::sin(axis_angle)};
    const Point d = p - c;
    return c + (2.0 * dot(d, u)) * u - d;
}

}  // namespace detail

/// Rotations about the vertex centroid of order 2..12 and mirror axes
/// through it, matched vertex-to-vertex within symmetry_tol.
inline SymmetryReport detect_symmetry(const Graph& g, const ToleranceProfile& profile) {
    SymmetryReport r;
    const int n = g.vertex_count();
    if (n < 3) throw PreconditionError("symmetry detection needs at least three vertices");
    const Point c = detail::centroid(g.vertices());
    const double tol = profile.symmetry_tol;

    for (int k = 12; k >= 2; --k) {
        const double angle = 2 * std::numbers::pi / k;
        auto perm = detail::induced_permutation(g, [&](Point p) { return detail::rotate_about(p, c, angle); }, tol);
        if (perm) {
            r.rotation_order = k;
            r.transforms.push_back({SymmetryKind::rotation, c, k, angle});
            r.vertex_permutations.push_back(std::move(*perm));
            break;
        }
    }

    // Mirror axes: one per vertex pair that the mirror could swap.
    std::vector<double> tried;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Point pi = g.vertex(i), pj = g.vertex(j);
            if (std::abs(distance(pi, c) - distance(pj, c)) > tol) continue;
            const Point d = pj - pi;
            const double len = norm(d);
            if (len <= tol) continue;
            const Point u = (1.0 / len) * d;
            if (std::abs(dot(0.5 * (pi + pj) - c, u)) > tol) continue;
            double axis = std::atan2(u.y, u.x) + std::numbers::pi / 2;
            axis = std::fmod(axis, std::numbers::pi);
            if (axis < 0) axis += std::numbers::pi;
            const bool seen = std::any_of(tried.begin(), tried.end(), [&](double t) {
                const double diff = std::abs(t - axis);
                return diff < 1e-9 || std::abs(diff - std::numbers::pi) < 1e-9;
            });
            if (seen) continue;
            tried.push_back(axis);
            auto perm = detail::induced_permutation(g, [&](Point p) { return detail::reflect_about(p, c, axis); }, tol);
            if (perm) {
                r.has_mirror = true;
                r.transforms.push_back({SymmetryKind::mirror, c, 1, axis});
                r.vertex_permutations.push_back(std::move(*perm));
            }
        }
    }

    if (r.rotation_order >= 3)
        r.label = "rotational(" + std::to_string(r.rotation_order) + ")";
    else if (r.rotation_order == 2)
        r.label = r.has_mirror ? "rotational(2)" : "point";
    else if (r.has_mirror)
        r.label = "mirror";
    else
        r.label = "asymmetric";
    return r;
}

// ---------------------------------------------------------------------------
// JSON

inline Json to_json(const FrameReport& r) {
    Json j;
    j["outer_cycle"] = r.outer_cycle;
    Json tris = Json::array();
    for (const auto& t : r.frame_triangles) tris.push_back(Json::array({t[0], t[1], t[2]}));
    j["frame_triangles"] = std::move(tris);
    Json red = Json::array();
    for (const auto& e : r.red_in_frame) red.push_back(to_json(e));
    j["red_in_frame"] = std::move(red);
    return j;
}

inline Json to_json(const SymmetryReport& r) {
    Json j;
    j["label"] = r.label;
    j["rotation_order"] = r.rotation_order;
    j["has_mirror"] = r.has_mirror;
    Json ts = Json::array();
    for (std::size_t k = 0; k < r.transforms.size(); ++k) {
        const auto& t = r.transforms[k];
        Json tj;
        tj["type"] = t.kind == SymmetryKind::rotation ? "rotation" : "mirror";
        tj["center"] = Json::array({t.center.x, t.center.y});
        if (t.kind == SymmetryKind::rotation) tj["order"] = t.order;
        tj["angle"] = t.angle;
        tj["permutation"] = r.vertex_permutations[k];
        ts.push_back(std::move(tj));
    }
    j["transforms"] = std::move(ts);
    return j;
}

}  // namespace matchstick
