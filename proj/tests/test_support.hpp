#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "matchstick/corpus.hpp"
#include "matchstick/model.hpp"

namespace matchstick::fixtures {

inline Graph unit_triangle() {
    return Graph({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Graph unit_square() { return Graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

/// Two unit triangles sharing the short diagonal; the long diagonal (length
/// sqrt 3) is red.  Rigid with or without the red edge.
inline Graph braced_rhombus() {
    const double h = std::sqrt(3.0) / 2;
    return Graph({{0, 0}, {0.5, -h}, {1, 0}, {0.5, h}}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}, {1, 3}}, {{1, 3}});
}

/// Regular hexagon around a hub: six unit triangles.
inline Graph hexagon_wheel() {
    std::vector<Point> pts{{0, 0}};
    std::vector<Edge> edges;
    for (int k = 0; k < 6; ++k) {
        const double a = k * std::numbers::pi / 3;
        pts.push_back({std::cos(a), std::sin(a)});
        edges.push_back({0, k + 1});
        edges.push_back({k + 1, (k + 1) % 6 + 1});
    }
    return Graph(std::move(pts), std::move(edges));
}

/// Connected graph on n random points: a random spanning tree plus extra
/// chords.  Coordinates in [0, 3)^2; no geometric guarantees.
inline Graph random_graph(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> coord(0.0, 3.0);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    std::set<Edge> edges;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        edges.insert(Edge::of(pick(rng), i));
    }
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int extra = 0; extra < n; ++extra) {
        const int a = any(rng), b = any(rng);
        if (a != b) edges.insert(Edge::of(a, b));
    }
    return Graph(std::move(pts), {edges.begin(), edges.end()});
}

inline Graph rotated(const Graph& g, double angle, Point shift = {}) {
    std::vector<Point> pts;
    const double c = std::cos(angle), s = std::sin(angle);
    for (const auto& p : g.vertices()) pts.push_back({c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y});
    return g.with_vertices(std::move(pts));
}

inline const Corpus& corpus() {
    static const Corpus c = Corpus::load();
    return c;
}

}  // namespace matchstick::fixtures
