#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "matchstick/geometry.hpp"

namespace matchstick {

using Json = nlohmann::ordered_json;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    static constexpr Edge of(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    constexpr bool touches(int w) const { return u == w || v == w; }
    constexpr bool shares_endpoint(Edge o) const { return touches(o.u) || touches(o.v); }
    friend constexpr auto operator<=>(Edge, Edge) = default;
};

/// A length printed next to a figure, kept verbatim.
struct ClaimedLength {
    Edge edge;
    std::string length;
    friend bool operator==(const ClaimedLength&, const ClaimedLength&) = default;
};

enum class GraphErrorKind {
    malformed,
    index_out_of_range,
    self_loop,
    duplicate_edge,
    red_not_an_edge,
    claim_not_red,
    non_finite_coordinate,
};

inline const char* to_string(GraphErrorKind k) {
    switch (k) {
        case GraphErrorKind::malformed: return "malformed";
        case GraphErrorKind::index_out_of_range: return "index_out_of_range";
        case GraphErrorKind::self_loop: return "self_loop";
        case GraphErrorKind::duplicate_edge: return "duplicate_edge";
        case GraphErrorKind::red_not_an_edge: return "red_not_an_edge";
        case GraphErrorKind::claim_not_red: return "claim_not_red";
        case GraphErrorKind::non_finite_coordinate: return "non_finite_coordinate";
    }
    return "unknown";
}

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    GraphErrorKind kind() const noexcept { return kind_; }

private:
    GraphErrorKind kind_;
};

struct GraphMeta {
    std::string id;
    std::string caption;
    std::optional<std::string> symmetry;
    std::vector<ClaimedLength> claimed;
    /// Original 1-based vertex labels, only when they are not simply 1..n.
    std::vector<int> labels;
    friend bool operator==(const GraphMeta&, const GraphMeta&) = default;
};

/// Straight-line drawing of a graph.  Immutable once constructed; the
/// constructor canonicalizes edges and rejects anything inconsistent.
class Graph {
public:
    Graph() = default;

    Graph(std::vector<Point> vertices, std::vector<Edge> edges, std::vector<Edge> red_edges = {},
          GraphMeta meta = {})
        : vertices_(std::move(vertices)), edges_(std::move(edges)), red_(std::move(red_edges)),
          meta_(std::move(meta)) {
        const int n = static_cast<int>(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y))
                throw GraphError(GraphErrorKind::non_finite_coordinate, "vertex " + std::to_string(i));
        auto canon = [n](std::vector<Edge>& list, const char* what) {
            for (auto& e : list) {
                if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
                    throw GraphError(GraphErrorKind::index_out_of_range,
                                     std::string(what) + " (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
                if (e.u == e.v)
                    throw GraphError(GraphErrorKind::self_loop, std::string(what) + " at " + std::to_string(e.u));
                e = Edge::of(e.u, e.v);
            }
            std::sort(list.begin(), list.end());
            auto dup = std::adjacent_find(list.begin(), list.end());
            if (dup != list.end())
                throw GraphError(GraphErrorKind::duplicate_edge,
                                 std::string(what) + " (" + std::to_string(dup->u) + "," + std::to_string(dup->v) + ")");
        };
        canon(edges_, "edge");
        canon(red_, "red edge");
        for (const auto& e : red_)
            if (!has_edge(e))
                throw GraphError(GraphErrorKind::red_not_an_edge,
                                 "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        for (auto& c : meta_.claimed) {
            c.edge = Edge::of(c.edge.u, c.edge.v);
            if (!is_red(c.edge))
                throw GraphError(GraphErrorKind::claim_not_red,
                                 "(" + std::to_string(c.edge.u) + "," + std::to_string(c.edge.v) + ")");
        }
    }

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Point>& vertices() const { return vertices_; }
    Point vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Edge>& red_edges() const { return red_; }
    const GraphMeta& meta() const { return meta_; }

    bool has_edge(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), Edge::of(e.u, e.v)); }
    bool is_red(Edge e) const { return std::binary_search(red_.begin(), red_.end(), Edge::of(e.u, e.v)); }
    Segment segment(Edge e) const { return {vertex(e.u), vertex(e.v)}; }
    double length(Edge e) const { return distance(vertex(e.u), vertex(e.v)); }

    /// Same combinatorics and metadata, new coordinates.
    Graph with_vertices(std::vector<Point> vertices) const {
        if (vertices.size() != vertices_.size())
            throw GraphError(GraphErrorKind::malformed, "with_vertices: vertex count changed");
        return Graph(std::move(vertices), edges_, red_, meta_);
    }

    /// Same drawing with a different forbidden-distance set.  Claims on edges
    /// that are no longer red are dropped.
    Graph with_red_edges(std::vector<Edge> red) const {
        GraphMeta meta = meta_;
        for (auto& e : red) e = Edge::of(e.u, e.v);
        std::erase_if(meta.claimed, [&](const ClaimedLength& c) {
            return std::find(red.begin(), red.end(), c.edge) == red.end();
        });
        return Graph(vertices_, edges_, std::move(red), std::move(meta));
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(vertices_.size());
        for (const auto& e : edges_) {
            adj[static_cast<std::size_t>(e.u)].push_back(e.v);
            adj[static_cast<std::size_t>(e.v)].push_back(e.u);
        }
        for (auto& a : adj) std::sort(a.begin(), a.end());
        return adj;
    }

    bool is_connected() const {
        if (vertices_.empty()) return true;
        const auto adj = adjacency();
        std::vector<char> seen(vertices_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == vertices_.size();
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<Edge> red_;
    GraphMeta meta_;
};

/// Every numeric threshold used by the checks, in one place.
struct ToleranceProfile {
    double unit_tol = 1e-6;
    double coincidence_tol = 1e-6;
    double rank_tol = 1e-8;
    double symmetry_tol = 1e-6;
    double rule_deviation_cap = 0.10;

    void validate() const {
        if (!(unit_tol > 0) || !(coincidence_tol > 0) || !(rank_tol > 0) || !(symmetry_tol > 0))
            throw std::invalid_argument("tolerances must be positive");
        if (!(rule_deviation_cap > 0 && rule_deviation_cap < 1))
            throw std::invalid_argument("rule_deviation_cap must lie in (0,1)");
    }
};

inline std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& e : g.edges()) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    return deg;
}

struct EdgeLength {
    Edge edge;
    double length = 0.0;
    double deviation = 0.0;  // length - 1
    bool red = false;
};

inline std::vector<EdgeLength> edge_lengths(const Graph& g) {
    std::vector<EdgeLength> out;
    out.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        const double len = g.length(e);
        out.push_back({e, len, len - 1.0, g.is_red(e)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graph file format

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline double parse_decimal(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw GraphError(GraphErrorKind::malformed, "bad decimal '" + std::string(s) + "'");
    return v;
}

namespace detail {

inline double coordinate(const Json& j) {
    if (j.is_string()) return parse_decimal(j.get_ref<const std::string&>());
    if (j.is_number()) return j.get<double>();
    throw GraphError(GraphErrorKind::malformed, "coordinate must be a decimal string or number");
}

inline Edge edge_from(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw GraphError(GraphErrorKind::malformed, "edge must be [u, v]");
    return {j[0].get<int>(), j[1].get<int>()};
}

inline std::vector<Edge> edges_from(const Json& doc, const char* key) {
    std::vector<Edge> out;
    if (!doc.contains(key)) return out;
    const Json& arr = doc.at(key);
    if (!arr.is_array()) throw GraphError(GraphErrorKind::malformed, std::string(key) + " must be an array");
    for (const auto& e : arr) out.push_back(edge_from(e));
    return out;
}

inline std::string string_or_empty(const Json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) return {};
    if (!doc.at(key).is_string()) throw GraphError(GraphErrorKind::malformed, std::string(key) + " must be a string");
    return doc.at(key).get<std::string>();
}

}  // namespace detail

inline Graph graph_from_json(const Json& doc) {
    if (!doc.is_object()) throw GraphError(GraphErrorKind::malformed, "graph document must be an object");
    if (!doc.contains("vertices") || !doc.at("vertices").is_array())
        throw GraphError(GraphErrorKind::malformed, "missing vertices array");
    std::vector<Point> vertices;
    for (const auto& v : doc.at("vertices")) {
        if (!v.is_array() || v.size() != 2) throw GraphError(GraphErrorKind::malformed, "vertex must be [x, y]");
        vertices.push_back({detail::coordinate(v[0]), detail::coordinate(v[1])});
    }
    GraphMeta meta;
    meta.id = detail::string_or_empty(doc, "id");
    meta.caption = detail::string_or_empty(doc, "caption");
    if (doc.contains("symmetry") && !doc.at("symmetry").is_null()) meta.symmetry = detail::string_or_empty(doc, "symmetry");
    if (doc.contains("claimed_deviations")) {
        const Json& arr = doc.at("claimed_deviations");
        if (!arr.is_array()) throw GraphError(GraphErrorKind::malformed, "claimed_deviations must be an array");
        for (const auto& c : arr) {
            if (!c.is_object() || !c.contains("edge") || !c.contains("length"))
                throw GraphError(GraphErrorKind::malformed, "claim needs edge and length");
            const Json& len = c.at("length");
            std::string text = len.is_string() ? len.get<std::string>() : len.is_number() ? format_double(len.get<double>()) : "";
            if (text.empty()) throw GraphError(GraphErrorKind::malformed, "claim length must be a decimal");
            parse_decimal(text);
            meta.claimed.push_back({detail::edge_from(c.at("edge")), std::move(text)});
        }
    }
    if (doc.contains("labels")) {
        const Json& arr = doc.at("labels");
        if (!arr.is_array() || arr.size() != vertices.size())
            throw GraphError(GraphErrorKind::malformed, "labels must list one label per vertex");
        for (const auto& l : arr) {
            if (!l.is_number_integer()) throw GraphError(GraphErrorKind::malformed, "label must be an integer");
            meta.labels.push_back(l.get<int>());
        }
    }
    return Graph(std::move(vertices), detail::edges_from(doc, "edges"), detail::edges_from(doc, "red_edges"),
                 std::move(meta));
}

inline Graph parse_graph(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw GraphError(GraphErrorKind::malformed, e.what());
    }
    return graph_from_json(doc);
}

inline Json to_json(Edge e) { return Json::array({e.u, e.v}); }

inline Json graph_to_json(const Graph& g) {
    Json doc;
    doc["id"] = g.meta().id;
    doc["caption"] = g.meta().caption;
    doc["symmetry"] = g.meta().symmetry ? Json(*g.meta().symmetry) : Json(nullptr);
    Json verts = Json::array();
    for (const auto& p : g.vertices()) verts.push_back(Json::array({format_double(p.x), format_double(p.y)}));
    doc["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back(to_json(e));
    doc["edges"] = std::move(edges);
    Json red = Json::array();
    for (const auto& e : g.red_edges()) red.push_back(to_json(e));
    doc["red_edges"] = std::move(red);
    Json claims = Json::array();
    for (const auto& c : g.meta().claimed) claims.push_back(Json{{"edge", to_json(c.edge)}, {"length", c.length}});
    doc["claimed_deviations"] = std::move(claims);
    if (!g.meta().labels.empty()) doc["labels"] = g.meta().labels;
    return doc;
}

inline std::string serialize_graph(const Graph& g) { return graph_to_json(g).dump(1) + "\n"; }

}  // namespace matchstick
