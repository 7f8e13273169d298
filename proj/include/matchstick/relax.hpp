#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchstick/model.hpp"

namespace matchstick {

class RelaxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RelaxMode { all_unit, preserve_red };

inline const char* to_string(RelaxMode m) { return m == RelaxMode::all_unit ? "all_unit" : "preserve_red"; }

inline RelaxMode relax_mode_from(std::string_view s) {
    if (s == "all_unit") return RelaxMode::all_unit;
    if (s == "preserve_red") return RelaxMode::preserve_red;
    throw std::invalid_argument("unknown relax mode '" + std::string(s) + "'");
}

/// Gauge fix: `anchor` is held in place, `direction` may only slide along
/// the line through both.
struct GaugePins {
    int anchor = 0;
    int direction = 1;
};

struct RelaxConfig {
    RelaxMode mode = RelaxMode::all_unit;
    double unit_weight = 1.0;
    std::optional<double> red_weight;  // default: 1 for all_unit, 0 for preserve_red
    int max_iterations = 500;
    double gradient_tol = 1e-12;
    double damping_init = 1e-3;
    GaugePins pinned;
    bool record_trajectory = false;

    double effective_red_weight() const { return red_weight.value_or(mode == RelaxMode::all_unit ? 1.0 : 0.0); }

    void validate(int vertex_count) const {
        if (unit_weight < 0 || effective_red_weight() < 0) throw std::invalid_argument("weights must be non-negative");
        if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
        if (!(gradient_tol >= 0) || !(damping_init > 0)) throw std::invalid_argument("bad solver tolerance");
        if (pinned.anchor == pinned.direction) throw std::invalid_argument("pinned vertices must differ");
        if (pinned.anchor < 0 || pinned.direction < 0 || pinned.anchor >= vertex_count ||
            pinned.direction >= vertex_count)
            throw std::invalid_argument("pinned vertex out of range");
    }
};

struct RelaxResult {
    std::vector<Point> final_vertices;
    std::vector<double> objective_history;
    bool converged = false;
    int iterations = 0;
    double max_unit_residual = 0.0;    // max |length - 1| over gray edges
    std::vector<double> red_residuals;  // length - 1 per red edge, sorted edge order
    std::vector<std::vector<Point>> trajectory;

    double max_red_deviation() const {
        double m = 0.0;
        for (double r : red_residuals) m = std::max(m, std::abs(r));
        return m;
    }
};

/// sqrt(w_e) * (|p_u - p_v| - t_e) per edge, in the graph's edge order.
inline Eigen::VectorXd residuals(const Graph& g, std::span<const double> targets, std::span<const double> weights) {
    const auto& edges = g.edges();
    if (targets.size() != edges.size() || weights.size() != edges.size())
        throw std::invalid_argument("residuals: need one target and one weight per edge");
    Eigen::VectorXd r(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t k = 0; k < edges.size(); ++k)
        r(static_cast<Eigen::Index>(k)) = std::sqrt(weights[k]) * (g.length(edges[k]) - targets[k]);
    return r;
}

/// Analytic derivative of `residuals` with respect to (x_0, y_0, x_1, ...).
inline Eigen::MatrixXd jacobian(const Graph& g, std::span<const double> targets, std::span<const double> weights) {
    const auto& edges = g.edges();
    if (targets.size() != edges.size() || weights.size() != edges.size())
        throw std::invalid_argument("jacobian: need one target and one weight per edge");
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), 2 * g.vertex_count());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const Edge e = edges[k];
        const Point d = g.vertex(e.u) - g.vertex(e.v);
        const double len = norm(d);
        if (len == 0.0) throw RelaxError("zero-length edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        const double s = std::sqrt(weights[k]) / len;
        const auto row = static_cast<Eigen::Index>(k);
        j(row, 2 * e.u) = s * d.x;
        j(row, 2 * e.u + 1) = s * d.y;
        j(row, 2 * e.v) = -s * d.x;
        j(row, 2 * e.v + 1) = -s * d.y;
    }
    return j;
}

namespace detail {

inline std::vector<Point> unpack(const Eigen::VectorXd& x) {
    std::vector<Point> pts(static_cast<std::size_t>(x.size() / 2));
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = {x(static_cast<Eigen::Index>(2 * i)), x(static_cast<Eigen::Index>(2 * i + 1))};
    return pts;
}

inline Eigen::VectorXd pack(const std::vector<Point>& pts) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(2 * pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        x(static_cast<Eigen::Index>(2 * i)) = pts[i].x;
        x(static_cast<Eigen::Index>(2 * i + 1)) = pts[i].y;
    }
    return x;
}

// Maps the 2n - 3 free parameters to a coordinate displacement.
inline Eigen::MatrixXd gauge_basis(const std::vector<Point>& pts, GaugePins pins) {
    const auto n = static_cast<Eigen::Index>(pts.size());
    const Point d = pts[static_cast<std::size_t>(pins.direction)] - pts[static_cast<std::size_t>(pins.anchor)];
    const double len = norm(d);
    if (len == 0.0) throw RelaxError("pinned vertices coincide");
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * n, 2 * n - 3);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == pins.anchor) continue;
        if (i == pins.direction) {
            p(2 * i, col) = d.x / len;
            p(2 * i + 1, col) = d.y / len;
            ++col;
            continue;
        }
        p(2 * i, col++) = 1.0;
        p(2 * i + 1, col++) = 1.0;
    }
    return p;
}

inline RelaxResult finish(const Graph& g, RelaxResult r) {
    const Graph out = g.with_vertices(r.final_vertices);
    r.max_unit_residual = 0.0;
    r.red_residuals.clear();
    for (const auto& el : edge_lengths(out)) {
        if (el.red)
            r.red_residuals.push_back(el.deviation);
        else
            r.max_unit_residual = std::max(r.max_unit_residual, std::abs(el.deviation));
    }
    return r;
}

}  // namespace detail

/// Levenberg-Marquardt on the weighted length residuals, starting from the
/// drawing's coordinates.  Targets and weights are per edge.
inline RelaxResult solve_lengths(const Graph& g, std::span<const double> targets, std::span<const double> weights,
                                 const RelaxConfig& cfg) {
    cfg.validate(g.vertex_count());
    RelaxResult out;
    Eigen::VectorXd x = detail::pack(g.vertices());
    const Eigen::MatrixXd basis = detail::gauge_basis(g.vertices(), cfg.pinned);

    auto objective_at = [&](const Eigen::VectorXd& at, Eigen::VectorXd& r) {
        r = residuals(g.with_vertices(detail::unpack(at)), targets, weights);
        return 0.5 * r.squaredNorm();
    };

    Eigen::VectorXd r;
    double f = objective_at(x, r);
    if (!std::isfinite(f)) throw RelaxError("objective is not finite");
    out.objective_history.push_back(f);
    if (cfg.record_trajectory) out.trajectory.push_back(g.vertices());

    double lambda = cfg.damping_init;
    if (f == 0.0) out.converged = true;
    while (!out.converged && out.iterations < cfg.max_iterations) {
        ++out.iterations;
        const Graph at = g.with_vertices(detail::unpack(x));
        const Eigen::MatrixXd j = jacobian(at, targets, weights) * basis;
        const Eigen::VectorXd grad = j.transpose() * r;
        if (grad.lpNorm<Eigen::Infinity>() <= cfg.gradient_tol) {
            out.converged = true;
            break;
        }
        Eigen::MatrixXd a = j.transpose() * j;
        a.diagonal().array() += lambda;
        const Eigen::VectorXd step = a.ldlt().solve(-grad);
        const Eigen::VectorXd candidate = x + basis * step;
        Eigen::VectorXd rc;
        const double fc = objective_at(candidate, rc);
        if (!std::isfinite(fc)) throw RelaxError("objective became non-finite");
        if (fc < f) {
            const double rel = (f - fc) / f;
            x = candidate;
            r = std::move(rc);
            f = fc;
            lambda = std::max(lambda / 10.0, 1e-300);
            out.objective_history.push_back(f);
            if (cfg.record_trajectory) out.trajectory.push_back(detail::unpack(x));
            if (f == 0.0 || rel < 1e-15) out.converged = true;
        } else {
            lambda *= 10.0;
            // Step no longer representable against the coordinates: stationary
            // to working precision.
            if (step.norm() <= 1e-16 * (x.norm() + 1.0)) out.converged = true;
        }
    }
    out.final_vertices = detail::unpack(x);
    return detail::finish(g, std::move(out));
}

/// Drives every edge toward unit length (red edges included in all_unit
/// mode, left free in preserve_red mode unless red_weight says otherwise).
inline RelaxResult relax(const Graph& g, const RelaxConfig& cfg = {}) {
    std::vector<double> targets(g.edges().size(), 1.0);
    std::vector<double> weights;
    weights.reserve(g.edges().size());
    for (const auto& e : g.edges()) weights.push_back(g.is_red(e) ? cfg.effective_red_weight() : cfg.unit_weight);
    return solve_lengths(g, targets, weights, cfg);
}

struct FlexContinuationConfig {
    double shrink_factor = 0.5;
    double target_red_deviation = 1e-2;
    double unit_residual_cap = 1e-8;
    int max_stages = 60;
    /// Gray-to-red weight ratio of each stage's penalty solve.
    double gray_weight_ratio = 1e6;

    void validate() const {
        if (!(shrink_factor > 0 && shrink_factor < 1)) throw std::invalid_argument("shrink_factor must lie in (0,1)");
        if (!(target_red_deviation > 0) || !(unit_residual_cap > 0))
            throw std::invalid_argument("continuation caps must be positive");
        if (max_stages < 1) throw std::invalid_argument("max_stages must be at least 1");
    }
};

/// Pulls the red lengths geometrically toward 1 while holding gray edges at
/// unit length.  Each stage is a penalty solve (gray edges weighted
/// `gray_weight_ratio` times the red ones) followed, when the penalty leaves
/// gray residuals above the cap, by a gray-only solve that returns to the
/// constraint set.  A stage is kept only if gray residuals end within the
/// cap and the largest red deviation went down; the first failure stops the
/// run.  An empty result means no stage could make progress.
inline std::vector<RelaxResult> flex_continuation(const Graph& g, const FlexContinuationConfig& cfg = {},
                                                  const RelaxConfig& solver = {}) {
    cfg.validate();
    if (g.red_edges().empty()) throw std::invalid_argument("flex continuation needs at least one red edge");
    // A stage that improves the red deviation by less than this is a stall.
    constexpr double kMinProgress = 1e-12;

    std::vector<RelaxResult> stages;
    Graph current = g;
    double deviation = 0.0;
    for (const auto& e : g.red_edges()) deviation = std::max(deviation, std::abs(g.length(e) - 1.0));

    const std::size_t m = g.edges().size();
    std::vector<double> weights(m), gray_only(m), targets(m, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        const bool red = g.is_red(g.edges()[k]);
        weights[k] = red ? 1.0 : cfg.gray_weight_ratio;
        gray_only[k] = red ? 0.0 : 1.0;
    }

    RelaxConfig sc = solver;
    sc.mode = RelaxMode::all_unit;
    while (static_cast<int>(stages.size()) < cfg.max_stages && deviation > cfg.target_red_deviation) {
        for (std::size_t k = 0; k < m; ++k) {
            const Edge e = g.edges()[k];
            targets[k] = g.is_red(e) ? 1.0 + cfg.shrink_factor * (current.length(e) - 1.0) : 1.0;
        }
        RelaxResult stage = solve_lengths(current, targets, weights, sc);
        if (stage.max_unit_residual > cfg.unit_residual_cap) {
            RelaxResult restored = solve_lengths(current.with_vertices(stage.final_vertices), targets, gray_only, sc);
            restored.objective_history.insert(restored.objective_history.begin(), stage.objective_history.begin(),
                                              stage.objective_history.end());
            restored.iterations += stage.iterations;
            if (sc.record_trajectory)
                restored.trajectory.insert(restored.trajectory.begin(), stage.trajectory.begin(), stage.trajectory.end());
            stage = std::move(restored);
        }
        const double next = stage.max_red_deviation();
        if (stage.max_unit_residual > cfg.unit_residual_cap || !(next < deviation - kMinProgress)) break;
        deviation = next;
        current = current.with_vertices(stage.final_vertices);
        stages.push_back(std::move(stage));
    }
    return stages;
}

// ---------------------------------------------------------------------------
// JSON

inline Json vertices_to_json(const std::vector<Point>& pts) {
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(Json::array({format_double(p.x), format_double(p.y)}));
    return arr;
}

inline Json to_json(const RelaxResult& r) {
    Json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["max_unit_residual"] = r.max_unit_residual;
    j["red_residuals"] = r.red_residuals;
    j["objective_history"] = r.objective_history;
    j["final_vertices"] = vertices_to_json(r.final_vertices);
    if (!r.trajectory.empty()) {
        Json frames = Json::array();
        for (const auto& f : r.trajectory) frames.push_back(vertices_to_json(f));
        j["trajectory"] = std::move(frames);
    }
    return j;
}

}  // namespace matchstick
