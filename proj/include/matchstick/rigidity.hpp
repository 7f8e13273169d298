#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchstick/model.hpp"

namespace matchstick {

class RigidityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Which edges act as bars.  `all_edges` is the drawn graph as a framework
/// (the rigidity rule); `gray_only` lets the forbidden distances float, which
/// is where an Epsilon graph's flex lives.
enum class Framework { all_edges, gray_only };

inline std::string to_string(Framework f) { return f == Framework::all_edges ? "all_edges" : "gray_only"; }

inline Framework framework_from(const std::string& s) {
    if (s == "all_edges") return Framework::all_edges;
    if (s == "gray_only") return Framework::gray_only;
    throw std::invalid_argument("unknown framework '" + s + "' (all_edges|gray_only)");
}

/// |E| x 2n matrix; row (u,v) holds p_u - p_v in u's columns and p_v - p_u
/// in v's.  Column 2i is x_i, 2i+1 is y_i.  Rows follow the sorted edge list,
/// skipping red edges for `gray_only`.
inline Eigen::MatrixXd rigidity_matrix(const Graph& g, Framework framework = Framework::all_edges) {
    const int n = g.vertex_count();
    if (n < 2) throw RigidityError("rigidity matrix needs at least two vertices");
    const int rows = framework == Framework::all_edges ? g.edge_count()
                                                       : g.edge_count() - static_cast<int>(g.red_edges().size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, 2 * n);
    int row = 0;
    for (const auto& e : g.edges()) {
        if (framework == Framework::gray_only && g.is_red(e)) continue;
        const Point d = g.vertex(e.u) - g.vertex(e.v);
        m(row, 2 * e.u) = d.x;
        m(row, 2 * e.u + 1) = d.y;
        m(row, 2 * e.v) = -d.x;
        m(row, 2 * e.v + 1) = -d.y;
        ++row;
    }
    return m;
}

/// Number of singular values above rank_tol * sigma_max.
inline int numeric_rank(const Eigen::MatrixXd& m, double rank_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rank_tol * s(0)) ++r;
    return r;
}

/// The three rigid-motion velocity fields (x-translation, y-translation,
/// rotation about the origin) as columns of a 2n x 3 matrix.
inline Eigen::MatrixXd trivial_motions(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * n, 3);
    for (int i = 0; i < n; ++i) {
        const Point p = g.vertex(i);
        t(2 * i, 0) = 1.0;
        t(2 * i + 1, 1) = 1.0;
        t(2 * i, 2) = -p.y;
        t(2 * i + 1, 2) = p.x;
    }
    return t;
}

struct RigidityReport {
    Framework framework = Framework::all_edges;
    int rank = 0;
    int dof = 0;
    bool infinitesimally_rigid = false;
    /// Orthonormal non-trivial infinitesimal motions, one 2n vector each.
    std::vector<Eigen::VectorXd> flex_basis;
    /// Descending; the gap around index `rank` shows how clear-cut the verdict is.
    std::vector<double> singular_values;
};

namespace detail {

inline void fix_sign(Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

}  // namespace detail

inline RigidityReport analyze_rigidity(const Graph& g, const ToleranceProfile& profile,
                                       Framework framework = Framework::all_edges) {
    const int n = g.vertex_count();
    if (n < 2) throw RigidityError("rigidity analysis needs at least two vertices");
    if (!g.is_connected()) throw RigidityError("graph is disconnected");

    const Eigen::MatrixXd m = rigidity_matrix(g, framework);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();

    RigidityReport r;
    r.framework = framework;
    r.singular_values.assign(s.data(), s.data() + s.size());
    const double smax = s.size() > 0 ? s(0) : 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (smax > 0 && s(i) > profile.rank_tol * smax) ++r.rank;
    r.dof = std::max(0, 2 * n - 3 - r.rank);
    r.infinitesimally_rigid = r.dof == 0;
    if (r.dof == 0) return r;

    // Null space of the rigidity matrix, then strip the rigid motions out of it.
    const Eigen::MatrixXd& v = svd.matrixV();
    const Eigen::MatrixXd null = v.rightCols(2 * n - r.rank);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(trivial_motions(g));
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, 3);
    const Eigen::MatrixXd projected = null - q * (q.transpose() * null);
    Eigen::JacobiSVD<Eigen::MatrixXd> basis(projected, Eigen::ComputeThinU);
    const int keep = std::min<int>(r.dof, static_cast<int>(basis.matrixU().cols()));
    for (int k = 0; k < keep; ++k) {
        Eigen::VectorXd f = basis.matrixU().col(k);
        detail::fix_sign(f);
        r.flex_basis.push_back(std::move(f));
    }
    return r;
}

inline Json to_json(const RigidityReport& r, bool with_basis = true) {
    Json j;
    j["framework"] = to_string(r.framework);
    j["rank"] = r.rank;
    j["dof"] = r.dof;
    j["infinitesimally_rigid"] = r.infinitesimally_rigid;
    j["singular_values"] = r.singular_values;
    if (with_basis) {
        Json basis = Json::array();
        for (const auto& f : r.flex_basis) basis.push_back(std::vector<double>(f.data(), f.data() + f.size()));
        j["flex_basis"] = std::move(basis);
    } else {
        j["flex_basis_size"] = r.flex_basis.size();
    }
    return j;
}

}  // namespace matchstick
