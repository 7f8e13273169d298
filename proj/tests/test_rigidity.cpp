#include <gtest/gtest.h>

#include <random>

#include "matchstick/rigidity.hpp"
#include "test_support.hpp"

using namespace matchstick;

namespace {

void expect_basis_is_proper(const Graph& g, const RigidityReport& r, Framework f) {
    ASSERT_EQ(static_cast<int>(r.flex_basis.size()), r.dof);
    const Eigen::MatrixXd m = rigidity_matrix(g, f);
    const Eigen::MatrixXd t = trivial_motions(g);
    const double scale = m.norm();
    for (std::size_t i = 0; i < r.flex_basis.size(); ++i) {
        const auto& v = r.flex_basis[i];
        EXPECT_NEAR(v.norm(), 1.0, 1e-10);
        EXPECT_LE((m * v).norm(), 1e-8 * scale);
        for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(t.col(k).dot(v)), 1e-8 * t.col(k).norm());
        for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(v.dot(r.flex_basis[j]), 0.0, 1e-10);
        // Sign convention: first component of noticeable size is positive.
        for (Eigen::Index c = 0; c < v.size(); ++c)
            if (std::abs(v(c)) > 1e-12) {
                EXPECT_GT(v(c), 0.0);
                break;
            }
    }
}

}  // namespace

TEST(RigidityMatrix, Shape) {
    const Eigen::MatrixXd m = rigidity_matrix(fixtures::unit_square());
    EXPECT_EQ(m.rows(), 4);
    EXPECT_EQ(m.cols(), 8);
    EXPECT_EQ(numeric_rank(m, 1e-8), 4);
}

TEST(RigidityMatrix, GrayOnlyDropsRedRows) {
    const Graph g = fixtures::corpus().get_graph("eps_27_left");
    EXPECT_EQ(rigidity_matrix(g).rows(), 54);
    EXPECT_EQ(rigidity_matrix(g, Framework::gray_only).rows(), 48);
}

TEST(RigidityMatrix, TrivialMotionsInNullSpace) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = fixtures::random_graph(rng, 5 + trial % 10);
        const Eigen::MatrixXd m = rigidity_matrix(g);
        const Eigen::MatrixXd t = trivial_motions(g);
        for (int k = 0; k < 3; ++k) EXPECT_LE((m * t.col(k)).norm(), 1e-10 * m.norm() * t.col(k).norm());
    }
    for (const auto& e : fixtures::corpus().entries()) {
        const Eigen::MatrixXd m = rigidity_matrix(e.graph);
        const Eigen::MatrixXd t = trivial_motions(e.graph);
        for (int k = 0; k < 3; ++k) EXPECT_LE((m * t.col(k)).norm(), 1e-10 * m.norm() * t.col(k).norm()) << e.id;
    }
}

TEST(AnalyzeRigidity, Triangle) {
    const auto r = analyze_rigidity(fixtures::unit_triangle(), {});
    EXPECT_EQ(r.rank, 3);
    EXPECT_EQ(r.dof, 0);
    EXPECT_TRUE(r.infinitesimally_rigid);
    EXPECT_TRUE(r.flex_basis.empty());
}

TEST(AnalyzeRigidity, SquareFlexes) {
    const Graph g = fixtures::unit_square();
    const auto r = analyze_rigidity(g, {});
    EXPECT_EQ(r.dof, 1);
    EXPECT_FALSE(r.infinitesimally_rigid);
    expect_basis_is_proper(g, r, Framework::all_edges);
}

TEST(AnalyzeRigidity, HexagonWheelIsRigid) {
    EXPECT_EQ(analyze_rigidity(fixtures::hexagon_wheel(), {}).dof, 0);
}

TEST(AnalyzeRigidity, Harborth) {
    const Graph g = fixtures::corpus().get_graph("harborth_52");
    const auto r = analyze_rigidity(g, {});
    EXPECT_EQ(r.dof, 0);
    EXPECT_EQ(r.rank, 101);
    // Frozen from the SVD oracle: clear gap at the rank boundary.
    EXPECT_NEAR(r.singular_values[100], 0.0123246195723, 1e-9);
    EXPECT_EQ(analyze_rigidity(g, {}, Framework::gray_only).dof, 0);
}

TEST(AnalyzeRigidity, EpsilonGraphFlexesOnceRedEdgesFloat) {
    const Graph g = fixtures::corpus().get_graph("eps_27_left");
    // With the six red edges as bars the drawing is infinitesimally rigid.
    const auto bars = analyze_rigidity(g, {});
    EXPECT_EQ(bars.dof, 0);
    EXPECT_NEAR(bars.singular_values[50], 0.252377523408, 1e-9);

    const auto gray = analyze_rigidity(g, {}, Framework::gray_only);
    EXPECT_EQ(gray.dof, 3);
    EXPECT_EQ(gray.rank, 48);
    expect_basis_is_proper(g, gray, Framework::gray_only);

    EXPECT_EQ(analyze_rigidity(fixtures::corpus().get_graph("eps_42"), {}, Framework::gray_only).dof, 1);
}

TEST(AnalyzeRigidity, GalleryIsRigidAsDrawn) {
    for (const auto& e : fixtures::corpus().entries())
        if (e.gallery) {
            EXPECT_TRUE(analyze_rigidity(e.graph, {}).infinitesimally_rigid) << e.id;
        }
}

TEST(AnalyzeRigidity, RandomGraphBases) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = fixtures::random_graph(rng, 6 + trial % 8);
        const auto r = analyze_rigidity(g, {});
        EXPECT_EQ(r.dof, std::max(0, 2 * g.vertex_count() - 3 - r.rank));
        expect_basis_is_proper(g, r, Framework::all_edges);
    }
}

TEST(AnalyzeRigidity, Errors) {
    EXPECT_THROW(analyze_rigidity(Graph({{0, 0}}, {}), {}), RigidityError);
    const Graph split({{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}});
    EXPECT_THROW(analyze_rigidity(split, {}), RigidityError);
}

TEST(AnalyzeRigidity, Json) {
    const Json j = to_json(analyze_rigidity(fixtures::unit_square(), {}));
    EXPECT_EQ(j.at("framework"), "all_edges");
    EXPECT_EQ(j.at("dof"), 1);
    EXPECT_EQ(j.at("flex_basis").size(), 1u);
    EXPECT_EQ(j.at("flex_basis")[0].size(), 8u);
}
