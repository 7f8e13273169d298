#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "matchstick/corpus.hpp"
#include "matchstick/geometry.hpp"
#include "test_support.hpp"

using namespace matchstick;

TEST(Distance, Basics) {
    EXPECT_DOUBLE_EQ(distance({0, 0}, {1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(distance({0, 0}, {0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(distance({1, 2}, {4, 6}), distance({4, 6}, {1, 2}));
}

TEST(Distance, CaptionValueFromFigure) {
    // Labels 46 and 16 of the 50-vertex figure, 0-based.
    const Graph g = fixtures::corpus().get_graph("fig_50v_asym");
    EXPECT_NEAR(distance(g.vertex(45), g.vertex(15)), 1.0797549592, 1e-9);
}

TEST(Distance, TriangleInequality) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> c(-100, 100);
    for (int i = 0; i < 10000; ++i) {
        const Point a{c(rng), c(rng)}, b{c(rng), c(rng)}, d{c(rng), c(rng)};
        EXPECT_LE(distance(a, d), distance(a, b) + distance(b, d) + 1e-12);
    }
}

TEST(Orientation, Signs) {
    EXPECT_EQ(orientation({0, 0}, {1, 0}, {0, 1}, 1e-12), 1);
    EXPECT_EQ(orientation({0, 0}, {1, 0}, {2, 0}, 1e-12), 0);
    EXPECT_EQ(orientation({0, 0}, {1, 0}, {0.5, -1}, 1e-12), -1);
}

TEST(Orientation, ScaleInvariant) {
    const double k = 1e6;
    EXPECT_EQ(orientation({0, 0}, {k, 0}, {2 * k, 1e-9 * k}, 1e-6), 0);
    EXPECT_EQ(orientation({0, 0}, {1, 0}, {2, 1e-9}, 1e-6), 0);
}

TEST(ClassifySegments, Examples) {
    auto x = classify_segments({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, 1e-9);
    EXPECT_EQ(x.kind, IntersectionKind::proper_cross);
    EXPECT_EQ(x.clearance, 0.0);

    auto par = classify_segments({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, 1e-9);
    EXPECT_EQ(par.kind, IntersectionKind::disjoint);
    EXPECT_DOUBLE_EQ(par.clearance, 1.0);

    EXPECT_EQ(classify_segments({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}, 1e-9).kind, IntersectionKind::endpoint_touch);
}

TEST(ClassifySegments, TouchKinds) {
    EXPECT_EQ(classify_segments({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}, 1e-9).kind, IntersectionKind::interior_touch);
    EXPECT_EQ(classify_segments({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}, 1e-9).kind,
              IntersectionKind::collinear_overlap);
    EXPECT_EQ(classify_segments({{0, 0}, {1, 0}}, {{0.5, 0}, {0.7, 0}}, 1e-9).kind,
              IntersectionKind::collinear_overlap);
}

TEST(ClassifySegments, DegenerateThrows) {
    EXPECT_THROW(classify_segments({{0, 0}, {0, 0}}, {{0, 1}, {1, 1}}, 1e-9), GeometryError);
}

TEST(ClassifySegments, SymmetricAndClearanceMatchesSampling) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(0, 1);
    int disjoint = 0;
    for (int i = 0; i < 400; ++i) {
        const Segment s1{{c(rng), c(rng)}, {c(rng), c(rng)}}, s2{{c(rng), c(rng)}, {c(rng), c(rng)}};
        const auto a = classify_segments(s1, s2, 1e-9), b = classify_segments(s2, s1, 1e-9);
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.clearance, b.clearance);
        if (a.kind != IntersectionKind::disjoint) {
            EXPECT_EQ(a.clearance, 0.0);
            continue;
        }
        ++disjoint;
        EXPECT_GT(a.clearance, 0.0);
        // Distance between segments is attained at an endpoint of one of them,
        // so sampling one segment densely and projecting onto the other works.
        double best = 1e300;
        const int steps = 20000;
        for (int k = 0; k <= steps; ++k) {
            const double t = static_cast<double>(k) / steps;
            best = std::min(best, point_segment_distance(s1.a + t * (s1.b - s1.a), s2));
            best = std::min(best, point_segment_distance(s2.a + t * (s2.b - s2.a), s1));
        }
        EXPECT_NEAR(a.clearance, best, 1e-6);
    }
    EXPECT_GT(disjoint, 100);
}

TEST(RigidAlign, ExactMotions) {
    const auto tri = fixtures::unit_triangle().vertices();
    const auto rot = fixtures::rotated(fixtures::unit_triangle(), std::numbers::pi / 2).vertices();
    EXPECT_LE(rigid_align(tri, rot).rmsd, 1e-12);

    const auto same = rigid_align(tri, tri);
    EXPECT_LE(same.rmsd, 1e-12);
    EXPECT_NEAR(same.transform.angle, 0.0, 1e-12);
    EXPECT_NEAR(same.transform.translation.x, 0.0, 1e-12);
    EXPECT_NEAR(same.transform.translation.y, 0.0, 1e-12);
    EXPECT_FALSE(same.transform.reflected);
}

TEST(RigidAlign, ScaledTriangleMatchesClosedForm) {
    const auto tri = fixtures::unit_triangle().vertices();
    std::vector<Point> big;
    for (const auto& p : tri) big.push_back(1.1 * p);
    // Centered unit triangle has sum |a_i|^2 = 1; residual is 0.1 a_i.
    EXPECT_NEAR(rigid_align(tri, big).rmsd, 0.1 / std::sqrt(3.0), 1e-12);
}

TEST(RigidAlign, RandomRigidCopies) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> c(-5, 5), ang(-std::numbers::pi, std::numbers::pi);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> a;
        for (int i = 0; i < 20; ++i) a.push_back({c(rng), c(rng)});
        RigidTransform t{ang(rng), {c(rng), c(rng)}, false};
        std::vector<Point> b;
        for (const auto& p : a) b.push_back(t.apply(p));
        EXPECT_LE(rigid_align(a, b).rmsd, 1e-12);

        t.reflected = true;
        std::vector<Point> m;
        for (const auto& p : a) m.push_back(t.apply(p));
        EXPECT_GT(rigid_align(a, m).rmsd, 1e-3);
        const auto refl = rigid_align(a, m, true);
        EXPECT_LE(refl.rmsd, 1e-12);
        EXPECT_TRUE(refl.transform.reflected);
    }
}

TEST(RigidAlign, SizeMismatchThrows) {
    std::vector<Point> a{{0, 0}, {1, 0}}, b{{0, 0}, {1, 0}, {2, 0}};
    EXPECT_THROW(rigid_align(a, b), GeometryError);
}
