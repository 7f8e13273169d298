#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matchstick {

/// A point in the plane, in units of matchstick length.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point, Point) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }

struct Segment {
    Point a;
    Point b;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// Sign of (b-a) x (c-a).  Zero when |cross| <= tol * s, s being the largest
/// coordinate magnitude squared, so the predicate is scale invariant.
inline int orientation(Point a, Point b, Point c, double tol) {
    const double c2 = cross(b - a, c - a);
    const double m = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y),
                               std::abs(c.x), std::abs(c.y)});
    if (std::abs(c2) <= tol * m * m) return 0;
    return c2 > 0 ? 1 : -1;
}

inline double point_segment_distance(Point p, const Segment& s) {
    const Point d = s.b - s.a;
    const double len2 = dot(d, d);
    if (len2 == 0.0) return distance(p, s.a);
    const double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return distance(p, s.a + t * d);
}

enum class IntersectionKind { disjoint, proper_cross, endpoint_touch, interior_touch, collinear_overlap };

inline const char* to_string(IntersectionKind k) {
    switch (k) {
        case IntersectionKind::disjoint: return "disjoint";
        case IntersectionKind::proper_cross: return "proper_cross";
        case IntersectionKind::endpoint_touch: return "endpoint_touch";
        case IntersectionKind::interior_touch: return "interior_touch";
        case IntersectionKind::collinear_overlap: return "collinear_overlap";
    }
    return "unknown";
}

struct IntersectionClass {
    IntersectionKind kind = IntersectionKind::disjoint;
    double clearance = 0.0;  // 0 unless disjoint
};

namespace detail {

inline int raw_sign(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

// Length of the common part of two collinear segments, measured along s1.
inline double collinear_overlap_length(const Segment& s1, const Segment& s2) {
    const Point d = s1.b - s1.a;
    const double len = norm(d);
    const Point u = (1.0 / len) * d;
    const double t0 = dot(s2.a - s1.a, u);
    const double t1 = dot(s2.b - s1.a, u);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(len, std::max(t0, t1));
    return hi - lo;
}

}  // namespace detail

/// Classifies how two segments meet.  Anything closer than `tol` counts as
/// touching; the kind of touch is then decided by which features are close.
/// Throws GeometryError if either segment is shorter than `tol`.
inline IntersectionClass classify_segments(const Segment& s1, const Segment& s2, double tol) {
    if (distance(s1.a, s1.b) <= tol || distance(s2.a, s2.b) <= tol)
        throw GeometryError("degenerate segment");

    const double gap = std::min({point_segment_distance(s1.a, s2), point_segment_distance(s1.b, s2),
                                 point_segment_distance(s2.a, s1), point_segment_distance(s2.b, s1)});

    if (gap < tol) {
        const bool collinear = orientation(s1.a, s1.b, s2.a, tol) == 0 &&
                               orientation(s1.a, s1.b, s2.b, tol) == 0 &&
                               orientation(s2.a, s2.b, s1.a, tol) == 0 &&
                               orientation(s2.a, s2.b, s1.b, tol) == 0;
        if (collinear && detail::collinear_overlap_length(s1, s2) >= tol)
            return {IntersectionKind::collinear_overlap, 0.0};
        const double ends = std::min({distance(s1.a, s2.a), distance(s1.a, s2.b),
                                      distance(s1.b, s2.a), distance(s1.b, s2.b)});
        if (ends < tol) return {IntersectionKind::endpoint_touch, 0.0};
        return {IntersectionKind::interior_touch, 0.0};
    }

    const int o1 = detail::raw_sign(s1.a, s1.b, s2.a);
    const int o2 = detail::raw_sign(s1.a, s1.b, s2.b);
    const int o3 = detail::raw_sign(s2.a, s2.b, s1.a);
    const int o4 = detail::raw_sign(s2.a, s2.b, s1.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return {IntersectionKind::proper_cross, 0.0};
    return {IntersectionKind::disjoint, gap};
}

/// Rigid motion x -> R x + t, where R is a rotation by `angle`, preceded by
/// the reflection (x, y) -> (x, -y) when `reflected` is set.
struct RigidTransform {
    double angle = 0.0;
    Point translation{};
    bool reflected = false;

    Point apply(Point p) const {
        if (reflected) p.y = -p.y;
        const double c = std::cos(angle), s = std::sin(angle);
        return Point{c * p.x - s * p.y, s * p.x + c * p.y} + translation;
    }
};

struct Alignment {
    RigidTransform transform;
    double rmsd = 0.0;
};

namespace detail {

inline Point centroid(std::span<const Point> pts) {
    Point c{};
    for (const auto& p : pts) c = c + p;
    return (1.0 / static_cast<double>(pts.size())) * c;
}

inline Alignment align_rotation(std::span<const Point> from, std::span<const Point> to, bool reflect) {
    const Point ca = centroid(from), cb = centroid(to);
    double sd = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        Point a = from[i] - ca;
        if (reflect) a.y = -a.y;
        const Point b = to[i] - cb;
        sd += dot(a, b);
        sc += cross(a, b);
    }
    RigidTransform t;
    t.reflected = reflect;
    t.angle = std::atan2(sc, sd);
    t.translation = Point{};
    t.translation = cb - t.apply(ca);
    double ss = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const Point r = t.apply(from[i]) - to[i];
        ss += dot(r, r);
    }
    return {t, std::sqrt(ss / static_cast<double>(from.size()))};
}

}  // namespace detail

/// Least-squares rigid transform mapping `from` onto `to` (orthogonal
/// Procrustes in 2D), correspondence by index.
inline Alignment rigid_align(std::span<const Point> from, std::span<const Point> to, bool allow_reflection = false) {
    if (from.size() != to.size()) throw GeometryError("rigid_align: point sets differ in size");
    if (from.size() < 2) throw GeometryError("rigid_align: need at least two points");
    Alignment best = detail::align_rotation(from, to, false);
    if (allow_reflection) {
        Alignment mirrored = detail::align_rotation(from, to, true);
        if (mirrored.rmsd < best.rmsd) best = mirrored;
    }
    return best;
}

}  // namespace matchstick
