#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "opplod/error.hpp"

namespace opplod {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::sqrt(dot(p, p)); }

inline double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// An image motion: origin, orientation in [0, 2pi), magnitude in px/frame.
struct MotionVector {
    Point2 origin;
    double direction = 0.0;
    double magnitude = 0.0;

    MotionVector() = default;

    MotionVector(Point2 o, double theta, double mag)
        : origin(o), direction(wrap_angle(theta)), magnitude(mag) {
        if (mag < 0.0) raise(ErrorCode::InvalidInput, "motion vector magnitude must be >= 0");
    }

    Point2 unit() const { return {std::cos(direction), std::sin(direction)}; }
    Point2 tip() const { return origin + magnitude * unit(); }
};

struct VectorPair {
    MotionVector v1;
    MotionVector v2;
    double theta_t = kPi / 6.0; // angle tolerance, default 30 degrees

    VectorPair() = default;

    VectorPair(MotionVector a, MotionVector b, double tolerance = kPi / 6.0)
        : v1(a), v2(b), theta_t(tolerance) {
        if (!(tolerance > 0.0 && tolerance < kPi / 2.0))
            raise(ErrorCode::InvalidParam, "angle tolerance must lie in (0, pi/2)");
    }
};

// Signed interval on the bisector axis; oriented start -> end.
struct AxisInterval {
    double start = 0.0;
    double end = 0.0;

    double lo() const { return std::min(start, end); }
    double hi() const { return std::max(start, end); }
    double length() const { return std::abs(end - start); }
};

struct RmoGeometry {
    Point2 center;      // M_e, the axis origin
    Point2 axis_dir;    // unit direction of the bisector line l_e
    AxisInterval proj1; // projection of v1, positive-going
    AxisInterval proj2; // projection of v2, negative-going
    double symmetric_length = 0.0;
};

struct RmoResult {
    bool qualifies = false;
    double rmo = 0.0;
    std::optional<RmoGeometry> geometry;
};

// Minimal wrapped distance of (theta1 - theta2) from pi. Zero for exactly
// antiparallel orientations. remainder() keeps the reduction exact.
inline double antiparallel_deviation(double theta1, double theta2) {
    return std::abs(std::remainder(theta1 - theta2 - kPi, kTwoPi));
}

// ROM criterion: the orientation difference must fall strictly inside
// (pi - theta_T, pi + theta_T). An optional reference point restricts the
// match to outward pairs (both vectors pointing away from it).
inline bool qualifies_as_rom(const VectorPair& pair,
                             std::optional<Point2> outward_reference = std::nullopt) {
    if (pair.v1.magnitude <= 0.0 || pair.v2.magnitude <= 0.0)
        raise(ErrorCode::InvalidInput, "ROM criterion needs nonzero magnitudes");
    if (antiparallel_deviation(pair.v1.direction, pair.v2.direction) >= pair.theta_t)
        return false;
    if (outward_reference) {
        const Point2 ref = *outward_reference;
        if (dot(pair.v1.origin - ref, pair.v1.unit()) <= 0.0) return false;
        if (dot(pair.v2.origin - ref, pair.v2.unit()) <= 0.0) return false;
    }
    return true;
}

// Construction of the projection axis and the two signed intervals.
// The axis is the equal-angle bisector of the rays u1 and -u2, which for a
// qualifying pair is exactly the line onto which the two vectors project
// with opposite signs. Strictly antiparallel pairs (parallel extended lines)
// degenerate to the direction of v1 through the origin midpoint.
inline RmoGeometry bisector_projection(const VectorPair& pair) {
    const Point2 o1 = pair.v1.origin;
    const Point2 o2 = pair.v2.origin;
    const Point2 u1 = pair.v1.unit();
    const Point2 u2 = pair.v2.unit();

    const Point2 axis = u1 - u2;
    const double axis_len = norm(axis);
    const Point2 axis_dir = axis_len > 0.0 ? (1.0 / axis_len) * axis : u1;

    // Both vectors project at the same angle onto the bisector, so the two
    // projection cosines are one quantity: |u_i . axis_dir| = sqrt((1-d)/2)
    // with d = u1.u2. Sharing the expression keeps perfectly symmetric pairs
    // exactly symmetric in floating point.
    const double d = std::clamp(dot(u1, u2), -1.0, 1.0);
    const double proj_cos = std::sqrt(0.5 * (1.0 - d));

    // Axis origin M_e: the midpoint of the two origins projected onto the
    // line, which makes the projected start points symmetric by
    // construction. Signed coordinates need only differences, so the line
    // anchor cancels out of them.
    const double s1_start = 0.5 * dot(o1 - o2, axis_dir);
    const double s2_start = 0.5 * dot(o2 - o1, axis_dir);

    RmoGeometry g;
    g.axis_dir = axis_dir;

    // M_e for reporting: the foot of the midpoint M on l_e, where l_e runs
    // through the intersection of the extended vector lines when they cross
    // and through M itself otherwise.
    const Point2 m = 0.5 * (o1 + o2);
    const double denom = cross(u1, u2);
    if (std::abs(denom) > 1e-12) {
        const double s = cross(o2 - o1, u2) / denom;
        const Point2 intersection = o1 + s * u1;
        g.center = intersection + dot(m - intersection, axis_dir) * axis_dir;
    } else {
        g.center = m;
    }

    g.proj1 = {s1_start, s1_start + pair.v1.magnitude * proj_cos};
    g.proj2 = {s2_start, s2_start - pair.v2.magnitude * proj_cos};
    return g;
}

// Overlap between proj1 and the reflection of proj2 about the axis origin,
// counted once per vector: 2 * |proj1 ∩ reflect(proj2)|.
inline double symmetric_length(const AxisInterval& proj1, const AxisInterval& proj2) {
    if (proj1.end < proj1.start)
        raise(ErrorCode::InvalidInput, "proj1 must be oriented toward the positive half-axis");
    if (proj2.end > proj2.start)
        raise(ErrorCode::InvalidInput, "proj2 must be oriented toward the negative half-axis");
    const AxisInterval reflected{-proj2.start, -proj2.end};
    const double lo = std::max(proj1.lo(), reflected.lo());
    const double hi = std::min(proj1.hi(), reflected.hi());
    return 2.0 * std::max(0.0, hi - lo);
}

// Radial motion opponency of a vector pair: symmetric projected length over
// total projected magnitude, in [0,1]. Orientation-agnostic; zero-magnitude
// and non-qualifying pairs report qualifies=false with rmo = 0.
inline RmoResult rmo(const VectorPair& pair) {
    RmoResult res;
    if (pair.v1.magnitude <= 0.0 || pair.v2.magnitude <= 0.0) return res;
    if (!qualifies_as_rom(pair)) return res;

    res.qualifies = true;
    RmoGeometry g = bisector_projection(pair);
    g.symmetric_length = symmetric_length(g.proj1, g.proj2);
    const double total = g.proj1.length() + g.proj2.length();
    res.rmo = total > 0.0 ? std::clamp(g.symmetric_length / total, 0.0, 1.0) : 0.0;
    res.geometry = g;
    return res;
}

} // namespace opplod
