#pragma once
/**
 * @file geom.hpp
 * @brief Exact 2-D geometry for line-of-sight and first-order specular paths.
 *
 * Everything here is a pure function on double-precision coordinates.
 * Orientation tests use the sine of the angle between the two edge vectors,
 * so the zero band (|sin| < kOrientationTolerance) is scale independent.
 */

#include <cmath>
#include <optional>

namespace mmrefl::geom {

/// Sine threshold below which three points are treated as collinear.
inline constexpr double kOrientationTolerance = 1e-12;

struct Point {
    double x{0.0};
    double y{0.0};

    constexpr Point() = default;
    constexpr Point(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point&) const = default;

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
    [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Point operator*(double s, Point p) { return p * s; }
constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double distance(Point a, Point b) { return (a - b).norm(); }

/// Closed straight segment with distinct, finite endpoints.
class Segment {
public:
    /// @throws std::invalid_argument if an endpoint is not finite or a == b.
    Segment(Point a, Point b);

    [[nodiscard]] Point a() const { return a_; }
    [[nodiscard]] Point b() const { return b_; }
    [[nodiscard]] Point direction() const { return b_ - a_; }
    [[nodiscard]] double length() const { return direction().norm(); }
    [[nodiscard]] Point midpoint() const { return (a_ + b_) * 0.5; }

private:
    Point a_;
    Point b_;
};

/// -1, 0 or +1: side of c relative to the directed line a->b.
int orientation(Point a, Point b, Point c);

/// True iff the closed segments share at least one point (touching and
/// collinear overlap included).
bool segments_intersect(const Segment& s1, const Segment& s2);

/// Reflection of p across the infinite supporting line of `line`.
Point mirror_point(Point p, const Segment& line);

/**
 * Point q strictly inside `mirror` where a ray from `source` reflects
 * specularly to `receiver`. Absent when the two points are not strictly on
 * the same side of the supporting line, or when the receiver's sight line
 * towards the mirrored source misses the segment interior.
 */
std::optional<Point> specular_point(Point source, Point receiver, const Segment& mirror);

/// |source - q| + |q - receiver| for the specular point q, if it exists.
std::optional<double> reflected_path_length(Point source, Point receiver, const Segment& mirror);

}  // namespace mmrefl::geom
