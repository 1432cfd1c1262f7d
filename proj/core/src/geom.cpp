#include "mmrefl/geom.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmrefl::geom {

Segment::Segment(Point a, Point b) : a_(a), b_(b) {
    if (!a.finite() || !b.finite()) {
        throw std::invalid_argument("Segment: endpoints must be finite");
    }
    if (a == b) {
        throw std::invalid_argument("Segment: endpoints must be distinct");
    }
}

int orientation(Point a, Point b, Point c) {
    const Point u = b - a;
    const Point v = c - a;
    const double scale = u.norm() * v.norm();
    if (scale == 0.0) {
        return 0;
    }
    const double s = cross(u, v) / scale;
    if (s > kOrientationTolerance) return 1;
    if (s < -kOrientationTolerance) return -1;
    return 0;
}

namespace {

// p is known to be collinear with s; check it lies within s's extent.
bool within_extent(Point p, const Segment& s) {
    const Point a = s.a();
    const Point b = s.b();
    const double tol = kOrientationTolerance * s.length();
    return p.x >= std::min(a.x, b.x) - tol && p.x <= std::max(a.x, b.x) + tol &&
           p.y >= std::min(a.y, b.y) - tol && p.y <= std::max(a.y, b.y) + tol;
}

}  // namespace

bool segments_intersect(const Segment& s1, const Segment& s2) {
    const int o1 = orientation(s1.a(), s1.b(), s2.a());
    const int o2 = orientation(s1.a(), s1.b(), s2.b());
    const int o3 = orientation(s2.a(), s2.b(), s1.a());
    const int o4 = orientation(s2.a(), s2.b(), s1.b());

    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return true;
    }
    if (o1 == 0 && within_extent(s2.a(), s1)) return true;
    if (o2 == 0 && within_extent(s2.b(), s1)) return true;
    if (o3 == 0 && within_extent(s1.a(), s2)) return true;
    if (o4 == 0 && within_extent(s1.b(), s2)) return true;
    return false;
}

Point mirror_point(Point p, const Segment& line) {
    const Point d = line.direction();
    const double t = dot(p - line.a(), d) / dot(d, d);
    const Point foot = line.a() + d * t;
    return foot * 2.0 - p;
}

std::optional<Point> specular_point(Point source, Point receiver, const Segment& mirror) {
    const int side_src = orientation(mirror.a(), mirror.b(), source);
    const int side_rcv = orientation(mirror.a(), mirror.b(), receiver);
    if (side_src == 0 || side_rcv == 0 || side_src != side_rcv) {
        return std::nullopt;
    }

    const Point image = mirror_point(source, mirror);
    const Point ray = image - receiver;
    const Point edge = mirror.direction();
    const double denom = cross(ray, edge);
    if (std::abs(denom) <= kOrientationTolerance * ray.norm() * edge.norm()) {
        return std::nullopt;
    }
    const Point w = mirror.a() - receiver;
    const double u = cross(w, ray) / denom;  // position along the mirror
    if (!(u > kOrientationTolerance && u < 1.0 - kOrientationTolerance)) {
        return std::nullopt;
    }
    return mirror.a() + edge * u;
}

std::optional<double> reflected_path_length(Point source, Point receiver, const Segment& mirror) {
    const auto q = specular_point(source, receiver, mirror);
    if (!q) {
        return std::nullopt;
    }
    return distance(source, *q) + distance(*q, receiver);
}

}  // namespace mmrefl::geom
