#include "mmrefl/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mmrefl::sim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngularSlack = 1e-9;

double distance_to_segment(Point p, const geom::Segment& s) {
    const Point d = s.direction();
    const double t = std::clamp(geom::dot(p - s.a(), d) / geom::dot(d, d), 0.0, 1.0);
    return geom::distance(p, s.a() + d * t);
}

// Angle normalised to [0, 2pi).
double angle_of(Point v) {
    const double a = std::atan2(v.y, v.x);
    return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

VisibilityIndex::VisibilityIndex(std::span<const ObjectSegment> objects, Point observer) : observer_(observer) {
    segments_.reserve(objects.size());
    for (const auto& obj : objects) {
        segments_.push_back(obj.segment());
    }
    const std::size_t n_buckets = std::clamp<std::size_t>(2 * segments_.size(), 64, 1 << 16);
    buckets_.resize(n_buckets);
    const double width = kTwoPi / static_cast<double>(n_buckets);

    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        const Entry entry{distance_to_segment(observer_, s), i};
        const Point va = s.a() - observer_;
        const Point vb = s.b() - observer_;
        const int side = geom::orientation(observer_, s.a(), s.b());
        if (side == 0 && entry.min_distance <= 1e-12 * s.length()) {
            // Observer sits on the segment: every direction is blocked.
            for (auto& bucket : buckets_) bucket.push_back(entry);
            continue;
        }
        // Counter-clockwise sweep from start to stop covers the segment.
        double start = angle_of(side >= 0 ? va : vb);
        double sweep = angle_of(side >= 0 ? vb : va) - start;
        if (sweep < 0.0) sweep += kTwoPi;
        if (side == 0) sweep = 0.0;  // radial segment
        start -= kAngularSlack;
        sweep += 2.0 * kAngularSlack;
        const auto first = static_cast<long long>(std::floor(start / width));
        const auto last = static_cast<long long>(std::floor((start + sweep) / width));
        const auto n = static_cast<long long>(n_buckets);
        for (long long b = first; b <= last; ++b) {
            buckets_[static_cast<std::size_t>(((b % n) + n) % n)].push_back(entry);
        }
    }
    for (auto& bucket : buckets_) {
        std::sort(bucket.begin(), bucket.end(),
                  [](const Entry& x, const Entry& y) { return x.min_distance < y.min_distance; });
    }
}

std::size_t VisibilityIndex::bucket_of(double angle) const {
    const double width = kTwoPi / static_cast<double>(buckets_.size());
    const auto b = static_cast<std::size_t>(angle / width);
    return std::min(b, buckets_.size() - 1);
}

bool VisibilityIndex::visible(Point target, std::optional<std::size_t> exclude) const {
    const Point v = target - observer_;
    const double reach = v.norm();
    if (reach == 0.0) {
        return true;
    }
    const geom::Segment path(observer_, target);
    for (const Entry& e : buckets_[bucket_of(angle_of(v))]) {
        if (e.min_distance > reach) {
            break;
        }
        if (exclude && *exclude == e.index) {
            continue;
        }
        if (geom::segments_intersect(path, segments_[e.index])) {
            return false;
        }
    }
    return true;
}

bool segment_clear(const geom::Segment& path, std::span<const geom::Segment> obstacles,
                   std::optional<std::size_t> exclude) {
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        if (exclude && *exclude == i) {
            continue;
        }
        if (geom::segments_intersect(path, obstacles[i])) {
            return false;
        }
    }
    return true;
}

}  // namespace mmrefl::sim
