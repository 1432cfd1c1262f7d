#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mmrefl/geom.hpp"
#include "mmrefl/network.hpp"

namespace mmrefl::sim {

/**
 * Line-of-sight queries from a fixed observer against a set of segments.
 *
 * Segments are bucketed by the angular interval they subtend at the
 * observer, and each bucket is sorted by the segment's distance to the
 * observer, so a query only runs exact intersection tests against segments
 * that can lie between the observer and the target.
 */
class VisibilityIndex {
public:
    VisibilityIndex(std::span<const ObjectSegment> objects, Point observer = {0.0, 0.0});

    /// True iff the segment observer-target crosses none of the objects,
    /// ignoring `exclude` (an index into the object list) when given.
    [[nodiscard]] bool visible(Point target, std::optional<std::size_t> exclude = std::nullopt) const;

    [[nodiscard]] std::size_t bucket_count() const { return buckets_.size(); }

private:
    struct Entry {
        double min_distance;
        std::size_t index;
    };

    [[nodiscard]] std::size_t bucket_of(double angle) const;

    Point observer_;
    std::vector<geom::Segment> segments_;
    std::vector<std::vector<Entry>> buckets_;
};

/// Brute-force counterpart of VisibilityIndex::visible.
bool segment_clear(const geom::Segment& path, std::span<const geom::Segment> obstacles,
                   std::optional<std::size_t> exclude = std::nullopt);

}  // namespace mmrefl::sim
