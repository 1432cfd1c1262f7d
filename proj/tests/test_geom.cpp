#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mmrefl/geom.hpp"

namespace {

using mmrefl::geom::Point;
using mmrefl::geom::Segment;
namespace geom = mmrefl::geom;

TEST(Segment, RejectsDegenerateAndNonFinite) {
    EXPECT_THROW(Segment({1, 1}, {1, 1}), std::invalid_argument);
    EXPECT_THROW(Segment({0, 0}, {NAN, 1}), std::invalid_argument);
    EXPECT_DOUBLE_EQ(Segment({0, 0}, {3, 4}).length(), 5.0);
}

TEST(SegmentsIntersect, Crossing) {
    EXPECT_TRUE(geom::segments_intersect(Segment({0, 0}, {2, 2}), Segment({0, 2}, {2, 0})));
}

TEST(SegmentsIntersect, ParallelDisjoint) {
    EXPECT_FALSE(geom::segments_intersect(Segment({0, 0}, {1, 0}), Segment({0, 1}, {1, 1})));
}

TEST(SegmentsIntersect, CollinearOverlap) {
    EXPECT_TRUE(geom::segments_intersect(Segment({0, 0}, {2, 0}), Segment({1, 0}, {3, 0})));
}

TEST(SegmentsIntersect, CollinearDisjoint) {
    EXPECT_FALSE(geom::segments_intersect(Segment({0, 0}, {1, 0}), Segment({2, 0}, {3, 0})));
}

TEST(SegmentsIntersect, TouchingEndpointsCount) {
    EXPECT_TRUE(geom::segments_intersect(Segment({0, 0}, {1, 1}), Segment({1, 1}, {2, 0})));
    EXPECT_TRUE(geom::segments_intersect(Segment({0, 0}, {2, 0}), Segment({1, 0}, {1, 5})));
}

TEST(SegmentsIntersect, SymmetricOnRandomPairs) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const Segment s1({u(gen), u(gen)}, {u(gen), u(gen)});
        const Segment s2({u(gen), u(gen)}, {u(gen), u(gen)});
        ASSERT_EQ(geom::segments_intersect(s1, s2), geom::segments_intersect(s2, s1));
    }
}

TEST(MirrorPoint, Examples) {
    const Point m1 = geom::mirror_point({3, 1}, Segment({0, 0}, {0, 5}));
    EXPECT_NEAR(m1.x, -3.0, 1e-12);
    EXPECT_NEAR(m1.y, 1.0, 1e-12);

    const Point on_line = geom::mirror_point({0, 2.5}, Segment({0, 0}, {0, 5}));
    EXPECT_NEAR(on_line.x, 0.0, 1e-12);
    EXPECT_NEAR(on_line.y, 2.5, 1e-12);

    const Point m2 = geom::mirror_point({0.5, 2}, Segment({1, 0}, {1, 3}));
    EXPECT_NEAR(m2.x, 1.5, 1e-12);
    EXPECT_NEAR(m2.y, 2.0, 1e-12);
}

TEST(MirrorPoint, Involution) {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const Segment line({u(gen), u(gen)}, {u(gen), u(gen)});
        const Point p{u(gen), u(gen)};
        const Point back = geom::mirror_point(geom::mirror_point(p, line), line);
        const double scale = std::max(1.0, p.norm());
        ASSERT_NEAR(back.x, p.x, 1e-9 * scale);
        ASSERT_NEAR(back.y, p.y, 1e-9 * scale);
    }
}

TEST(SpecularPoint, HandComputed) {
    const auto q = geom::specular_point({0.5, 2}, {0, 0}, Segment({1, 0}, {1, 3}));
    ASSERT_TRUE(q.has_value());
    EXPECT_NEAR(q->x, 1.0, 1e-12);
    EXPECT_NEAR(q->y, 4.0 / 3.0, 1e-12);
}

TEST(SpecularPoint, OppositeSidesHasNoPath) {
    EXPECT_FALSE(geom::specular_point({2, 2}, {0, 0}, Segment({1, 0}, {1, 3})));
}

TEST(SpecularPoint, SightLineMissesSegment) {
    EXPECT_FALSE(geom::specular_point({0.5, 10}, {0, 0}, Segment({1, 0}, {1, 1})));
}

TEST(SpecularPoint, PointOnLineHasNoPath) {
    EXPECT_FALSE(geom::specular_point({1, 5}, {0, 0}, Segment({1, 0}, {1, 3})));
}

TEST(ReflectedPathLength, HandComputed) {
    const auto len = geom::reflected_path_length({0.5, 2}, {0, 0}, Segment({1, 0}, {1, 3}));
    ASSERT_TRUE(len.has_value());
    EXPECT_NEAR(*len, 2.5, 1e-12);
    EXPECT_FALSE(geom::reflected_path_length({2, 2}, {0, 0}, Segment({1, 0}, {1, 3})));
}

TEST(ReflectedPathLength, EqualsMirroredDistanceAndBoundsDirect) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    int valid = 0;
    for (int i = 0; i < 10000; ++i) {
        const Segment mirror({u(gen), u(gen)}, {u(gen), u(gen)});
        const Point source{u(gen), u(gen)};
        const Point receiver{u(gen), u(gen)};
        const auto len = geom::reflected_path_length(source, receiver, mirror);
        if (!len) {
            continue;
        }
        ++valid;
        const double image = geom::distance(geom::mirror_point(source, mirror), receiver);
        ASSERT_NEAR(*len, image, 1e-9 * image);
        ASSERT_GE(*len, geom::distance(source, receiver) * (1.0 - 1e-12));
    }
    EXPECT_GT(valid, 500);
}

}  // namespace
