#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mmrefl/geom.hpp"
#include "mmrefl/sim.hpp"

namespace {

using namespace mmrefl;

std::vector<geom::Segment> random_segments(std::size_t n, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::vector<geom::Segment> out;
    out.reserve(n);
    while (out.size() < n) {
        const Point a{u(gen), u(gen)};
        out.emplace_back(a, a + Point{u(gen) * 0.1, u(gen) * 0.1});
    }
    return out;
}

void BM_SegmentsIntersect(benchmark::State& state) {
    const auto segs = random_segments(1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geom::segments_intersect(segs[i & 1023], segs[(i * 7 + 3) & 1023]));
        ++i;
    }
}
BENCHMARK(BM_SegmentsIntersect);

void BM_SpecularPoint(benchmark::State& state) {
    const auto segs = random_segments(1024, 2);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& m = segs[i & 1023];
        benchmark::DoNotOptimize(geom::specular_point(m.midpoint() + Point{3, 1}, {0, 0}, m));
        ++i;
    }
}
BENCHMARK(BM_SpecularPoint);

// Line-of-sight queries against N objects: indexed versus brute force.
sim::Deployment deployment_with(std::size_t n_objects) {
    NetworkParams p;
    p.lambda_bs = 0.01;
    p.delta = 0.5;
    const double h = 100.0;
    p.lambda_obj = static_cast<double>(n_objects) / (4 * h * h);
    auto rng = Rng::for_stream(3, 0);
    return sim::sample_deployment(p, h, rng);
}

void BM_VisibilityIndexed(benchmark::State& state) {
    const auto dep = deployment_with(static_cast<std::size_t>(state.range(0)));
    const sim::Scene scene(dep);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scene.is_visible(dep.bs[i % dep.bs.size()]));
        ++i;
    }
}
BENCHMARK(BM_VisibilityIndexed)->Arg(100)->Arg(1000)->Arg(10000);

void BM_VisibilityBruteForce(benchmark::State& state) {
    const auto dep = deployment_with(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::is_visible(dep.bs[i % dep.bs.size()], dep));
        ++i;
    }
}
BENCHMARK(BM_VisibilityBruteForce)->Arg(100)->Arg(1000);

void BM_SceneBuild(benchmark::State& state) {
    const auto dep = deployment_with(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        sim::Scene scene(dep);
        benchmark::DoNotOptimize(&scene);
    }
}
BENCHMARK(BM_SceneBuild)->Arg(100)->Arg(1000);

}  // namespace
