#include <benchmark/benchmark.h>

#include <cmath>

#include "mmrefl/analytic.hpp"
#include "mmrefl/sim.hpp"

namespace {

using namespace mmrefl;

NetworkParams fig5_params() {
    NetworkParams p;
    p.lambda_bs = 0.1;
    p.lambda_obj = 0.01;
    p.delta = 0.5;
    return p;
}

void BM_RunTrial(benchmark::State& state) {
    auto p = fig5_params();
    sim::SimOptions opt;
    opt.min_mean_bs = static_cast<double>(state.range(0));
    opt.min_reflected_multiple = 0;
    const double h = sim::choose_window(p, opt);
    std::uint64_t t = 0;
    for (auto _ : state) {
        auto rng = Rng::for_stream(1, t++);
        benchmark::DoNotOptimize(sim::run_trial(p, h, rng, opt));
    }
}
BENCHMARK(BM_RunTrial)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_DistanceModelBuild(benchmark::State& state) {
    const auto p = fig5_params();
    for (auto _ : state) {
        analytic::DistanceModel m(p);
        benchmark::DoNotOptimize(m.atom_reflected());
    }
}
BENCHMARK(BM_DistanceModelBuild)->Unit(benchmark::kMillisecond);

void BM_CoverageAtThreshold(benchmark::State& state) {
    const analytic::CoverageModel model(fig5_params());
    double t = -5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.evaluate(std::pow(10.0, t / 10.0)));
        t = t > 19 ? -5 : t + 3;
    }
}
BENCHMARK(BM_CoverageAtThreshold)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
