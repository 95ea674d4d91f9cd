#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "knotgeo/bounds.hpp"
#include "knotgeo/fixtures.hpp"
#include "knotgeo/geometry.hpp"
#include "knotgeo/oracles.hpp"
#include "knotgeo/quadrisecant.hpp"
#include "knotgeo/thickness.hpp"

using namespace knotgeo;

namespace {

std::vector<Segment> random_segments(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Segment> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back({{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}});
    return out;
}

}  // namespace

static void BM_Circumradius(benchmark::State& state) {
    auto segs = random_segments(3, 1);
    Point3 a = segs[0].start, b = segs[1].start, c = segs[2].start;
    for (auto _ : state) benchmark::DoNotOptimize(circumradius(a, b, c));
}
BENCHMARK(BM_Circumradius);

static void BM_SegmentDistance(benchmark::State& state) {
    auto segs = random_segments(64, 2);
    size_t i = 0;
    for (auto _ : state) {
        const Segment& a = segs[i % 64];
        const Segment& b = segs[(i * 7 + 13) % 64];
        benchmark::DoNotOptimize(segment_segment_distance(a, b));
        ++i;
    }
}
BENCHMARK(BM_SegmentDistance);

static void BM_Thickness(benchmark::State& state) {
    PolyKnot k = fixtures::trefoil(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(thickness_and_ropelength(k));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Thickness)->Arg(32)->Arg(64)->Arg(128)->Complexity(benchmark::oNSquared);

static void BM_TransversalSolve(benchmark::State& state) {
    auto segs = random_segments(4 * 256, 3);
    size_t i = 0;
    for (auto _ : state) {
        size_t b = 4 * (i % 256);
        benchmark::DoNotOptimize(transversals_of_four_segments(
            segs[b], segs[b + 1], segs[b + 2], segs[b + 3]));
        ++i;
    }
}
BENCHMARK(BM_TransversalSolve);

static void BM_QuadrisecantScan(benchmark::State& state) {
    PolyKnot k = fixtures::trefoil(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(find_quadrisecants(k, 1e-9, 1));
}
BENCHMARK(BM_QuadrisecantScan)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ArcBound(benchmark::State& state) {
    double theta = 0.0;
    for (auto _ : state) {
        theta += 1e-3;
        if (theta > 3.14) theta = 0.0;
        benchmark::DoNotOptimize(bounds::min_arc_avoiding_ball(1.7, 2.3, theta));
    }
}
BENCHMARK(BM_ArcBound);

static void BM_BallOracle(benchmark::State& state) {
    OracleConfig cfg;
    cfg.circle_discretization = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(shortest_path_avoiding_ball_oracle(2.0, 1.5, 2.7, cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallOracle)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SampledTransversals(benchmark::State& state) {
    auto segs = random_segments(4, 4);
    OracleConfig cfg;
    cfg.sampler_resolution = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sampled_transversals(segs[0], segs[1], segs[2], segs[3], cfg));
}
BENCHMARK(BM_SampledTransversals)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
