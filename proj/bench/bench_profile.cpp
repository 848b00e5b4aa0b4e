// Serial reference vs OpenMP profile assembly on a few representative spaces.

#include <ksoliton/soliton.hpp>

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace ksol;
using geometry::SpaceKind;

namespace {

soliton::SolitonParams space(int which) {
    soliton::SolitonParams p;
    switch (which) {
        case 0:
            p.space = geometry::make_space(SpaceKind::Euclidean, 5);
            p.alpha = 0.3;
            break;
        case 1:
            p.space = geometry::make_space(SpaceKind::Sphere, 6);
            p.alpha = 0.25;
            break;
        default:
            p.space = geometry::make_space(SpaceKind::HypOctonionic, 2);
            p.alpha = 0.3;
            break;
    }
    return p;
}

void BM_BuildSerial(benchmark::State& state) {
    const auto p = space(static_cast<int>(state.range(0)));
    soliton::GridSpec grid;
    grid.points = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(soliton::build_profile_serial(p, grid));
    state.SetItemsProcessed(state.iterations() * grid.points);
}

void BM_BuildParallel(benchmark::State& state) {
    const auto p = space(static_cast<int>(state.range(0)));
    soliton::GridSpec grid;
    grid.points = static_cast<int>(state.range(1));
    state.counters["threads"] = omp_get_max_threads();
    for (auto _ : state) benchmark::DoNotOptimize(soliton::build_profile(p, grid));
    state.SetItemsProcessed(state.iterations() * grid.points);
}

void grid_args(benchmark::internal::Benchmark* b) {
    for (int which : {0, 1, 2})
        for (int points : {128, 512}) b->Args({which, points});
    b->ArgNames({"space", "points"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_BuildSerial)->Apply(grid_args);
BENCHMARK(BM_BuildParallel)->Apply(grid_args);

BENCHMARK_MAIN();
