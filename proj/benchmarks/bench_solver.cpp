#include "bench_common.hpp"

#include "bethe/solver.hpp"

#include <benchmark/benchmark.h>

using namespace bethe;

static void BM_SolveAll(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const ProblemInstance inst(ExponentVector(std::vector<int>(n, 1)), k, bench::spread_points(n));
    for (auto _ : state) benchmark::DoNotOptimize(solve_all(inst));
}
BENCHMARK(BM_SolveAll)->Args({3, 1})->Args({4, 2})->Args({6, 2})->Args({6, 3})->Unit(benchmark::kMillisecond);
