#include "bench_common.hpp"

#include "bethe/fuchsian.hpp"
#include "bethe/solver.hpp"

#include <benchmark/benchmark.h>

using namespace bethe;

static void BM_AssociatedEquation(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const ProblemInstance inst(ExponentVector(std::vector<int>(n, 1)), k, bench::spread_points(n));
    const auto rep = solve_all(inst);
    if (rep.orbits.empty()) {
        state.SkipWithError("no critical orbit");
        return;
    }
    const auto& t = rep.orbits.front().t;
    for (auto _ : state) benchmark::DoNotOptimize(associated_equation(t, inst.z(), inst.m(), 1e-8));
}
BENCHMARK(BM_AssociatedEquation)->Args({4, 1})->Args({6, 2})->Args({6, 3});
