#include "bench_common.hpp"

#include <benchmark/benchmark.h>

using namespace bethe;

static void BM_Residual(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const ProblemInstance inst(ExponentVector(std::vector<int>(6, 2)), k, bench::spread_points(6));
    std::vector<Complex> t;
    for (int i = 0; i < k; ++i) t.emplace_back(0.1 * i, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(bethe_residual(t, inst));
}
BENCHMARK(BM_Residual)->Arg(2)->Arg(4)->Arg(6);

static void BM_Hessian(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const ProblemInstance inst(ExponentVector(std::vector<int>(6, 2)), k, bench::spread_points(6));
    std::vector<Complex> t;
    for (int i = 0; i < k; ++i) t.emplace_back(0.1 * i, 0.05);
    for (auto _ : state) benchmark::DoNotOptimize(hessian_ln_phi(t, inst));
}
BENCHMARK(BM_Hessian)->Arg(2)->Arg(4)->Arg(6);
