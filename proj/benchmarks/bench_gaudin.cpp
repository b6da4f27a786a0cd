#include "bench_common.hpp"

#include "bethe/gaudin.hpp"

#include <benchmark/benchmark.h>

using namespace bethe;

static void BM_HamiltoniansComplex(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const ExponentVector m(std::vector<int>(n, 2));
    const auto z = bench::spread_points(n);
    for (auto _ : state) benchmark::DoNotOptimize(hamiltonians_complex(z, m, k));
}
BENCHMARK(BM_HamiltoniansComplex)->Args({3, 2})->Args({4, 3})->Args({5, 4});
