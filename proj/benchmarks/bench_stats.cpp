#include "fatune/special_functions.hpp"
#include "fatune/stats.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

void BM_TCdf(benchmark::State& state) {
    double x = -4.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fatune::stats::t_cdf(x, 17.5));
        x = x > 4.0 ? -4.0 : x + 0.01;
    }
}
BENCHMARK(BM_TCdf);

void BM_Chi2Cdf(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fatune::stats::chi2_cdf(x, 9.0));
        x = x > 40.0 ? 0.1 : x + 0.05;
    }
}
BENCHMARK(BM_Chi2Cdf);

void BM_Friedman(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    fatune::stats::BlockMatrix m(n, 3);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = static_cast<double>((r * 7 + c * 13) % 5);
    for (auto _ : state) benchmark::DoNotOptimize(fatune::stats::friedman(m).p_value);
}
BENCHMARK(BM_Friedman)->Arg(10)->Arg(1000);

} // namespace
