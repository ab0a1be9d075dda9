#include "fatune/sampling.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_Draw(benchmark::State& state, fatune::SamplerKind kind) {
    const auto n = static_cast<std::size_t>(state.range(0));
    fatune::RandomStream stream(3);
    for (auto _ : state) benchmark::DoNotOptimize(fatune::draw(kind, n, 3, stream));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Draw, mc, fatune::SamplerKind::MC)->Arg(1024);
BENCHMARK_CAPTURE(BM_Draw, qmc, fatune::SamplerKind::QMC)->Arg(1024);
BENCHMARK_CAPTURE(BM_Draw, lhs, fatune::SamplerKind::LHS)->Arg(1024);

void BM_SobolHighDimension(benchmark::State& state) {
    fatune::RandomStream stream(4);
    for (auto _ : state) benchmark::DoNotOptimize(fatune::draw_sobol(4096, 64, stream, false));
}
BENCHMARK(BM_SobolHighDimension);

} // namespace
