#include "fatune/firefly.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_FireflyStep(benchmark::State& state) {
    const auto problem = fatune::make_problem("rosenbrock", static_cast<std::size_t>(state.range(0)));
    fatune::FaConfig cfg;
    cfg.beta = 0.5;
    cfg.gamma = 1.0;
    fatune::RandomStream stream(1);
    auto fa = fatune::init_population(problem, cfg, stream);
    for (auto _ : state) {
        fatune::step(fa, problem, cfg, stream);
        benchmark::DoNotOptimize(fa.best_value);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.population_size));
}
BENCHMARK(BM_FireflyStep)->Arg(2)->Arg(10)->Arg(30);

void BM_OptimizeDeskRun(benchmark::State& state) {
    const auto problem = fatune::make_problem("spring");
    fatune::FaConfig cfg;
    cfg.max_iterations = 250;
    cfg.theta = 0.95;
    cfg.beta = 0.5;
    cfg.gamma = 1.3;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.seed = ++seed;
        benchmark::DoNotOptimize(fatune::optimize(problem, cfg).best_value);
    }
}
BENCHMARK(BM_OptimizeDeskRun)->Unit(benchmark::kMillisecond);

} // namespace
