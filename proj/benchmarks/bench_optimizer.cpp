#include <benchmark/benchmark.h>

#include "tptd/optimizer.hpp"

namespace {

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        s += 100.0 * a * a + (1.0 - x[i]) * (1.0 - x[i]);
    }
    return s;
}

void BM_Minimize(benchmark::State& state) {
    tptd::OptimizerConfig cfg;
    cfg.algorithm = state.range(0) == 0 ? tptd::OptimizerKind::kCrFmNes : tptd::OptimizerKind::kCmaEs;
    cfg.population_size = 10;
    cfg.max_generations = 500;
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(tptd::minimize(rosenbrock, n, cfg).best_f);
    state.SetLabel(std::string(tptd::to_string(cfg.algorithm)));
}

}  // namespace

BENCHMARK(BM_Minimize)->Args({0, 40})->Args({1, 40})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
