#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "tptd/metrics.hpp"

namespace {

std::vector<tptd::ObjectiveVector> sphere_front(std::size_t count, std::size_t m) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::vector<tptd::ObjectiveVector> pts;
    while (pts.size() < count) {
        tptd::ObjectiveVector v(m);
        double n = 0.0;
        for (double& x : v) {
            x = std::fabs(g(rng));
            n += x * x;
        }
        for (double& x : v) x /= std::sqrt(n);
        pts.push_back(v);
    }
    return pts;
}

void BM_Hypervolume(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto count = static_cast<std::size_t>(state.range(1));
    const auto pts = sphere_front(count, m);
    const auto ref = tptd::ReferencePoint::uniform(m, 1.1);
    for (auto _ : state) benchmark::DoNotOptimize(tptd::hypervolume(pts, ref));
}

}  // namespace

BENCHMARK(BM_Hypervolume)->Args({3, 91})->Args({4, 455})->Args({5, 200})->Unit(benchmark::kMillisecond);
