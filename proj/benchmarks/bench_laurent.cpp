#include <benchmark/benchmark.h>

#include "egren/laurent.hpp"

using namespace egren;
using laurent::Series;

static void BM_GammaExpand(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laurent::gamma_expand(-1, 1, order));
}
BENCHMARK(BM_GammaExpand)->DenseRange(2, 8, 2);

static void BM_SeriesProduct(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  Series a = laurent::gamma_expand(0, 1, order);
  Series b = laurent::gamma_expand(-1, 2, order);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesProduct)->DenseRange(2, 8, 2);

static void BM_PowerExpand(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(laurent::power_expand(frac(3, 2), 2, 6));
}
BENCHMARK(BM_PowerExpand);

BENCHMARK_MAIN();
