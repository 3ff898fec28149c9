#include <benchmark/benchmark.h>

#include "egren/hopf.hpp"

using namespace egren::hopf;

static void BM_Coproduct(benchmark::State& state) {
  Element x(gen(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(coproduct(x));
}
BENCHMARK(BM_Coproduct)->DenseRange(2, 7);

static void BM_Antipode(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(antipode_A(gen(n)));
}
BENCHMARK(BM_Antipode)->DenseRange(2, 7);

static void BM_AntipodeComp(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(antipode_AC(n));
}
BENCHMARK(BM_AntipodeComp)->DenseRange(2, 6);

BENCHMARK_MAIN();
