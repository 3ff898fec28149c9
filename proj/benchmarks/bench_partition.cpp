#include <benchmark/benchmark.h>

#include "egren/partition.hpp"

using namespace egren::partition;

static void BM_EnumeratePartitions(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_partitions(n));
}
BENCHMARK(BM_EnumeratePartitions)->DenseRange(4, 9);

static void BM_EnumerateForests(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_eg_forests(n));
}
BENCHMARK(BM_EnumerateForests)->DenseRange(2, 6);

static void BM_Coarsenings(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Partition p = Partition::finest(ground_mask(n));
  for (auto _ : state) benchmark::DoNotOptimize(coarsenings(p));
}
BENCHMARK(BM_Coarsenings)->DenseRange(3, 8);

BENCHMARK_MAIN();
