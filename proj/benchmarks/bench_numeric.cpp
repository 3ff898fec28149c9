#include <benchmark/benchmark.h>

#include "egren/bessel.hpp"
#include "egren/extend.hpp"
#include "egren/hadamard.hpp"

using namespace egren;

static void BM_BesselK(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::bessel_k(1.3, x));
    x = x < 20 ? x * 1.1 : 0.1;
  }
}
BENCHMARK(BM_BesselK);

static void BM_HadamardEven(benchmark::State& state) {
  hadamard::HadamardParams p;
  p.d = 4;
  p.m = 1.0;
  p.zeta = 0.3;
  p.z2 = {-0.7, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(hadamard::hadamard_eval(p, hadamard::Variant::EvenRegularized));
}
BENCHMARK(BM_HadamardEven);

static void BM_GaussianPairing(benchmark::State& state) {
  auto f = extend::TestFunction::gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(extend::gaussian_pairing(1.0, 1.0, 0.05, f));
}
BENCHMARK(BM_GaussianPairing);

BENCHMARK_MAIN();
