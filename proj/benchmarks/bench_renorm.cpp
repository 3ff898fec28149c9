#include <benchmark/benchmark.h>

#include <string>

#include "egren/renorm.hpp"

using namespace egren;
using laurent::Series;

namespace {

Series pole_value() { return Series::monomial(-2, laurent::Coeff(Rational(1))) + Series::monomial(-1, laurent::Coeff::symbol(laurent::kEulerGamma)); }

const char* const kGraphs[] = {"P(S(P(e,e),e),e)", "S(P(S(P(e,e),e),e),P(e,e))", "P(S(P(S(P(e,e),e),e),P(e,e)),e)"};

}  // namespace

static void BM_ToyForestFormula(benchmark::State& state) {
  auto toy = renorm::ScalarToy::uniform(static_cast<int>(state.range(0)), pole_value());
  for (auto _ : state) benchmark::DoNotOptimize(renorm::forest_formula(toy));
}
BENCHMARK(BM_ToyForestFormula)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_ToyCounterterms(benchmark::State& state) {
  auto toy = renorm::ScalarToy::uniform(static_cast<int>(state.range(0)), pole_value());
  for (auto _ : state) benchmark::DoNotOptimize(renorm::bph_counterterms(toy));
}
BENCHMARK(BM_ToyCounterterms)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

// A fresh model per iteration so the quotient cache starts empty.
static void BM_SPForestFormula(benchmark::State& state) {
  const std::string expr = kGraphs[state.range(0)];
  for (auto _ : state) {
    renorm::SPModel m(amplitude::sp_parse(expr), 4, 1);
    benchmark::DoNotOptimize(renorm::forest_formula(m));
  }
  state.SetLabel(expr);
}
BENCHMARK(BM_SPForestFormula)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_SPDomainCheck(benchmark::State& state) {
  const std::string expr = kGraphs[state.range(0)];
  renorm::SPModel m(amplitude::sp_parse(expr), 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(m.infrared_safe() && m.logarithmic_subdivergences());
  state.SetLabel(expr);
}
BENCHMARK(BM_SPDomainCheck)->DenseRange(0, 2);

BENCHMARK_MAIN();
