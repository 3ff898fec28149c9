#include <cmath>

#include <gtest/gtest.h>

#include "egren/amplitude.hpp"
#include "egren/error.hpp"
#include "oracles.hpp"
#include "sp_fixtures.hpp"

using namespace egren;
using namespace egren::amplitude;

namespace {

const laurent::SymbolValues kValues = laurent::SymbolValues::standard();

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::SchemaViolation;
}

double v_closed(double a, double b) {
  return std::tgamma(2 - a) * std::tgamma(2 - b) * std::tgamma(a + b - 2) /
         (std::tgamma(a) * std::tgamma(b) * std::tgamma(4 - a - b));
}

}  // namespace

TEST(SPParse, Examples) {
  auto b = sp_parse("P(e,e)");
  EXPECT_EQ(b.graph.num_vertices(), 2u);
  EXPECT_EQ(b.graph.num_edges(), 2u);
  auto n = sp_parse(oracle::kNestedBubble);
  EXPECT_EQ(n.graph.num_vertices(), 3u);
  EXPECT_EQ(n.graph.num_edges(), 4u);
  EXPECT_EQ(code_of([] { sp_parse("S(e"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { sp_parse("Q(e,e)"); }), Errc::ParseError);
  auto w = sp_parse("P(e:1/2,e)");
  EXPECT_EQ(w.rho[0], frac(1, 2));
}

TEST(SPParse, ExpressionRoundTrip) {
  oracle::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    std::string e = oracle::random_sp_expression(rng, 1 + i % 6, true);
    auto g = sp_parse(e);
    auto again = sp_parse(g.expr.to_string());
    EXPECT_EQ(again.graph, g.graph) << e;
    EXPECT_EQ(again.rho, g.rho) << e;
  }
}

TEST(ChainWeight, ThreeHalvesGivesFour) {
  auto cf = chain_weight({frac(3, 2), 0}, {frac(3, 2), 0}, 4);
  EXPECT_NEAR(cf.prefactor(0), 4 * M_PI * M_PI, 1e-12);
  EXPECT_EQ(cf.exponent, (Affine{1, 0}));
  EXPECT_NEAR(oracle::chain_integral_d4(1.5, 1.5), 4 * M_PI * M_PI, 0.01 * 4 * M_PI * M_PI);
}

TEST(ChainWeight, SymmetricAndNumeric) {
  oracle::Rng rng(21);
  std::uniform_int_distribution<int> num(11, 17);
  for (int i = 0; i < 10; ++i) {
    Rational a = frac(num(rng), 10), b = frac(num(rng), 10);
    auto ab = chain_weight({a, 0}, {b, 0}, 4);
    auto ba = chain_weight({b, 0}, {a, 0}, 4);
    EXPECT_EQ(ab.canonical(), ba.canonical());
    double expected = M_PI * M_PI * v_closed(to_double(a), to_double(b));
    EXPECT_NEAR(ab.prefactor(0), expected, 1e-10 * std::fabs(expected));
  }
}

TEST(ChainWeight, RigidPole) {
  EXPECT_EQ(code_of([] { chain_weight({1, 0}, {1, 0}, 4); }), Errc::RigidPole);
}

TEST(SPReduce, Examples) {
  auto b = sp_reduce(sp_parse("P(e,e)"), 4);
  EXPECT_EQ(b.exponent, (Affine{2, 1}));
  EXPECT_TRUE(b.gammas.empty());
  auto s = sp_reduce(sp_parse("S(e,e)"), 4);
  EXPECT_EQ(s.exponent, (Affine{0, 1}));
  EXPECT_EQ(s.canonical(), chain_weight({1, frac(1, 2)}, {1, frac(1, 2)}, 4).canonical());
  auto n = sp_reduce(sp_parse(oracle::kNestedBubble), 4);
  EXPECT_EQ(n.exponent, (Affine{2, 2}));
  auto inner = chain_weight({2, 1}, {1, frac(1, 2)}, 4);
  for (double zeta : {0.1, 0.37, -0.2}) EXPECT_NEAR(n.prefactor(zeta), inner.prefactor(zeta), 1e-12 * std::fabs(inner.prefactor(zeta)));
}

TEST(SPReduce, RandomSafeGraphsMatchNumericIntegration) {
  oracle::Rng rng(31);
  const double zeta = 0.3;
  int done = 0;
  for (int attempt = 0; attempt < 400 && done < 5; ++attempt) {
    std::string e = oracle::random_sp_expression(rng, 3 + attempt % 3);
    oracle::NumericAmplitude num;
    if (!oracle::numeric_sp_amplitude(e, zeta, num)) continue;
    auto cf = sp_reduce(sp_parse(e), 4);
    EXPECT_NEAR(cf.exponent.at(zeta), num.s, 1e-12) << e;
    EXPECT_NEAR(cf.prefactor(zeta), num.coeff, 0.02 * std::fabs(num.coeff)) << e;
    ++done;
  }
  EXPECT_EQ(done, 5);
}

TEST(Pairing, RadialQuadrature) {
  ClosedFormAmplitude cf;
  cf.exponent = {1, 0};
  cf.d = 4;
  EXPECT_NEAR(evaluate_numeric(cf, 0.0), M_PI * M_PI, 1e-12);
  EXPECT_NEAR(oracle::radial_pairing_d4(1), M_PI * M_PI, 1e-6);
  auto p = evaluate_pairing(cf, 2);
  EXPECT_TRUE(p.series.pp().is_zero());
  EXPECT_NEAR(p.series.evaluate(0, kValues), M_PI * M_PI, 1e-12);
}

TEST(Pairing, BubbleSeries) {
  auto p = evaluate_pairing(sp_reduce(sp_parse("P(e,e)"), 4), 1);
  laurent::Coeff pi2 = laurent::Coeff::pi_power_halves(4);
  EXPECT_EQ(p.series.coefficient(-1), -pi2);
  EXPECT_EQ(p.series.coefficient(0),
            -(pi2 * laurent::Coeff::symbol(laurent::kEulerGamma) + pi2 * laurent::Coeff::symbol(laurent::kLogT)));
}

TEST(Pairing, SeriesMatchesNumericGamma) {
  for (const auto& fx : oracle::kSPFixtures) {
    auto cf = sp_reduce(sp_parse(fx.expr), 4);
    auto p = evaluate_pairing(cf, 5);
    for (double zeta : {2e-3, -3e-3}) {
      double exact = evaluate_numeric(cf, zeta);
      EXPECT_NEAR(p.series.evaluate(zeta, kValues), exact, 1e-7 * std::fabs(exact)) << fx.name;
    }
  }
}

TEST(Pairing, NumericAgainstRadialQuadrature) {
  for (long tenths : {-5L, 3L, 14L}) {
    ClosedFormAmplitude cf;
    cf.exponent = {frac(tenths, 10), 0};
    cf.d = 4;
    double s = static_cast<double>(tenths) / 10;
    for (double t : {0.5, 2.0}) {
      double ref = oracle::radial_pairing_d4(s, t);
      EXPECT_NEAR(evaluate_numeric(cf, 0, t), ref, 1e-8 * std::fabs(ref));
    }
  }
}

TEST(BlockAmplitudes, NestedBubble) {
  auto g = sp_parse(oracle::kNestedBubble);
  auto bub = sp_reduce(sp_parse("P(e,e)"), 4);
  partition::Mask pair = 0;
  for (auto m : {partition::mask_of({1, 2}), partition::mask_of({1, 3}), partition::mask_of({2, 3})})
    if (graph::full_vertex_part(g.graph, partition::elements(m)).edges.size() == 2) pair = m;
  ASSERT_NE(pair, 0u);
  partition::Mask rest = g.graph.vertex_mask() & ~pair;
  partition::Partition p(g.graph.vertex_mask(), {pair, rest});
  auto ba = block_amplitudes(g, p, 4);
  EXPECT_EQ(ba.subs.at(pair).canonical(), bub.canonical());
  EXPECT_EQ(ba.quotient.exponent, (Affine{2, 1}));

  auto fin = block_amplitudes(g, partition::Partition::finest(g.graph.vertex_mask()), 4);
  EXPECT_EQ(fin.quotient.canonical(), sp_reduce(g, 4).canonical());
  for (const auto& [m, cf] : fin.subs) EXPECT_TRUE(cf.unit);
}

TEST(BlockAmplitudes, DisconnectedBlock) {
  auto g = sp_parse("S(e,e)");
  partition::Mask gap = 0;
  for (auto m : {partition::mask_of({1, 2}), partition::mask_of({1, 3}), partition::mask_of({2, 3})})
    if (graph::full_vertex_part(g.graph, partition::elements(m)).edges.empty()) gap = m;
  ASSERT_NE(gap, 0u);
  partition::Partition p(g.graph.vertex_mask(), {gap, g.graph.vertex_mask() & ~gap});
  EXPECT_EQ(code_of([&] { block_amplitudes(g, p, 4); }), Errc::DisconnectedBlock);
}

TEST(ReduceTwoTerminal, NonSeriesParallel) {
  // K4 with terminals 1, 2 is not series-parallel
  auto k4 = graph::build_graph({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  std::vector<Rational> rho(6, Rational(1));
  EXPECT_FALSE(reduce_two_terminal(k4, rho, 1, 2, 4).has_value());
}
