#include <cmath>

#include <gtest/gtest.h>

#include "egren/error.hpp"
#include "egren/laurent.hpp"
#include "oracles.hpp"

using namespace egren;
using laurent::Coeff;
using laurent::Series;

namespace {

Series z(int p, long c = 1) { return Series::monomial(p, Coeff(Rational(c))); }

const laurent::SymbolValues kValues = laurent::SymbolValues::standard();

}  // namespace

TEST(LaurentArithmetic, Examples) {
  EXPECT_EQ((z(-1) + z(0)) * z(1), z(0) + z(1));
  EXPECT_EQ(z(-1) * z(-1), z(-2));
  Series a = z(-2, 3) + z(1);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_TRUE((a + (-a)).is_zero());
}

TEST(LaurentArithmetic, PrincipalAndRegularParts) {
  Series s = z(-2, 3) + z(-1, 2) + z(0, 5) + z(1);
  EXPECT_EQ(s.pp(), z(-2, 3) + z(-1, 2));
  EXPECT_EQ(s.rp(), z(0, 5) + z(1));
  EXPECT_EQ(s.rp().limit0(), Coeff(Rational(5)));
}

TEST(LaurentArithmetic, RingLawsOnRandomSeries) {
  oracle::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Series a = oracle::random_series(rng, -3, 3);
    Series b = oracle::random_series(rng, -2, 4);
    Series c = oracle::random_series(rng, -1, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * Series::one(), a);
    EXPECT_EQ(a.pp() + a.rp(), a);
    EXPECT_EQ(a.pp().pp(), a.pp());
    EXPECT_TRUE(a.rp().pp().is_zero());
    EXPECT_EQ((a + b).pp(), a.pp() + b.pp());
  }
}

TEST(LaurentArithmetic, TruncationIsTracked) {
  Series a = z(-2) + Series(1);
  Series b = z(0) + Series(1);
  // the product is only known through zeta^-1
  EXPECT_EQ((a * b).truncation(), -1);
  EXPECT_THROW((a * b).coefficient(0), Error);
}

TEST(LaurentArithmetic, RotaBaxterIdentity) {
  oracle::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Series a = oracle::random_series(rng, -3, 3, true);
    Series b = oracle::random_series(rng, -3, 3, true);
    Series lhs = a.pp() * b.pp();
    Series rhs = (a.pp() * b).pp() + (a * b.pp()).pp() - (a * b).pp();
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(GammaExpand, OnePlusZeta) {
  Series g = laurent::gamma_expand(1, 1, 2);
  Coeff gamma = Coeff::symbol(laurent::kEulerGamma);
  Coeff c2 = Coeff::symbol(laurent::kEulerGamma, 2) * frac(1, 2) + Coeff::symbol(laurent::zeta_slot(2)) * frac(1, 2);
  EXPECT_EQ(g.coefficient(0), Coeff(1));
  EXPECT_EQ(g.coefficient(1), -gamma);
  EXPECT_EQ(g.coefficient(2), c2);
}

TEST(GammaExpand, MinusZeta) {
  Series g = laurent::gamma_expand(0, -1, 0);
  EXPECT_EQ(g.coefficient(-1), Coeff(-1));
  EXPECT_EQ(g.coefficient(0), -Coeff::symbol(laurent::kEulerGamma));
}

TEST(GammaExpand, HalfInteger) {
  Series g = laurent::gamma_expand(frac(1, 2), 1, 1);
  Coeff root_pi = Coeff::pi_power_halves(1);
  EXPECT_EQ(g.coefficient(0), root_pi);
  Coeff digamma = -(Coeff::symbol(laurent::kEulerGamma) + Coeff::symbol(laurent::kLn2) * Rational(2));
  EXPECT_EQ(g.coefficient(1), root_pi * digamma);
}

TEST(GammaExpand, MatchesNumericGamma) {
  const double zeta = 2e-3;
  for (int twice_c = -6; twice_c <= 7; ++twice_c) {
    Rational c = frac(twice_c, 2);
    for (long k : {-2L, -1L, 1L, 3L}) {
      for (int power : {1, -1}) {
        Series g = laurent::gamma_expand(c, k, 5, 16, power);
        double x = to_double(c) + static_cast<double>(k) * zeta;
        double exact = power > 0 ? std::tgamma(x) : 1.0 / std::tgamma(x);
        double approx = g.evaluate(zeta, kValues);
        EXPECT_NEAR(approx, exact, 1e-9 * std::max(1.0, std::fabs(exact))) << to_string(c) << " k=" << k;
      }
    }
  }
}

TEST(GammaExpand, FunctionalEquationExact) {
  for (int twice_c = -5; twice_c <= 6; ++twice_c) {
    Rational c = frac(twice_c, 2);
    // Gamma(c + 1 + zeta) = (c + zeta) Gamma(c + zeta)
    Series lhs = laurent::gamma_expand(c + 1, 1, 4, 16);
    Series factor = Series::constant(Coeff(c)) + z(1);
    Series rhs = factor * laurent::gamma_expand(c, 1, 4, 16);
    EXPECT_EQ(lhs, rhs) << to_string(c);
  }
}

TEST(GammaExpand, ReflectionNumeric) {
  Series prod = laurent::gamma_expand(0, 1, 5, 16) * laurent::gamma_expand(1, -1, 6, 16);
  for (double zeta : {0.01, 0.02}) {
    double exact = M_PI / std::sin(M_PI * zeta);
    EXPECT_NEAR(prod.evaluate(zeta, kValues), exact, 1e-8 * exact);
  }
}

TEST(GammaExpand, ReciprocalIsInverse) {
  for (int twice_c = -4; twice_c <= 4; ++twice_c) {
    Rational c = frac(twice_c, 2);
    Series g = laurent::gamma_expand(c, 2, 4, 16);
    Series r = laurent::gamma_expand(c, 2, 5, 16, -1);
    Series prod = g * r;
    EXPECT_EQ(prod, Series::one().truncated(prod.truncation())) << to_string(c);
  }
}

TEST(GammaExpand, RejectsOtherArguments) {
  EXPECT_THROW(laurent::gamma_expand(frac(1, 3), 1, 2), Error);
}

TEST(PowerExpand, Examples) {
  auto a = laurent::power_expand(0, 1, 3);
  EXPECT_EQ(a.exact_power, 0);
  Coeff l = Coeff::symbol(laurent::kLogT);
  EXPECT_EQ(a.series.coefficient(1), l);
  EXPECT_EQ(a.series.coefficient(2), Coeff::symbol(laurent::kLogT, 2) * frac(1, 2));
  auto b = laurent::power_expand(2, 2, 2);
  EXPECT_EQ(b.exact_power, 2);
  EXPECT_EQ(b.series.coefficient(1), l * Rational(2));
  EXPECT_EQ(b.series.coefficient(2), Coeff::symbol(laurent::kLogT, 2) * Rational(2));
  auto c = laurent::power_expand(0, 0, 3);
  EXPECT_EQ(c.series, Series::one());
}

TEST(PowerExpand, NumericAgainstPow) {
  auto p = laurent::power_expand(frac(1, 2), 3, 8);
  double t = 1.7, zeta = 0.01;
  double approx = std::pow(t, 0.5) * p.series.evaluate(zeta, laurent::SymbolValues::standard(std::log(t)));
  EXPECT_NEAR(approx, std::pow(t, 0.5 + 3 * zeta), 1e-13);
}

TEST(LaurentSymbols, NamesRoundTrip) {
  for (int slot = 0; slot < laurent::kNumSymbols; ++slot) {
    auto back = laurent::symbol_slot(laurent::symbol_name(slot));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, slot);
  }
  EXPECT_FALSE(laurent::symbol_slot("z17").has_value());
}

TEST(LaurentSymbols, MaxDegree) {
  Series s = Series::monomial(-1, Coeff::symbol(laurent::kLogT, 3)) + z(0);
  EXPECT_EQ(s.max_degree(laurent::kLogT), 3);
  EXPECT_EQ(s.max_degree(laurent::kEulerGamma), 0);
}
