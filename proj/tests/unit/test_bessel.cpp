#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "egren/bessel.hpp"
#include "egren/error.hpp"

using namespace egren;
using namespace egren::bessel;

TEST(BesselI, ClosedForms) {
  EXPECT_NEAR(bessel_i(0.5, 1.0), std::sqrt(2 / M_PI) * std::sinh(1.0), 1e-12);
  EXPECT_NEAR(bessel_i(-0.5, 1.0), std::sqrt(2 / M_PI) * std::cosh(1.0), 1e-12);
  EXPECT_EQ(bessel_i(0.0, 0.0), 1.0);
}

TEST(BesselI, MatchesBoost) {
  for (double nu : {0.0, 0.3, 1.0, 1.5, 2.7})
    for (double x : {0.1, 1.0, 4.0, 12.0}) {
      double ref = boost::math::cyl_bessel_i(nu, x);
      EXPECT_NEAR(bessel_i(nu, x), ref, 1e-12 * ref) << nu << " " << x;
    }
}

TEST(BesselI, ComplexArgumentConsistency) {
  // I_nu(i x) = i^nu J_nu(x) for the principal branch
  for (double nu : {0.0, 1.0, 2.0}) {
    cplx v = bessel_i(nu, cplx(0, 2.0));
    cplx expected = std::pow(cplx(0, 1), nu) * boost::math::cyl_bessel_j(nu, 2.0);
    EXPECT_NEAR(std::abs(v - expected), 0, 1e-12);
  }
  EXPECT_NEAR(std::abs(bessel_i(0.7, cplx(1.3, 0)) - bessel_i(0.7, 1.3)), 0, 1e-15);
}

TEST(BesselK, ClosedFormsAndIntegral) {
  EXPECT_NEAR(bessel_k(0.5, 1.0), std::sqrt(M_PI / 2) * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(bessel_k(0.3, 1.0), std::real(bessel_k_integral(0.3, cplx(1.0, 0))), 1e-9);
  EXPECT_NEAR(bessel_k(0.0, 1.0), 0.42102443824070833, 1e-9);
  EXPECT_NEAR(bessel_k(1.0, 1.0), boost::math::cyl_bessel_k(1.0, 1.0), 1e-9);
}

TEST(BesselK, MatchesBoost) {
  for (double nu : {0.2, 0.5, 1.3, 2.5})
    for (double x : {0.5, 1.0, 3.0, 5.0}) {
      double ref = boost::math::cyl_bessel_k(nu, x);
      EXPECT_NEAR(bessel_k(nu, x), ref, 1e-8 * std::max(ref, 1e-3)) << nu << " " << x;
    }
}

TEST(BesselK, Wronskian) {
  for (double nu : {0.25, 0.5, 1.5})
    for (double x : {0.5, 1.0, 2.5}) {
      double w = bessel_i(nu, x) * bessel_k(nu + 1, x) + bessel_i(nu + 1, x) * bessel_k(nu, x);
      EXPECT_NEAR(w, 1 / x, 1e-10);
    }
}

TEST(BesselK, Overflow) {
  EXPECT_THROW(bessel_i(0.5, 1000.0), Error);
}

TEST(Frobenius, Recursion) {
  for (Rational nu : {Rational(0), frac(1, 3), frac(5, 2)})
    for (Rational alpha : {nu, Rational(-nu)}) {
      if (alpha < 0 && is_half_integer(alpha)) continue;
      auto c = frobenius_coefficients(nu, alpha, 12);
      ASSERT_EQ(c.size(), 13u);
      EXPECT_EQ(c[0], 1);
      for (int s = 1; s <= 12; s += 2) EXPECT_EQ(c[s], 0);
      for (int s = 2; s <= 12; s += 2) {
        Rational a = alpha + s;
        EXPECT_EQ((a * a - nu * nu) * c[s], c[s - 2]) << to_string(nu) << " " << s;
      }
    }
}

TEST(Frobenius, SeriesSolvesTheEquation) {
  auto c = frobenius_coefficients(frac(1, 4), frac(1, 4), 40);
  auto y = [&](double x) {
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += to_double(c[k]) * std::pow(x, static_cast<double>(k));
    return std::pow(x, 0.25) * s;
  };
  auto r = ode_residual(y, 0.25, {0.5, 3.0, 1e-3});
  EXPECT_LT(r.max_residual, 1e-6);
}

TEST(OdeResidual, SolutionsAndControl) {
  Grid g{0.5, 3.0, 1e-3};
  auto k = ode_residual(OdeKind::K, 0.5, 1.0, g);
  EXPECT_LT(k.max_residual, 1e-6);
  EXPECT_NEAR(k.observed_order, 2.0, 0.2);
  auto i = ode_residual(OdeKind::I, 0.25, 1.0, g);
  EXPECT_LT(i.max_residual, 1e-6);
  EXPECT_NEAR(i.observed_order, 2.0, 0.2);
  auto bad = ode_residual([](double x) { return x; }, 0.5, g);
  EXPECT_GT(bad.max_residual, 0.1);
}
