#include <cmath>

#include <gtest/gtest.h>

#include "egren/extend.hpp"
#include "egren/hadamard.hpp"

using namespace egren;
using namespace egren::hadamard;

namespace {

HadamardParams params(int d, double m, double zeta = 0, cplx z2 = {-1, 0}) {
  HadamardParams p;
  p.d = d;
  p.m = m;
  p.zeta = zeta;
  p.z2 = z2;
  return p;
}

}  // namespace

TEST(Wightman, EuclideanGreenFunctions) {
  for (double r : {0.5, 1.0, 2.0}) {
    auto p3 = params(3, 1.3, 0, {-r * r, 0});
    EXPECT_NEAR(std::real(hadamard_eval(p3, Variant::Wightman)), std::exp(-1.3 * r) / (4 * M_PI * r), 1e-10);
    auto p4 = params(4, 0.7, 0, {-r * r, 0});
    double k1 = bessel::bessel_k(1.0, 0.7 * r);
    EXPECT_NEAR(std::real(hadamard_eval(p4, Variant::Wightman)), 0.7 * k1 / (4 * M_PI * M_PI * r), 1e-9);
  }
}

TEST(OddDimensions, ClosedFormMatchesSeries) {
  for (int d : {3, 5})
    for (cplx z2 : {cplx(-1, 0), cplx(-0.3, 0.4), cplx(2.0, 0.5)}) {
      auto p = params(d, 1.0, 0, z2);
      cplx a = hadamard_eval(p, Variant::OddUnique);
      cplx b = hadamard_odd_series(p);
      EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a))) << d << " " << z2;
    }
}

TEST(EvenDimensions, RegularizedConvergesToLimit) {
  auto limit = hadamard_eval(params(4, 1.3), Variant::EvenLimit);
  std::vector<double> zs{0.1, 0.05, 0.025}, errs;
  for (double zeta : zs) errs.push_back(std::abs(hadamard_eval(params(4, 1.3, zeta), Variant::EvenRegularized) - limit));
  for (std::size_t i = 1; i < errs.size(); ++i) EXPECT_LT(errs[i], errs[i - 1]);
  EXPECT_NEAR(extend::log_log_slope(zs, errs), 1.0, 0.15);
}

TEST(EvenDimensions, KFormCrossCheck) {
  for (double zeta : {0.2, -0.3, 0.7}) {
    auto p = params(4, 1.0, zeta);
    cplx a = hadamard_eval(p, Variant::EvenRegularized);
    cplx b = hadamard_even_kform(p);
    EXPECT_LT(std::abs(a - b), 1e-8 * std::abs(a)) << zeta;
  }
}

TEST(EvenDimensions, EqualScalesGiveTheWightmanTerm) {
  auto p = params(4, 1.0);
  p.mu = 1.0;
  EXPECT_LT(std::abs(hadamard_eval(p, Variant::EvenLimit) - hadamard_eval(p, Variant::Wightman)), 1e-10);
}

TEST(MassSeries, SumMatchesEvaluation) {
  auto p = params(4, 1.0, 0.2);
  auto c = mass_series(p, 20);
  cplx sum = 0;
  for (std::size_t s = 0; s < c.size(); ++s) sum += c[s] * std::pow(p.m * p.m, static_cast<double>(s));
  cplx direct = hadamard_eval(p, Variant::EvenRegularized);
  EXPECT_LT(std::abs(sum - direct), 1e-10 * std::max(1.0, std::abs(direct)));
}

TEST(MassSeries, ScalingDegrees) {
  EXPECT_NEAR(mass_series_scaling_degree(4, 0.2, 0), 2.2, 1e-15);
  EXPECT_NEAR(mass_series_scaling_degree(4, 0.2, 1), 0.2, 1e-15);
  EXPECT_NEAR(mass_series_scaling_degree(6, -0.1, 2), -0.1, 1e-15);
}

TEST(Residue, ClosedFormAgrees) {
  auto r = residue_check(4, 1.0, {-1, 0});
  EXPECT_LT(std::abs(r.lhs - r.rhs), 1e-6);
  EXPECT_LT(r.zeta_sq_abs, 1e-2 * r.zeta_abs);
}

TEST(Alpha, DifferenceQuotientLimit) {
  double l = std::log(2.0);
  EXPECT_NEAR(alpha_quotient_limit(2, 1), 0.5 * l * l, 1e-8);
  EXPECT_NEAR(alpha_quotient_limit(2, 1), 0.2402265, 1e-4);
  EXPECT_NEAR(alpha_quotient_limit(1, 1), 0.0, 1e-10);
  EXPECT_NEAR(alpha(2, 1, 1e-4), l, 1e-3);
}

TEST(Analyticity, CauchyRiemann) {
  for (Variant v : {Variant::Wightman, Variant::EvenLimit}) {
    auto p = params(4, 1.0, 0, {-0.7, 0.3});
    EXPECT_LT(cauchy_riemann_residual(p, v), 1e-6);
  }
  EXPECT_LT(cauchy_riemann_residual(params(3, 1.0, 0, {-0.7, 0.3}), Variant::OddUnique), 1e-6);
}

TEST(Analyticity, SmoothInMassSquared) {
  auto p = params(4, 1.0, 0.3, {-1, 0});
  double e1 = mass_taylor_error(p, 0.1, 4);
  double e2 = mass_taylor_error(p, 0.05, 4);
  double order = std::log(e1 / e2) / std::log(2.0);
  EXPECT_GT(order, 4.5) << e1 << " " << e2;
  EXPECT_LT(order, 5.5) << e1 << " " << e2;
  EXPECT_LT(e2, 1e-6);
}

TEST(Profile, SatisfiesTheBesselEquation) {
  bessel::Grid g{0.5, 3.0, 1e-3};
  auto r = profile_ode_residual(params(4, 1.0), Variant::Wightman, g);
  EXPECT_LT(r.max_residual, 1e-6);
}
