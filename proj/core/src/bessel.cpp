#include "egren/bessel.hpp"

#include <cmath>
#include <numbers>

#include "egren/error.hpp"
#include "egren/quadrature.hpp"

namespace egren::bessel {

namespace {

using lcplx = std::complex<long double>;

bool is_nonpositive_integer(long double v) { return v <= 0 && v == std::floor(v); }

long double rgamma(long double v) { return is_nonpositive_integer(v) ? 0.0L : 1.0L / std::tgamma(v); }

bool near_integer(double nu) { return std::abs(nu - std::round(nu)) < 1e-12; }

cplx k_from_i(double nu, cplx x) {
  double s = std::sin(nu * std::numbers::pi);
  return std::numbers::pi / (2.0 * s) * (bessel_i(-nu, x) - bessel_i(nu, x));
}

}  // namespace

cplx bessel_i(double nu, cplx x) {
  if (std::abs(x) > kMaxArgument) fail(Errc::Overflow, "bessel_i argument too large");
  if (x == cplx(0)) {
    if (nu == 0) return 1.0;
    if (nu > 0 || near_integer(nu)) return 0.0;
    fail(Errc::NonFiniteResult, "I_nu(0) diverges for negative non-integer order");
  }
  // Negative integer order: I_{-n} = I_n.
  if (nu < 0 && near_integer(nu)) nu = -nu;
  lcplx half = lcplx(x) / 2.0L;
  lcplx q = half * half;
  lcplx sum = 0;
  lcplx pow_q = 1;  // q^s / s!
  long double ln = static_cast<long double>(nu);
  long double rg = rgamma(ln + 1);  // 1 / Gamma(nu + s + 1)
  for (int s = 0; s < 2000; ++s) {
    if (s > 0) {
      pow_q *= q / static_cast<long double>(s);
      rg = rg == 0 ? rgamma(ln + s + 1) : rg / (ln + s);
    }
    lcplx term = pow_q * rg;
    sum += term;
    if (s > std::abs(x) + std::abs(nu) + 2 && std::abs(term) <= 1e-17L * std::abs(sum)) break;
  }
  lcplx lead = std::pow(half, ln);
  cplx r(lead * sum);
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) fail(Errc::NonFiniteResult, "bessel_i overflow");
  return r;
}

double bessel_i(double nu, double x) {
  if (x < 0 && !near_integer(nu)) fail(Errc::BranchCut, "bessel_i of real order at negative real argument");
  return bessel_i(nu, cplx(x)).real();
}

cplx bessel_k(double nu, cplx x) {
  if (x == cplx(0)) fail(Errc::NonFiniteResult, "K_nu(0) diverges");
  nu = std::abs(nu);
  if (!near_integer(nu)) return k_from_i(nu, x);
  double n = std::round(nu);
  auto sample = [&](double delta) { return 0.5 * (k_from_i(n + delta, x) + k_from_i(std::abs(n - delta), x)); };
  cplx a1 = sample(1e-3), a2 = sample(5e-4);
  cplx r = (4.0 * a2 - a1) / 3.0;
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) fail(Errc::NonFiniteResult, "bessel_k");
  return r;
}

double bessel_k(double nu, double x) {
  if (x < 0) fail(Errc::BranchCut, "bessel_k at negative real argument");
  return bessel_k(nu, cplx(x)).real();
}

cplx bessel_k_integral(double nu, cplx x) {
  if (x.real() <= 0) fail(Errc::ParamDomain, "integral representation needs Re x > 0");
  auto f = [&](double t) {
    double c = std::cosh(t);
    return std::exp(-x * c) * std::cosh(nu * t);
  };
  // The integrand is below 1e-300 once Re(x) cosh t > 700.
  double t_max = std::acosh(std::max(1.0, 700.0 / x.real()));
  return quadrature::integrate_complex(f, 0.0, t_max, 1e-13);
}

std::vector<Rational> frobenius_coefficients(const Rational& nu, const Rational& alpha, int s_max) {
  if (alpha != nu && alpha != -nu) fail(Errc::ParamDomain, "exponent must be +-nu");
  std::vector<Rational> c(static_cast<std::size_t>(s_max) + 1, Rational(0));
  c[0] = 1;
  for (int k = 1; 2 * k <= s_max; ++k) {
    // 1 / (4^k k! (alpha+1)_k)
    Rational den = 1;
    for (int j = 1; j <= k; ++j) {
      Rational f = alpha + j;
      if (f == 0) fail(Errc::ParamDomain, "resonant exponent: the orders differ by an integer");
      den *= 4 * j * f;
    }
    c[static_cast<std::size_t>(2 * k)] = 1 / den;
  }
  return c;
}

OdeResidual ode_residual(const std::function<double(double)>& y, double nu, const Grid& grid) {
  if (grid.h <= 0 || grid.hi <= grid.lo || (grid.hi - grid.lo) / grid.h < 8)
    fail(Errc::GridTooCoarse, "grid needs at least 8 steps");
  if (grid.lo - 4 * grid.h <= 0) fail(Errc::ParamDomain, "grid must stay inside (0, inf)");
  auto residual = [&](double x, double h, bool richardson) {
    auto d2 = [&](double k) { return (y(x + k) - 2 * y(x) + y(x - k)) / (k * k); };
    auto d1 = [&](double k) { return (y(x + k) - y(x - k)) / (2 * k); };
    double ypp = d2(h), yp = d1(h);
    if (richardson) {
      ypp = (4 * d2(h) - d2(2 * h)) / 3;
      yp = (4 * d1(h) - d1(2 * h)) / 3;
    }
    return std::abs(ypp + yp / x - (1 + nu * nu / (x * x)) * y(x));
  };
  OdeResidual r;
  int steps = static_cast<int>(std::floor((grid.hi - grid.lo) / grid.h + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    double x = grid.lo + i * grid.h;
    r.max_residual = std::max(r.max_residual, residual(x, grid.h, true));
    r.residual_h = std::max(r.residual_h, residual(x, grid.h, false));
    r.residual_2h = std::max(r.residual_2h, residual(x, 2 * grid.h, false));
  }
  r.observed_order = r.residual_h > 0 ? std::log2(r.residual_2h / r.residual_h) : 0;
  return r;
}

OdeResidual ode_residual(OdeKind kind, double nu, double m, const Grid& grid) {
  if (m <= 0) fail(Errc::ParamDomain, "mass must be positive");
  // y(x) = G_nu(x) with x = m r; the grid is in r.
  Grid g{m * grid.lo, m * grid.hi, m * grid.h};
  if (kind == OdeKind::I) return ode_residual([nu](double x) { return bessel_i(nu, x); }, nu, g);
  return ode_residual([nu](double x) { return bessel_k(nu, x); }, nu, g);
}

}  // namespace egren::bessel
