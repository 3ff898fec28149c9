#include "egren/hadamard.hpp"

#include <cmath>
#include <numbers>

#include "egren/error.hpp"

namespace egren::hadamard {

namespace {

constexpr double kPi = std::numbers::pi;

cplx cpow(cplx base, double e) { return std::exp(e * std::log(base)); }

void check_cut(cplx z2) {
  double scale = std::max(1.0, std::abs(z2));
  if (z2.real() >= 0 && std::abs(z2.imag()) <= 1e-14 * scale)
    fail(Errc::BranchCut, "z^2 on the cut [0, inf)");
}

void check_common(const HadamardParams& p) {
  if (p.d < 2) fail(Errc::ParamDomain, "dimension must be at least 2");
  if (!(p.m > 0) || !(p.mu > 0)) fail(Errc::ParamDomain, "mass and scale must be positive");
  check_cut(p.z2);
}

void check_even_regularized(const HadamardParams& p) {
  if (p.d % 2 != 0) fail(Errc::ParamDomain, "regularized variant needs even d");
  if (p.zeta == 0 || std::abs(p.zeta) >= 2) fail(Errc::ParamDomain, "regularized variant needs 0 < |zeta| < 2");
}

double nu_of(int d) { return d / 2.0 - 1.0; }

// Standard: (2 pi)^(-nu-1); the printed odd constant is (2 pi)^2 larger.
double norm(const HadamardParams& p, double nu) {
  double c = std::pow(2 * kPi, -nu - 1);
  return p.normalization == Normalization::Standard ? c : c * 4 * kPi * kPi;
}

double parity(int d) { return (d / 2 - 1) % 2 == 0 ? 1.0 : -1.0; }  // (-1)^(d/2 - 1)

double beta(double zeta) { return kPi / (2 * std::sin(zeta * kPi / 2)); }

struct Args {
  cplx mz;  // -z^2
  cplx w;   // m sqrt(-z^2)
};

Args args(const HadamardParams& p) {
  cplx mz = -p.z2;
  return {mz, p.m * std::sqrt(mz)};
}

}  // namespace

cplx hadamard_eval(const HadamardParams& p, Variant v) {
  check_common(p);
  double nu = nu_of(p.d);
  Args a = args(p);
  switch (v) {
    case Variant::Wightman:
      return norm(p, nu) * std::pow(p.m, nu) * cpow(a.mz, -nu / 2) * bessel::bessel_k(nu, a.w);
    case Variant::OddUnique:
      if (p.d % 2 == 0) fail(Errc::ParamDomain, "odd variant needs non-integer Bessel order (odd d)");
      return norm(p, nu) * std::pow(p.m, nu) * cpow(a.mz, -nu / 2) * (kPi / (2 * std::sin(nu * kPi))) *
             bessel::bessel_i(-nu, a.w);
    case Variant::EvenRegularized: {
      check_even_regularized(p);
      double nup = nu + p.zeta / 2;
      double ratio = std::pow(p.m / p.mu, p.zeta);
      cplx bracket = ratio * bessel::bessel_i(-nup, a.w) - bessel::bessel_i(nup, a.w);
      return norm(p, nu) * std::pow(p.m, 2 * nu) * cpow(a.w, -nup) * parity(p.d) * beta(p.zeta) * bracket;
    }
    case Variant::EvenLimit: {
      if (p.d % 2 != 0) fail(Errc::ParamDomain, "even limit needs even d");
      double sign = (p.d / 2) % 2 == 0 ? 1.0 : -1.0;
      double lg = std::log(p.mu * p.mu / (p.m * p.m));
      cplx bracket = bessel::bessel_k(nu, a.w) + sign / 2 * lg * bessel::bessel_i(nu, a.w);
      return norm(p, nu) * std::pow(p.m, nu) * cpow(a.mz, -nu / 2) * bracket;
    }
  }
  return {};
}

cplx hadamard_odd_series(const HadamardParams& p, int s_max) {
  check_common(p);
  if (p.d % 2 == 0) fail(Errc::ParamDomain, "odd series needs odd d");
  double nu = nu_of(p.d);
  cplx mz = -p.z2;
  cplx q = mz * p.m * p.m / 4.0;
  cplx sum = 0, qs = 1;
  for (int s = 0; s <= s_max; ++s) {
    if (s > 0) qs *= q / static_cast<double>(s);
    sum += qs / std::tgamma(s + 1 - nu);
  }
  return norm(p, nu) * (kPi / (2 * std::sin(nu * kPi))) * std::pow(2.0, nu) * cpow(mz, -nu) * sum;
}

cplx hadamard_even_kform(const HadamardParams& p) {
  check_common(p);
  check_even_regularized(p);
  double nu = nu_of(p.d);
  double nup = nu + p.zeta / 2;
  Args a = args(p);
  double ratio = std::pow(p.m / p.mu, p.zeta);
  cplx bracket = ratio * bessel::bessel_k_integral(nup, a.w) +
                 parity(p.d) * beta(p.zeta) * std::expm1(p.zeta * std::log(p.m / p.mu)) * bessel::bessel_i(nup, a.w);
  return norm(p, nu) * std::pow(p.m, 2 * nu) * cpow(a.w, -nup) * bracket;
}

std::vector<cplx> mass_series(const HadamardParams& p, int s_max) {
  check_common(p);
  check_even_regularized(p);
  int nu = p.d / 2 - 1;
  double nup = nu + p.zeta / 2;
  cplx mz = -p.z2;
  cplx root = std::sqrt(mz);
  cplx pre = norm(p, nu) * parity(p.d) * std::pow(2.0, -nup) * beta(p.zeta);
  cplx scale = cpow(2.0 / (p.mu * root), p.zeta);
  std::vector<cplx> out;
  for (int s = 0; s <= s_max; ++s) {
    cplx brace = scale / (std::tgamma(s + 1.0) * std::tgamma(s + 1 - nu - p.zeta / 2));
    if (s >= nu) brace -= 1.0 / (std::tgamma(s - nu + 1.0) * std::tgamma(p.zeta / 2 + s + 1));
    out.push_back(pre * brace * std::pow(root / 2.0, 2 * s - 2 * nu));
  }
  return out;
}

double mass_series_scaling_degree(int d, double zeta, int s) { return d + zeta - 2 - 2.0 * s; }

double alpha(double m, double mu, double zeta) {
  if (!(m > 0) || !(mu > 0)) fail(Errc::ParamDomain, "mass and scale must be positive");
  double l = std::log(m / mu);
  if (zeta == 0) return l;
  return beta(zeta) * std::expm1(zeta * l);
}

double alpha_quotient_limit(double m, double mu) {
  double a0 = alpha(m, mu, 0);
  auto sym = [&](double h) { return 0.5 * ((alpha(m, mu, h) - a0) / h + (alpha(m, mu, -h) - a0) / -h); };
  double h = 1e-2;
  return (4 * sym(h / 2) - sym(h)) / 3;
}

cplx singular_term(const HadamardParams& p) {
  check_common(p);
  check_even_regularized(p);
  double nu = nu_of(p.d);
  double nup = nu + p.zeta / 2;
  Args a = args(p);
  return norm(p, nup) * std::pow(p.mu, -p.zeta) * std::pow(p.m, nup) * cpow(a.mz, -nup / 2) * parity(p.d) *
         beta(p.zeta) * bessel::bessel_i(nup, a.w);
}

ResidueReport residue_check(int d, double m, cplx z2, double mu) {
  HadamardParams p;
  p.d = d;
  p.m = m;
  p.mu = mu;
  p.z2 = z2;
  auto g = [&](double zeta) {
    p.zeta = zeta;
    return zeta * singular_term(p);
  };
  auto sym = [&](double h) { return 0.5 * (g(h) + g(-h)); };
  ResidueReport r;
  double h = 1e-2;
  r.lhs = (4.0 * sym(h / 2) - sym(h)) / 3.0;
  check_common(p);
  double nu = nu_of(d);
  Args a = args(p);
  r.rhs = parity(d) * std::pow(2 * kPi, -d / 2.0) * std::pow(m, nu) * cpow(a.mz, -nu / 2) * bessel::bessel_i(nu, a.w);
  p.zeta = 1e-3;
  cplx b = singular_term(p);
  r.zeta_abs = std::abs(1e-3 * b);
  r.zeta_sq_abs = std::abs(1e-6 * b);
  return r;
}

double cauchy_riemann_residual(const HadamardParams& p, Variant v, double h) {
  auto f = [&](cplx z2) {
    HadamardParams q = p;
    q.z2 = z2;
    return hadamard_eval(q, v);
  };
  cplx fx = (f(p.z2 + h) - f(p.z2 - h)) / (2 * h);
  cplx fy = (f(p.z2 + cplx(0, h)) - f(p.z2 - cplx(0, h))) / (2 * h);
  return std::abs(fy - cplx(0, 1) * fx) / std::max(1.0, std::abs(f(p.z2)));
}

double mass_taylor_error(const HadamardParams& p, double delta, int degree) {
  auto c = mass_series(p, 80);
  double m0 = p.m * p.m;
  cplx taylor = 0;
  for (int j = 0; j <= degree; ++j) {
    cplx deriv = 0;  // P^(j)(m0) / j!
    for (int s = j; s < static_cast<int>(c.size()); ++s) {
      double binom = std::exp(std::lgamma(s + 1.0) - std::lgamma(j + 1.0) - std::lgamma(s - j + 1.0));
      deriv += c[static_cast<std::size_t>(s)] * binom * std::pow(m0, s - j);
    }
    taylor += deriv * std::pow(delta, j);
  }
  HadamardParams q = p;
  q.m = std::sqrt(m0 + delta);
  return std::abs(hadamard_eval(q, Variant::EvenRegularized) - taylor);
}

bessel::OdeResidual profile_ode_residual(const HadamardParams& p, Variant v, const bessel::Grid& grid) {
  double nu = nu_of(p.d) + (v == Variant::EvenRegularized ? p.zeta / 2 : 0.0);
  bessel::Grid g{p.m * grid.lo, p.m * grid.hi, p.m * grid.h};
  auto y = [&](double x) {
    HadamardParams q = p;
    double r = x / p.m;
    q.z2 = cplx(-r * r, 0);
    return std::pow(x, nu) * hadamard_eval(q, v).real();
  };
  return bessel::ode_residual(y, nu, g);
}

}  // namespace egren::hadamard
