#pragma once

// One-dimensional extension lab: power kernels on R \ {0}, scaling-degree
// probes, W-projections and W-extensions, weak Euler homogeneity, projectors
// onto homogeneous components, and analytic regularization with minimal
// subtraction against Gaussian test functions.

#include <functional>
#include <optional>
#include <vector>

#include "egren/laurent.hpp"
#include "egren/rational.hpp"

namespace egren::extend {

// Sum of c_j |x|^(beta_j - slope_j zeta).
struct PowerTerm {
  double coeff = 1;
  double beta = 0;
  double zeta_slope = 0;
};

class PowerKernel {
 public:
  PowerKernel() = default;
  explicit PowerKernel(std::vector<PowerTerm> terms);
  static PowerKernel power(double beta, double coeff = 1, double zeta_slope = 0);

  const std::vector<PowerTerm>& terms() const { return terms_; }
  double operator()(double x, double zeta = 0) const;
  // max over terms of -beta (d = 1).
  double scaling_degree() const;
  // floor(sd - 1); negative for kernels with a unique extension.
  int divergence() const;

 private:
  std::vector<PowerTerm> terms_;
};

// Finite sum of P_j(x) exp(-c_j x^2).
struct GaussianTerm {
  std::vector<double> poly;  // poly[i] multiplies x^i
  double c = 1;
};

class TestFunction {
 public:
  TestFunction() = default;
  explicit TestFunction(std::vector<GaussianTerm> terms);
  static TestFunction gaussian(double c = 1, double amplitude = 1);
  static TestFunction gaussian_poly(std::vector<double> poly, double c = 1);

  const std::vector<GaussianTerm>& terms() const { return terms_; }
  double operator()(double x) const;
  TestFunction derivative() const;
  // f^(m)(0) for m = 0..n.
  std::vector<double> jet(int n) const;
  // (-1 - D) f - x f', the transpose of x d/dx - D.
  TestFunction euler_dual(double degree) const;
  // A single term exp(-x^2) times a polynomial.
  bool is_unit_gaussian() const;

  TestFunction& operator+=(const TestFunction& o);
  TestFunction& operator*=(double s);
  friend TestFunction operator+(TestFunction a, const TestFunction& b) { return a += b; }
  friend TestFunction operator*(double s, TestFunction a) { return a *= s; }
  friend TestFunction operator-(TestFunction a, const TestFunction& b) { return a += -1.0 * b; }

 private:
  std::vector<GaussianTerm> terms_;
};

// Functions w_alpha, alpha = 0..lambda, with w_alpha^(beta)(0) = delta.
class WFamily {
 public:
  // lambda = -1 means no subtraction.
  WFamily(int lambda, std::vector<TestFunction> w);
  // w_alpha = x^alpha / alpha! exp(-c x^2) T(c x^2), T the Taylor polynomial
  // of exp that restores the dual-basis condition up to lambda.
  static WFamily standard(int lambda, double c = 1);

  int lambda() const { return lambda_; }
  const std::vector<TestFunction>& functions() const { return w_; }
  // max |w_alpha^(beta)(0) - delta| over alpha, beta <= lambda.
  double dual_basis_defect() const;

 private:
  int lambda_;
  std::vector<TestFunction> w_;
};

// Wf = f - sum f^(alpha)(0) w_alpha.
TestFunction w_project(const TestFunction& f, const WFamily& w);

// <W' u~, f> = int u(x) (Wf)(x) dx, split at 0.
double extend_eval(const PowerKernel& u, const WFamily& w, const TestFunction& f);

// |<u, (-x d - 1 - D) f>|; with several degrees the dual operators are
// applied in sequence.
double euler_residual(const PowerKernel& u, double degree, const TestFunction& f);
double euler_residual(const PowerKernel& u, const std::vector<double>& degrees, const TestFunction& f);

// prod_{j != i} (x d - alpha_j) / (alpha_i - alpha_j), acting diagonally.
PowerKernel hetero_project(const PowerKernel& u, const std::vector<double>& multidegree, std::size_t i);

std::vector<double> geometric_grid(double lo, double hi, int n);
// -slope of log|<u(rho .), phi>| against log rho.
double scaling_probe(const std::function<double(double)>& u, const TestFunction& phi, const std::vector<double>& rhos);
double scaling_probe(const PowerKernel& u, const TestFunction& phi, const std::vector<double>& rhos);

struct MsPoint {
  double zeta = 0;
  double rp_value = 0;     // <u^zeta, f> - pp at this zeta
  double projected = 0;    // <u^zeta, W^MS f> by quadrature
};

struct Ms1dResult {
  std::optional<laurent::Series> series;  // absent when Gamma arguments are not (half-)integers
  laurent::Series pp;
  double ms_value = 0;
  double w_ms_check = 0;  // <u^zeta, W^MS f> extrapolated from +-zeta to 0
  std::vector<MsPoint> points;
};

// Minimal-subtraction family for u^zeta = |x|^(-a - k zeta): w_0 = (1 + b x^2)
// exp(-x^2) with b fixed by MS<u, w_0> = 0, w_1 = x exp(-x^2).  Needs a < 3.
WFamily ms_family(const Rational& a, const Rational& k);

// <|x|^(-a - k zeta), f> for f = P(x) exp(-x^2), numerically at zeta.
double gaussian_pairing(double a, double k, double zeta, const TestFunction& f);

Ms1dResult analytic_ms_1d(const Rational& a, const Rational& k, const TestFunction& f, int order = 2,
                          const std::vector<double>& zetas = {0.1, 0.05, 0.025, 0.0125});

// Polynomial extrapolation of (x_i, y_i) to x = 0.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace egren::extend
