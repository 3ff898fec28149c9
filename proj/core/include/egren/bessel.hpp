#pragma once

// Modified Bessel functions of real order and complex argument, and a
// finite-difference residual of the modified Bessel equation.

#include <complex>
#include <functional>
#include <vector>

#include "egren/rational.hpp"

namespace egren::bessel {

using cplx = std::complex<double>;

// Arguments with |x| above this raise Overflow.
inline constexpr double kMaxArgument = 600.0;

// Power series, summed until the relative tail drops below 1e-14.
cplx bessel_i(double nu, cplx x);
double bessel_i(double nu, double x);

// Non-integer order: pi / (2 sin(nu pi)) (I_{-nu} - I_nu).  Integer order:
// symmetric off-integer samples at delta = 1e-3 and 5e-4 combined by
// Richardson extrapolation.
cplx bessel_k(double nu, cplx x);
double bessel_k(double nu, double x);

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, Re x > 0.
cplx bessel_k_integral(double nu, cplx x);

// Series coefficients c_{2k} (c_0 = 1, odd ones vanish) of the Frobenius
// solution x^alpha sum c_s x^s, alpha = +-nu, in closed Pochhammer form.
std::vector<Rational> frobenius_coefficients(const Rational& nu, const Rational& alpha, int s_max);

struct Grid {
  double lo = 0;
  double hi = 0;
  double h = 0;
};

struct OdeResidual {
  double max_residual = 0;    // Richardson-combined second derivative
  double residual_h = 0;      // plain central differences at step h
  double residual_2h = 0;     // plain central differences at step 2h
  double observed_order = 0;  // log2(residual_2h / residual_h)
};

// max |y'' + y'/x - (1 + nu^2/x^2) y| over the grid.
OdeResidual ode_residual(const std::function<double(double)>& y, double nu, const Grid& grid);

enum class OdeKind { I, K };
OdeResidual ode_residual(OdeKind kind, double nu, double m, const Grid& grid);

}  // namespace egren::bessel
