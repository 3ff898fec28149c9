#pragma once

// Analytic Hadamard two-point functions of the squared interval z^2 in the
// cut plane C \ [0, inf): the Wightman function, the unique smooth-in-m^2
// function for non-integer Bessel order, and its dimensionally regularized
// even-dimensional counterpart with the zeta -> 0 limit.

#include <complex>
#include <vector>

#include "egren/bessel.hpp"

namespace egren::hadamard {

using cplx = std::complex<double>;

// Overall constant.  Standard is (2 pi)^(-nu-1), which makes the Wightman
// function the unit-normalized Euclidean fundamental solution and matches
// the even-dimensional family.  TwoPiSquared is (2 pi)^(1-nu), the constant
// printed for the odd-dimensional family.
enum class Normalization { Standard, TwoPiSquared };

struct HadamardParams {
  int d = 4;
  double m = 1;
  double mu = 1;
  double zeta = 0;  // used by the even-dimensional regularized variant only
  cplx z2{-1, 0};
  Normalization normalization = Normalization::Standard;
};

enum class Variant { OddUnique, EvenRegularized, EvenLimit, Wightman };

cplx hadamard_eval(const HadamardParams& p, Variant v);

// Independent representations used as cross-checks.
// Odd d: the m^2 power series of the smooth function.
cplx hadamard_odd_series(const HadamardParams& p, int s_max = 80);
// Even d, 0 < |zeta| < 2: the K plus I form, K from its integral representation.
cplx hadamard_even_kform(const HadamardParams& p);

// Coefficients of (m^2)^s, s = 0..s_max, of the even-dimensional
// regularized function (independent of m).
std::vector<cplx> mass_series(const HadamardParams& p, int s_max);

// Scaling degree d + Re(zeta) - 2 - 2s of the (m^2)^s coefficient.
double mass_series_scaling_degree(int d, double zeta, int s);

// pi / (2 sin(zeta pi / 2)) ((m/mu)^zeta - 1).
double alpha(double m, double mu, double zeta);
// Limit of (alpha(zeta) - alpha(0)) / zeta, by symmetric sampling and
// Richardson extrapolation.
double alpha_quotient_limit(double m, double mu);

struct ResidueReport {
  cplx lhs;                  // extrapolated zeta * Btilde as zeta -> 0
  cplx rhs;                  // closed-form residue
  double zeta_abs = 0;       // |zeta Btilde| at zeta = 1e-3
  double zeta_sq_abs = 0;    // |zeta^2 Btilde| at zeta = 1e-3
};
// The singular I-term Btilde of the regularized tilde function.
cplx singular_term(const HadamardParams& p);
ResidueReport residue_check(int d, double m, cplx z2, double mu = 1);

// max |f_y - i f_x| / max(1, |f|) by central differences at the given point.
double cauchy_riemann_residual(const HadamardParams& p, Variant v, double h = 1e-4);

// Error of the degree-`degree` Taylor polynomial in m^2 around p.m^2,
// evaluated at m^2 + delta.
double mass_taylor_error(const HadamardParams& p, double delta, int degree = 4);

// y(x) = x^nu * profile(x / m) on the grid (in r = sqrt(-z^2)), nu the
// effective Bessel order of the variant.
bessel::OdeResidual profile_ode_residual(const HadamardParams& p, Variant v, const bessel::Grid& grid);

}  // namespace egren::hadamard
