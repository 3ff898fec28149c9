#pragma once

// Thin wrappers over Boost.Math quadrature with domain errors instead of
// silent NaNs.

#include <complex>
#include <functional>

namespace egren::quadrature {

using Fn = std::function<double(double)>;

struct Result {
  double value = 0;
  double error = 0;
};

// Double-exponential rules: tanh-sinh on finite intervals (endpoint
// singularities allowed), exp-sinh on half lines, sinh-sinh on the line.
Result integrate(const Fn& f, double a, double b, double tol = 1e-10);

// Adaptive Gauss-Kronrod (61 points) for smooth integrands.
Result integrate_smooth(const Fn& f, double a, double b, double tol = 1e-10);

// Integral over the real line split at 0 and at +-1.
Result integrate_line(const Fn& f, double tol = 1e-10);

// Integral over [0, inf) split at 1.
Result integrate_half_line(const Fn& f, double tol = 1e-10);

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       double tol = 1e-10);

}  // namespace egren::quadrature
