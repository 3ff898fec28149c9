#include "egren/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

#include "egren/error.hpp"

namespace egren::quadrature {

namespace {

Result checked(double value, double error, const char* what) {
  if (!std::isfinite(value)) fail(Errc::QuadratureFailure, std::string(what) + " returned a non-finite value");
  return {value, error};
}

// Boost evaluates near but not at the endpoints; guard against the rare
// evaluation exactly at a singular endpoint.
Fn guarded(const Fn& f) {
  return [&f](double x) {
    double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
}

}  // namespace

Result integrate(const Fn& f, double a, double b, double tol) {
  if (a == b) return {};
  if (a > b) {
    Result r = integrate(f, b, a, tol);
    return {-r.value, r.error};
  }
  Fn g = guarded(f);
  double err = 0, l1 = 0;
  try {
    if (std::isinf(a) && std::isinf(b)) {
      boost::math::quadrature::sinh_sinh<double> q;
      double v = q.integrate(g, tol, &err, &l1);
      return checked(v, err, "sinh-sinh");
    }
    if (std::isinf(b)) {
      boost::math::quadrature::exp_sinh<double> q;
      double v = q.integrate(g, a, b, tol, &err, &l1);
      return checked(v, err, "exp-sinh");
    }
    if (std::isinf(a)) {
      boost::math::quadrature::exp_sinh<double> q;
      double v = q.integrate([&g](double x) { return g(-x); }, -b, std::numeric_limits<double>::infinity(), tol,
                             &err, &l1);
      return checked(v, err, "exp-sinh");
    }
    boost::math::quadrature::tanh_sinh<double> q;
    double v = q.integrate(g, a, b, tol, &err, &l1);
    return checked(v, err, "tanh-sinh");
  } catch (const std::exception& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(Errc::QuadratureFailure, e.what());
  }
}

Result integrate_smooth(const Fn& f, double a, double b, double tol) {
  double err = 0;
  try {
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol, &err);
    return checked(v, err, "gauss-kronrod");
  } catch (const std::exception& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(Errc::QuadratureFailure, e.what());
  }
}

Result integrate_half_line(const Fn& f, double tol) {
  Result a = integrate(f, 0.0, 1.0, tol);
  Result b = integrate(f, 1.0, std::numeric_limits<double>::infinity(), tol);
  return {a.value + b.value, a.error + b.error};
}

Result integrate_line(const Fn& f, double tol) {
  Result pos = integrate_half_line(f, tol);
  Result neg = integrate_half_line([&f](double x) { return f(-x); }, tol);
  return {pos.value + neg.value, pos.error + neg.error};
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       double tol) {
  double re = integrate([&f](double x) { return f(x).real(); }, a, b, tol).value;
  double im = integrate([&f](double x) { return f(x).imag(); }, a, b, tol).value;
  return {re, im};
}

}  // namespace egren::quadrature
