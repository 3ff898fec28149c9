#include <cmath>

#include "egren/error.hpp"
#include "egren/extend.hpp"
#include "egren/quadrature.hpp"
#include "egren/renorm.hpp"

namespace egren::renorm {

RedundantProjectionReport redundant_projection_check(const Rational& aG, const Rational& a_gamma, const Rational& k,
                                                     const std::vector<double>& zetas, bool control) {
  using extend::TestFunction;
  if (zetas.size() < 2) fail(Errc::ParamDomain, "need at least two zeta samples");
  if (a_gamma >= 3) fail(Errc::InsufficientSubtractionOrder, "inner kernel needs a_gamma < 3");
  TestFunction f = TestFunction::gaussian();
  auto outer = extend::analytic_ms_1d(aG, k, f, 2, zetas);
  auto inner = extend::analytic_ms_1d(a_gamma, k / 2, f, 2, zetas);
  auto w = extend::ms_family(aG, k);
  TestFunction wf = extend::w_project(f, w);
  auto sv = laurent::SymbolValues::standard();
  double ad = to_double(aG), kd = to_double(k), quotient = to_double(aG - a_gamma);

  RedundantProjectionReport rep;
  for (const auto& pt : outer.points) {
    double z = pt.zeta;
    // pp(u_gamma) = C(zeta) delta; f = exp(-x^2) has f(0) = 1.
    double c_gamma = inner.pp.evaluate(z, sv);
    double local = 0;
    if (control) {
      local = c_gamma * f(0);
    } else {
      // u_{G-gamma} Wf at the shared vertex: Wf = O(x^(lambda+1)) beats the quotient exponent.
      if (quotient + kd * z / 2 >= w.lambda() + 1)
        fail(Errc::ParamDomain, "quotient kernel too singular for the outer projection");
    }
    ResidualPoint r;
    r.zeta = z;
    r.lhs = pt.rp_value;
    r.rhs = pt.projected - local;
    r.residual = std::fabs(r.lhs - r.rhs);
    rep.points.push_back(r);
  }
  std::vector<double> zs, res;
  for (const auto& r : rep.points) {
    zs.push_back(r.zeta);
    res.push_back(r.residual);
  }
  rep.fitted_order = extend::log_log_slope(zs, res);
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < zs.size(); ++i)
    if (zs[i] < zs[smallest]) smallest = i;
  rep.unsubtracted = std::fabs(extend::gaussian_pairing(ad, kd, zs[smallest], f));
  return rep;
}

}  // namespace egren::renorm
