#include "egren/extend.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "egren/error.hpp"
#include "egren/quadrature.hpp"

namespace egren::extend {

namespace {

constexpr int kMaxJet = 24;

double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double horner(const std::vector<double>& p, double x) {
  double r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

void trim(std::vector<double>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

PowerKernel::PowerKernel(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
  std::set<std::pair<double, double>> seen;
  for (const auto& t : terms_) {
    if (!std::isfinite(t.beta) || !std::isfinite(t.coeff) || !std::isfinite(t.zeta_slope))
      fail(Errc::ParamDomain, "power kernel entries must be finite");
    if (!seen.insert({t.beta, t.zeta_slope}).second)
      fail(Errc::ParamDomain, "power kernel exponents must be pairwise distinct");
  }
}

PowerKernel PowerKernel::power(double beta, double coeff, double zeta_slope) {
  return PowerKernel({PowerTerm{coeff, beta, zeta_slope}});
}

double PowerKernel::operator()(double x, double zeta) const {
  double ax = std::fabs(x);
  double s = 0;
  for (const auto& t : terms_) s += t.coeff * std::pow(ax, t.beta - t.zeta_slope * zeta);
  return s;
}

double PowerKernel::scaling_degree() const {
  if (terms_.empty()) return -INFINITY;
  double sd = -INFINITY;
  for (const auto& t : terms_) sd = std::max(sd, -t.beta);
  return sd;
}

int PowerKernel::divergence() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(std::floor(scaling_degree() - 1));
}

TestFunction::TestFunction(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) {
  for (auto& t : terms_) {
    if (!(t.c > 0) || !std::isfinite(t.c)) fail(Errc::ParamDomain, "Gaussian width must be positive");
    trim(t.poly);
  }
  std::erase_if(terms_, [](const GaussianTerm& t) { return t.poly.empty(); });
}

TestFunction TestFunction::gaussian(double c, double amplitude) {
  return TestFunction({GaussianTerm{{amplitude}, c}});
}

TestFunction TestFunction::gaussian_poly(std::vector<double> poly, double c) {
  return TestFunction({GaussianTerm{std::move(poly), c}});
}

double TestFunction::operator()(double x) const {
  double s = 0;
  for (const auto& t : terms_) s += horner(t.poly, x) * std::exp(-t.c * x * x);
  return s;
}

TestFunction TestFunction::derivative() const {
  std::vector<GaussianTerm> out;
  for (const auto& t : terms_) {
    std::vector<double> q(t.poly.size() + 1, 0.0);
    for (std::size_t i = 1; i < t.poly.size(); ++i) q[i - 1] += static_cast<double>(i) * t.poly[i];
    for (std::size_t i = 0; i < t.poly.size(); ++i) q[i + 1] -= 2 * t.c * t.poly[i];
    out.push_back({std::move(q), t.c});
  }
  return TestFunction(std::move(out));
}

std::vector<double> TestFunction::jet(int n) const {
  if (n > kMaxJet) fail(Errc::DerivativeUnavailable, "jet order " + std::to_string(n) + " exceeds " + std::to_string(kMaxJet));
  std::vector<double> out(n + 1, 0.0);
  for (const auto& t : terms_) {
    for (int m = 0; m <= n; ++m) {
      double tm = 0;
      double cj = 1;  // (-c)^j / j!
      for (int j = 0; 2 * j <= m; ++j) {
        std::size_t i = static_cast<std::size_t>(m - 2 * j);
        if (i < t.poly.size()) tm += t.poly[i] * cj;
        cj *= -t.c / (j + 1);
      }
      out[m] += tm * factorial(m);
    }
  }
  return out;
}

TestFunction TestFunction::euler_dual(double degree) const {
  TestFunction xd = derivative();
  for (auto& t : xd.terms_) t.poly.insert(t.poly.begin(), 0.0);
  return (-1 - degree) * *this - xd;
}

bool TestFunction::is_unit_gaussian() const { return terms_.size() == 1 && terms_[0].c == 1; }

TestFunction& TestFunction::operator+=(const TestFunction& o) {
  for (const auto& t : o.terms_) {
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const GaussianTerm& s) { return s.c == t.c; });
    if (it == terms_.end()) {
      terms_.push_back(t);
      continue;
    }
    if (it->poly.size() < t.poly.size()) it->poly.resize(t.poly.size(), 0.0);
    for (std::size_t i = 0; i < t.poly.size(); ++i) it->poly[i] += t.poly[i];
    trim(it->poly);
  }
  std::erase_if(terms_, [](const GaussianTerm& t) { return t.poly.empty(); });
  return *this;
}

TestFunction& TestFunction::operator*=(double s) {
  for (auto& t : terms_)
    for (auto& p : t.poly) p *= s;
  if (s == 0) terms_.clear();
  return *this;
}

WFamily::WFamily(int lambda, std::vector<TestFunction> w) : lambda_(lambda), w_(std::move(w)) {
  if (lambda < -1) fail(Errc::ParamDomain, "subtraction order must be >= -1");
  if (static_cast<int>(w_.size()) != lambda + 1)
    fail(Errc::ParamDomain, "W family needs lambda + 1 functions");
  if (dual_basis_defect() > 1e-12) fail(Errc::ParamDomain, "W family violates the dual-basis condition");
}

WFamily WFamily::standard(int lambda, double c) {
  std::vector<TestFunction> w;
  for (int alpha = 0; alpha <= lambda; ++alpha) {
    std::vector<double> poly(static_cast<std::size_t>(lambda + 1), 0.0);
    double cj = 1 / factorial(alpha);
    for (int j = 0; alpha + 2 * j <= lambda; ++j) {
      poly[static_cast<std::size_t>(alpha + 2 * j)] = cj;
      cj *= c / (j + 1);
    }
    w.push_back(TestFunction::gaussian_poly(std::move(poly), c));
  }
  return WFamily(lambda, std::move(w));
}

double WFamily::dual_basis_defect() const {
  double worst = 0;
  for (int a = 0; a <= lambda_; ++a) {
    auto j = w_[static_cast<std::size_t>(a)].jet(lambda_);
    for (int b = 0; b <= lambda_; ++b) worst = std::max(worst, std::fabs(j[static_cast<std::size_t>(b)] - (a == b)));
  }
  return worst;
}

TestFunction w_project(const TestFunction& f, const WFamily& w) {
  if (w.lambda() < 0) return f;
  auto j = f.jet(w.lambda());
  TestFunction out = f;
  for (int a = 0; a <= w.lambda(); ++a) out += (-j[static_cast<std::size_t>(a)]) * w.functions()[static_cast<std::size_t>(a)];
  return out;
}

double extend_eval(const PowerKernel& u, const WFamily& w, const TestFunction& f) {
  if (u.divergence() > w.lambda())
    fail(Errc::InsufficientSubtractionOrder, "degree of divergence " + std::to_string(u.divergence()) +
                                                 " exceeds subtraction order " + std::to_string(w.lambda()));
  TestFunction wf = w_project(f, w);
  return quadrature::integrate_line([&](double x) { return u(x) * wf(x); }).value;
}

double euler_residual(const PowerKernel& u, double degree, const TestFunction& f) {
  return euler_residual(u, std::vector<double>{degree}, f);
}

double euler_residual(const PowerKernel& u, const std::vector<double>& degrees, const TestFunction& f) {
  TestFunction g = f;
  for (auto it = degrees.rbegin(); it != degrees.rend(); ++it) g = g.euler_dual(*it);
  int div = u.divergence();
  if (div >= 0) {
    auto j = g.jet(div);
    double scale = 0;
    for (double v : f.jet(div)) scale = std::max(scale, std::fabs(v));
    for (double v : j)
      if (std::fabs(v) > 1e-12 * std::max(1.0, scale))
        fail(Errc::ParamDomain, "kernel is not integrable against the dualized test function");
  }
  return std::fabs(quadrature::integrate_line([&](double x) { return u(x) * g(x); }).value);
}

PowerKernel hetero_project(const PowerKernel& u, const std::vector<double>& multidegree, std::size_t i) {
  if (i >= multidegree.size()) fail(Errc::IndexOutOfRange, "component index out of range");
  for (std::size_t a = 0; a < multidegree.size(); ++a)
    for (std::size_t b = a + 1; b < multidegree.size(); ++b)
      if (multidegree[a] == multidegree[b]) fail(Errc::DegenerateMultidegree, "multidegree entries must be distinct");
  std::vector<PowerTerm> out;
  for (const auto& t : u.terms()) {
    if (std::find(multidegree.begin(), multidegree.end(), t.beta) == multidegree.end())
      fail(Errc::ParamDomain, "kernel exponent missing from the multidegree");
    double factor = 1;
    for (std::size_t j = 0; j < multidegree.size(); ++j)
      if (j != i) factor *= (t.beta - multidegree[j]) / (multidegree[i] - multidegree[j]);
    if (factor != 0) out.push_back({t.coeff * factor, t.beta, t.zeta_slope});
  }
  return PowerKernel(std::move(out));
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2) fail(Errc::ParamDomain, "geometric grid needs 0 < lo < hi and n >= 2");
  std::vector<double> out;
  double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo * std::exp(r * i));
  return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(Errc::ParamDomain, "slope fit needs matching samples");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(std::fabs(y[i]));
    if (!std::isfinite(lx) || !std::isfinite(ly)) fail(Errc::NonFiniteResult, "log of a zero sample");
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double scaling_probe(const std::function<double(double)>& u, const TestFunction& phi, const std::vector<double>& rhos) {
  if (rhos.size() < 8) fail(Errc::GridTooCoarse, "scaling probe needs at least 8 scales");
  std::vector<double> vals;
  for (double rho : rhos) {
    if (!(rho > 0)) fail(Errc::ParamDomain, "scales must be positive");
    vals.push_back(quadrature::integrate_line([&](double x) { return u(rho * x) * phi(x); }).value);
  }
  return -log_log_slope(rhos, vals);
}

double scaling_probe(const PowerKernel& u, const TestFunction& phi, const std::vector<double>& rhos) {
  return scaling_probe([&](double x) { return u(x); }, phi, rhos);
}

double gaussian_pairing(double a, double k, double zeta, const TestFunction& f) {
  if (!f.is_unit_gaussian()) fail(Errc::NonGaussianUnsupported, "closed form needs P(x) exp(-x^2)");
  const auto& p = f.terms()[0].poly;
  double s = 0;
  for (std::size_t i = 0; i < p.size(); i += 2)
    if (p[i] != 0) s += p[i] * std::tgamma((static_cast<double>(i) + 1 - a - k * zeta) / 2);
  return s;
}

namespace {

bool exact_route(const Rational& a) { return is_integer(a); }

// MS value of <|x|^(-a - k zeta), exp(-x^2)>.
double ms_unit(const Rational& a, const Rational& k) {
  if (!exact_route(a)) return std::tgamma((1 - to_double(a)) / 2);
  Rational c = (1 - a) / 2;
  return laurent::gamma_expand(c, -k / 2, 1).rp().limit0().evaluate(laurent::SymbolValues::standard());
}

}  // namespace

WFamily ms_family(const Rational& a, const Rational& k) {
  if (k == 0) fail(Errc::ParamDomain, "zeta slope must be nonzero");
  if (a >= 3) fail(Errc::InsufficientSubtractionOrder, "minimal-subtraction family is available for a < 3");
  int lambda = static_cast<int>(to_long(floor(a - 1)));
  if (lambda < 0) return WFamily(-1, {});
  double b = -ms_unit(a, k) / std::tgamma((3 - to_double(a)) / 2);
  std::vector<TestFunction> w{TestFunction::gaussian_poly({1, 0, b})};
  if (lambda >= 1) w.push_back(TestFunction::gaussian_poly({0, 1}));
  return WFamily(lambda, std::move(w));
}

double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) fail(Errc::ParamDomain, "extrapolation needs matching samples");
  std::vector<double> p = y;
  for (std::size_t m = 1; m < x.size(); ++m)
    for (std::size_t i = 0; i + m < x.size(); ++i) p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
  return p[0];
}

Ms1dResult analytic_ms_1d(const Rational& a, const Rational& k, const TestFunction& f, int order,
                          const std::vector<double>& zetas) {
  if (!f.is_unit_gaussian()) fail(Errc::NonGaussianUnsupported, "analytic pairing needs P(x) exp(-x^2)");
  if (order < 0) fail(Errc::ParamDomain, "order must be >= 0");
  if (zetas.empty()) fail(Errc::ParamDomain, "need at least one zeta sample");
  WFamily w = ms_family(a, k);
  const auto& p = f.terms()[0].poly;
  Ms1dResult out;
  if (exact_route(a)) {
    int symbols = std::min(laurent::kMaxZetaIndex, std::max(8, order + 3));
    laurent::Series s;
    for (std::size_t i = 0; i < p.size(); i += 2) {
      if (p[i] == 0) continue;
      Rational c = (Rational(static_cast<long>(i)) + 1 - a) / 2;
      s += laurent::gamma_expand(c, -k / 2, order, symbols).scaled(laurent::Coeff(Rational(p[i])));
    }
    out.pp = s.pp();
    out.ms_value = s.rp().limit0().evaluate(laurent::SymbolValues::standard());
    out.series = std::move(s);
  } else {
    out.ms_value = gaussian_pairing(to_double(a), to_double(k), 0, f);
  }
  TestFunction wf = w_project(f, w);
  double ad = to_double(a), kd = to_double(k);
  auto sv = laurent::SymbolValues::standard();
  auto projected = [&](double z) {
    return quadrature::integrate_line([&](double x) { return std::pow(std::fabs(x), -ad - kd * z) * wf(x); }).value;
  };
  // <u^zeta, W^MS f> is analytic across zeta = 0, so the even part is
  // extrapolated in zeta^2.
  std::vector<double> z2, even;
  for (double z : zetas) {
    MsPoint pt;
    pt.zeta = z;
    pt.rp_value = gaussian_pairing(ad, kd, z, f) - out.pp.evaluate(z, sv);
    pt.projected = projected(z);
    z2.push_back(z * z);
    even.push_back((pt.projected + projected(-z)) / 2);
    out.points.push_back(pt);
  }
  out.w_ms_check = extrapolate_to_zero(z2, even);
  return out;
}

}  // namespace egren::extend
