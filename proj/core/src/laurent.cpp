#include "egren/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "egren/error.hpp"

namespace egren::laurent {

std::string symbol_name(int slot) {
  if (slot == kEulerGamma) return "gamma";
  if (slot == kLn2) return "ln2";
  if (slot == kLogT) return "L";
  return "z" + std::to_string(slot - 3 + 2);
}

std::optional<int> symbol_slot(std::string_view name) {
  for (int s = 0; s < kNumSymbols; ++s)
    if (symbol_name(s) == name) return s;
  return std::nullopt;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kNumSymbols; ++i) {
    int e = exps[i] + other.exps[i];
    if (e > 255) fail(Errc::Overflow, "monomial exponent exceeds 255");
    r.exps[i] = static_cast<std::uint8_t>(e);
  }
  r.pi_halves = static_cast<std::int16_t>(pi_halves + other.pi_halves);
  return r;
}

bool Monomial::is_one() const {
  return pi_halves == 0 && std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

SymbolValues SymbolValues::standard(double log_t) {
  SymbolValues v;
  v.log_t = log_t;
  for (int j = 2; j <= kMaxZetaIndex; ++j) v.zeta[j] = std::riemann_zeta(static_cast<double>(j));
  return v;
}

double SymbolValues::value(int slot) const {
  if (slot == kEulerGamma) return euler_gamma;
  if (slot == kLn2) return ln2;
  if (slot == kLogT) return log_t;
  return zeta[slot - 3 + 2];
}

// ---------------------------------------------------------------- Coeff

Coeff::Coeff(const Rational& q) {
  if (q != 0) terms_.emplace_back(Monomial{}, q);
}

Coeff Coeff::symbol(int slot, int power) {
  Monomial m;
  m.exps[slot] = static_cast<std::uint8_t>(power);
  return from_monomial(m, 1);
}

Coeff Coeff::pi_power_halves(int halves) {
  Monomial m;
  m.pi_halves = static_cast<std::int16_t>(halves);
  return from_monomial(m, 1);
}

Coeff Coeff::from_monomial(const Monomial& m, const Rational& q) {
  Coeff c;
  if (q != 0) c.terms_.emplace_back(m, q);
  return c;
}

std::optional<Rational> Coeff::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].first.is_one()) return terms_[0].second;
  return std::nullopt;
}

int Coeff::max_degree(int slot) const {
  int d = 0;
  for (const auto& [m, q] : terms_) d = std::max<int>(d, m.exps[slot]);
  return d;
}

void Coeff::add_term(const Monomial& m, const Rational& q) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.first < key; });
  if (it != terms_.end() && it->first == m) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  } else if (q != 0) {
    terms_.insert(it, Term{m, q});
  }
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& [m, q] : o.terms_) add_term(m, q);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  for (const auto& [m, q] : o.terms_) add_term(m, -q);
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 && a.terms_[0].first.is_one()) return b * a.terms_[0].second;
  if (b.terms_.size() == 1 && b.terms_[0].first.is_one()) return a * b.terms_[0].second;
  std::map<Monomial, Rational> acc;
  for (const auto& [ma, qa] : a.terms_)
    for (const auto& [mb, qb] : b.terms_) acc[ma * mb] += qa * qb;
  r.terms_.reserve(acc.size());
  for (auto& [m, q] : acc)
    if (q != 0) r.terms_.emplace_back(m, std::move(q));
  return r;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  *this = *this * o;
  return *this;
}

Coeff& Coeff::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= q;
  }
  return *this;
}

Coeff Coeff::operator-() const {
  Coeff r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

bool Coeff::operator==(const Coeff& o) const { return terms_ == o.terms_; }

double Coeff::evaluate(const SymbolValues& v) const {
  double sum = 0.0;
  for (const auto& [m, q] : terms_) {
    double t = q.get_d();
    for (int s = 0; s < kNumSymbols; ++s)
      if (m.exps[s]) t *= std::pow(v.value(s), m.exps[s]);
    if (m.pi_halves) t *= std::pow(v.pi, 0.5 * m.pi_halves);
    sum += t;
  }
  return sum;
}

std::string Coeff::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, q] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << egren::to_string(q);
    for (int s = 0; s < kNumSymbols; ++s) {
      if (!m.exps[s]) continue;
      os << "*" << symbol_name(s);
      if (m.exps[s] > 1) os << "^" << int(m.exps[s]);
    }
    if (m.pi_halves) os << "*pi^(" << m.pi_halves << "/2)";
  }
  return os.str();
}

// ---------------------------------------------------------------- Series

Series::Series(int truncation) : trunc_(std::min(truncation, kExact)) { check_cap(); }

Series Series::constant(const Coeff& c) { return monomial(0, c); }

Series Series::monomial(int power, const Coeff& c, int truncation) {
  Series s(truncation);
  if (power <= s.trunc_) s.put(power, c);
  return s;
}

void Series::check_cap() const {
  if (trunc_ < -kPoleCap) fail(Errc::TruncationUnderflow, "series truncation below the pole cap");
  if (!terms_.empty() && terms_.begin()->first < -kPoleCap)
    fail(Errc::TruncationUnderflow, "pole order exceeds the pole cap");
}

void Series::put(int p, Coeff c) {
  if (c.is_zero()) {
    terms_.erase(p);
  } else {
    terms_[p] = std::move(c);
  }
}

std::optional<int> Series::min_power() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

long long Series::valuation() const {
  if (!terms_.empty()) return terms_.begin()->first;
  if (is_exact()) return static_cast<long long>(kExact);
  return static_cast<long long>(trunc_) + 1;
}

Coeff Series::coefficient(int p) const {
  if (p > trunc_) fail(Errc::TruncationUnderflow, "coefficient beyond truncation requested");
  auto it = terms_.find(p);
  return it == terms_.end() ? Coeff() : it->second;
}

Series& Series::operator+=(const Series& o) {
  int t = std::min(trunc_, o.trunc_);
  for (const auto& [p, c] : o.terms_) {
    if (p > t) break;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  trunc_ = t;
  terms_.erase(terms_.upper_bound(trunc_), terms_.end());
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series Series::operator-() const {
  Series r = *this;
  for (auto& [p, c] : r.terms_) c = -c;
  return r;
}

Series operator*(const Series& a, const Series& b) {
  constexpr long long kNone = std::numeric_limits<long long>::max();
  long long t = std::min(a.is_exact() ? kNone : a.trunc_ + b.valuation(),
                         b.is_exact() ? kNone : b.trunc_ + a.valuation());
  t = std::min<long long>(t, Series::kExact);
  if (t < -Series::kPoleCap) fail(Errc::TruncationUnderflow, "product has no known coefficients");
  Series r(static_cast<int>(t));
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      int p = pa + pb;
      if (p > r.trunc_) break;
      Coeff prod = ca * cb;
      auto it = r.terms_.find(p);
      if (it == r.terms_.end()) {
        if (!prod.is_zero()) r.terms_.emplace(p, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
  }
  r.check_cap();
  return r;
}

Series& Series::operator*=(const Series& o) {
  *this = *this * o;
  return *this;
}

Series Series::scaled(const Coeff& c) const {
  Series r(trunc_);
  for (const auto& [p, x] : terms_) r.put(p, x * c);
  return r;
}

bool Series::operator==(const Series& o) const {
  int t = std::min(trunc_, o.trunc_);
  return std::equal(terms_.begin(), terms_.upper_bound(t), o.terms_.begin(), o.terms_.upper_bound(t),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

bool Series::identical(const Series& o) const {
  return trunc_ == o.trunc_ && terms_.size() == o.terms_.size() && *this == o;
}

Series Series::truncated(int order) const {
  Series r = *this;
  r.trunc_ = std::min(trunc_, order);
  r.terms_.erase(r.terms_.upper_bound(r.trunc_), r.terms_.end());
  r.check_cap();
  return r;
}

Series Series::pp() const {
  if (trunc_ < -1) fail(Errc::TruncationUnderflow, "principal part not fully known");
  Series r;
  for (const auto& [p, c] : terms_) {
    if (p >= 0) break;
    r.terms_.emplace(p, c);
  }
  return r;
}

Series Series::rp() const {
  Series r(trunc_);
  for (auto it = terms_.lower_bound(0); it != terms_.end(); ++it) r.terms_.emplace(it->first, it->second);
  return r;
}

Coeff Series::limit0() const {
  if (!pp().is_zero()) fail(Errc::PoleAtZero, "series has a pole at zeta = 0");
  return coefficient(0);
}

Series Series::rescaled(const Rational& k) const {
  if (k == 0) fail(Errc::UnsupportedArgument, "rescaling by zero");
  Series r(trunc_);
  for (const auto& [p, c] : terms_) r.put(p, c * pow(k, p));
  return r;
}

int Series::max_degree(int slot) const {
  int d = 0;
  for (const auto& [p, c] : terms_) d = std::max(d, c.max_degree(slot));
  return d;
}

double Series::evaluate(double zeta, const SymbolValues& v) const {
  double sum = 0.0;
  for (const auto& [p, c] : terms_) sum += c.evaluate(v) * std::pow(zeta, p);
  return sum;
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (p != 0) os << "*zeta^" << p;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(zeta^" << trunc_ + 1 << ")";
  return os.str();
}

Series pp(const Series& a) { return a.pp(); }
Series rp(const Series& a) { return a.rp(); }
Coeff limit0(const Series& a) { return a.limit0(); }

// ---------------------------------------------------------------- expansions

Series exp_series(const Series& h, int order) {
  int t = std::min(order, h.truncation());
  if (auto mp = h.min_power(); mp && *mp <= 0)
    fail(Errc::UnsupportedArgument, "exp_series needs a series without constant or pole terms");
  std::vector<Coeff> hc(static_cast<std::size_t>(t) + 1), g(static_cast<std::size_t>(t) + 1);
  for (int n = 1; n <= t; ++n) hc[n] = h.coefficient(n);
  g[0] = Coeff(1);
  for (int n = 1; n <= t; ++n) {
    Coeff acc;
    for (int k = 1; k <= n; ++k)
      if (!hc[k].is_zero() && !g[n - k].is_zero()) acc += (hc[k] * g[n - k]) * Rational(k);
    g[n] = acc * Rational(1, n);
  }
  Series r(t);
  for (int n = 0; n <= t; ++n) r += Series::monomial(n, g[n]);
  return r.truncated(t);
}

namespace {

// 1/(a + x) as a series in x, known up to x^order.
Series reciprocal_linear(const Rational& a, int order) {
  Series r(order);
  Rational term = Rational(1) / a;
  for (int m = 0; m <= order; ++m) {
    r += Series::monomial(m, Coeff(term));
    term *= Rational(-1) / a;
  }
  return r.truncated(order);
}

Series linear(const Rational& a) { return Series::constant(Coeff(a)) + Series::monomial(1, Coeff(1)); }

// Gamma(c) for integer c >= 1 or half-integer c, as (rational, has sqrt(pi)).
std::pair<Rational, bool> gamma_exact(const Rational& c) {
  if (is_integer(c)) {
    Rational r = 1;
    for (long i = 2; i < to_long(c.get_num()); ++i) r *= i;
    return {r, false};
  }
  // Gamma(1/2) = sqrt(pi); step up or down with Gamma(x+1) = x Gamma(x).
  Rational r = 1, x(1, 2);
  while (x < c) {
    r *= x;
    x += 1;
  }
  while (x > c) {
    x -= 1;
    r /= x;
  }
  return {r, true};
}

}  // namespace

Series gamma_expand(const Rational& c, const Rational& k, int order, int zeta_symbols, int power) {
  if (!is_integer(c) && !is_half_integer(c))
    fail(Errc::UnsupportedArgument, "Gamma argument constant " + egren::to_string(c) + " is not in Z/2");
  if (power != 1 && power != -1) fail(Errc::UnsupportedArgument, "power must be +1 or -1");
  if (zeta_symbols < 2 || zeta_symbols > kMaxZetaIndex)
    fail(Errc::UnsupportedArgument, "zeta symbol cap out of range");
  const bool half = is_half_integer(c);

  if (k == 0) {
    if (!half && c <= 0) {
      if (power == 1) fail(Errc::RigidPole, "Gamma(" + egren::to_string(c) + ") with zero zeta slope");
      return Series();
    }
    auto [r, sqrt_pi] = gamma_exact(c);
    Coeff value = power == 1 ? Coeff(r) : Coeff(Rational(1) / r);
    if (sqrt_pi) value *= Coeff::pi_power_halves(power);
    return Series::constant(value);
  }

  const int n = zeta_symbols;
  // log Gamma(1+x) or log Gamma(1/2+x) without the constant term.
  Series h(n);
  for (int j = 1; j <= n; ++j) {
    Coeff cj;
    if (j == 1) {
      cj = -Coeff::symbol(kEulerGamma);
      if (half) cj -= Coeff::symbol(kLn2) * Rational(2);
    } else {
      Rational w = Rational(j % 2 == 0 ? 1 : -1, j);
      if (half) w *= (pow(Rational(2), j) - 1);
      cj = Coeff::symbol(zeta_slot(j)) * w;
    }
    h += Series::monomial(j, power == 1 ? cj : -cj);
  }
  Series g = exp_series(h, n);
  if (half) g = g.scaled(Coeff::pi_power_halves(power));

  const int room = n + 2;
  Integer fl = floor(c);
  long base = to_long(fl);
  auto times_factor = [&](const Rational& a, bool divide) {
    if (divide == (power == 1)) {
      if (a == 0) {
        g *= Series::monomial(-1, Coeff(1));
      } else {
        g *= reciprocal_linear(a, room);
      }
    } else {
      g *= linear(a);
    }
  };
  if (!half) {
    // Gamma(c+x) = Gamma(1+x) * prod_{i=1}^{c-1} (i+x)          (c >= 1)
    //            = Gamma(1+x) / prod_{j=c}^{0} (j+x)             (c <= 0)
    if (base >= 1) {
      for (long i = 1; i <= base - 1; ++i) times_factor(Rational(i), false);
    } else {
      for (long j = base; j <= 0; ++j) times_factor(Rational(j), true);
    }
  } else {
    // c = base + 1/2
    if (base >= 0) {
      for (long j = 0; j <= base - 1; ++j) times_factor(Rational(2 * j + 1, 2), false);
    } else {
      for (long j = base; j <= -1; ++j) times_factor(Rational(2 * j + 1, 2), true);
    }
  }
  Series result = g.rescaled(k);
  return result.truncated(std::min(order, result.truncation()));
}

PowerExpansion power_expand(const Rational& c, const Rational& k, int order) {
  PowerExpansion out{c, Series::one()};
  if (k == 0) return out;
  Series s(order);
  Rational fact = 1;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    Coeff cj = j == 0 ? Coeff(1) : Coeff::symbol(kLogT, j) * (pow(k, j) / fact);
    s += Series::monomial(j, cj);
  }
  out.series = s.truncated(order);
  return out;
}

}  // namespace egren::laurent
