#pragma once

// Truncated Laurent series in the regularization variable zeta.
//
// Coefficients are exact rational polynomials in the transcendental symbols
// gamma (Euler-Mascheroni), ln2, L (= log t of the external scale) and the
// zeta values z2..z16, times an integer power of pi^(1/2).  Zeta values are
// never reduced to powers of pi.

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egren/rational.hpp"

namespace egren::laurent {

inline constexpr int kMaxZetaIndex = 16;
inline constexpr int kNumSymbols = 3 + (kMaxZetaIndex - 1);

inline constexpr int kEulerGamma = 0;
inline constexpr int kLn2 = 1;
inline constexpr int kLogT = 2;
// Slot of the symbol z_j = zeta(j), 2 <= j <= kMaxZetaIndex.
constexpr int zeta_slot(int j) { return 3 + (j - 2); }

std::string symbol_name(int slot);
std::optional<int> symbol_slot(std::string_view name);

struct Monomial {
  std::array<std::uint8_t, kNumSymbols> exps{};
  std::int16_t pi_halves = 0;

  auto operator<=>(const Monomial&) const = default;
  Monomial operator*(const Monomial& other) const;
  bool is_one() const;
};

// Numeric values used when a coefficient is evaluated in floating point.
struct SymbolValues {
  double euler_gamma = 0.57721566490153286061;
  double ln2 = 0.69314718055994530942;
  double log_t = 0.0;
  double pi = 3.14159265358979323846;
  std::array<double, kMaxZetaIndex + 1> zeta{};

  static SymbolValues standard(double log_t = 0.0);
  double value(int slot) const;
};

class Coeff {
 public:
  using Term = std::pair<Monomial, Rational>;

  Coeff() = default;
  Coeff(const Rational& q);  // NOLINT: constants convert implicitly
  Coeff(long q) : Coeff(Rational(q)) {}  // NOLINT

  static Coeff symbol(int slot, int power = 1);
  static Coeff pi_power_halves(int halves);
  static Coeff from_monomial(const Monomial& m, const Rational& q);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::optional<Rational> as_rational() const;
  int max_degree(int slot) const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff& operator*=(const Rational& q);
  Coeff operator-() const;
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator*(Coeff a, const Rational& q) { return a *= q; }
  bool operator==(const Coeff& o) const;

  double evaluate(const SymbolValues& v) const;
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& q);
  std::vector<Term> terms_;  // sorted by monomial, no zero rationals
};

class Series {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;
  static constexpr int kPoleCap = 64;

  Series() = default;  // exact zero
  explicit Series(int truncation);
  static Series constant(const Coeff& c);
  static Series monomial(int power, const Coeff& c, int truncation = kExact);
  static Series one() { return constant(Coeff(1)); }

  int truncation() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kExact; }
  const std::map<int, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::optional<int> min_power() const;
  // Coefficient of zeta^p; throws TruncationUnderflow for p beyond the truncation.
  Coeff coefficient(int p) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Series& o);
  Series operator-() const;
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  Series scaled(const Coeff& c) const;

  // Equality of all coefficients up to the common truncation order.
  bool operator==(const Series& o) const;
  // Same truncation and same stored coefficients.
  bool identical(const Series& o) const;

  Series truncated(int order) const;
  Series pp() const;
  Series rp() const;
  Coeff limit0() const;
  // zeta -> k*zeta
  Series rescaled(const Rational& k) const;
  int max_degree(int slot) const;

  // Sum of the known terms at a numeric zeta.
  double evaluate(double zeta, const SymbolValues& v) const;
  std::string to_string() const;

 private:
  long long valuation() const;
  void put(int p, Coeff c);
  void check_cap() const;

  std::map<int, Coeff> terms_;
  int trunc_ = kExact;
};

Series pp(const Series& a);
Series rp(const Series& a);
Coeff limit0(const Series& a);

// exp(h) for h without constant term, truncated at `order`.
Series exp_series(const Series& h, int order);

// Laurent expansion of Gamma(c + k zeta)^power, power in {+1, -1}, with
// c integer or half-integer.  zeta_symbols is the largest zeta value index
// available, which bounds the achievable truncation.
Series gamma_expand(const Rational& c, const Rational& k, int order, int zeta_symbols = 8,
                    int power = 1);

struct PowerExpansion {
  Rational exact_power;
  Series series;
};

// t^(c + k zeta) = t^c * sum_j (k L)^j zeta^j / j!
PowerExpansion power_expand(const Rational& c, const Rational& k, int order);

}  // namespace egren::laurent
