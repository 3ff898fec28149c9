#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace egren {

using Rational = mpq_class;
using Integer = mpz_class;

// p/q in lowest terms.
Rational frac(long p, long q);

// Always "p/q" with q >= 1, e.g. "3/1", "-1/2".
std::string to_string(const Rational& q);
// Accepts "p", "p/q", with optional sign.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);
bool is_half_integer(const Rational& q);  // q in Z + 1/2
Integer floor(const Rational& q);
Rational pow(const Rational& base, long exponent);
double to_double(const Rational& q);
long to_long(const Integer& z);

}  // namespace egren
