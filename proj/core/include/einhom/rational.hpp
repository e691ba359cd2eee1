#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace einhom {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-2/7", "0.125", "1e-3", "2.5E+4" exactly.
Rational parse_rational(std::string_view text);

/// Fixed significant-digit decimal rendering, e.g. "0.66666666666666666667".
std::string to_decimal_string(const Rational& q, int significant_digits = 25);

/// "p/q" or "p" form.
std::string to_fraction_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational abs(const Rational& q);

/// num / den in lowest terms; throws DomainError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// 10^-exponent as an exact rational.
Rational pow10_inverse(unsigned exponent);

int sign(const Rational& q);

}  // namespace einhom
