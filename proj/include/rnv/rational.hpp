#pragma once

// Exact rational arithmetic shared by every module.  All closed-form and
// oracle values live in Rational; floating point appears only in the
// asymptotics module and in Monte Carlo estimates.

#include <gmpxx.h>

#include <string>

namespace rnv {

// Arbitrary-precision fraction, kept in lowest terms with a positive
// denominator (GMP canonical form).
using Rational = mpq_class;

// Builds num/den in canonical form.  mpq_class(n, d) alone does not
// canonicalize, so always go through here for literal fractions.
Rational frac(long num, long den = 1);

// Parses "p" or "p/q" (optional sign, base 10).  Decimal notation such as
// "0.5" is rejected: inputs must be exact.
Rational parse_rational(const std::string& text);

// Canonical "p/q" rendering, plain "p" when the denominator is 1.
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);

// q^exp with exact integer exponentiation of numerator and denominator.
Rational pow_rational(const Rational& q, unsigned long exp);

inline const Rational& rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline const Rational& rat_min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace rnv
