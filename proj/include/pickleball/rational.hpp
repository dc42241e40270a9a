#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pickleball {

// Every probability and derived quantity in the exact pipeline is a rational
// number, kept in canonical form (lowest terms, positive denominator) by GMP.
// Nothing in the analysis ever rounds: the first-server advantages live at
// the 1e-9 scale between probabilities near 1/2, which is pure cancellation
// territory for floating point.
using Rational = mpq_class;

// num/den in canonical form. Throws std::invalid_argument if den == 0.
Rational make_rational(long num, long den = 1);

// Accepts "p/q", plain integers, and decimal strings. Decimals are exact
// shorthand: "0.44" parses as 44/100 and is reduced, never converted through
// a binary float. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

// -1, 0, or +1.
int sign_of(const Rational& v);

// Fixed-point rendering with exactly `digits` fractional digits, rounded
// half away from zero. The sign is kept even when the magnitude rounds to 0.
std::string to_decimal_string(const Rational& v, int digits);

// Scientific rendering ("-7.95109e-09") with `significant_digits` mantissa
// digits, rounded half away from zero.
std::string to_scientific_string(const Rational& v, int significant_digits);

// Canonical "p/q" with an explicit denominator ("1/1", "-11/25").
std::string to_fraction_string(const Rational& v);

// Decimal rendering of sqrt(v) for v >= 0, correctly rounded to `digits`
// fractional digits (computed from integer square roots, not doubles).
std::string sqrt_decimal_string(const Rational& v, int digits);

double to_double(const Rational& v);

}  // namespace pickleball
