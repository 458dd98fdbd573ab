#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace latineq {

// Exact scalar track. Values, integer-power norms and certificates never
// leave these types; fractional powers and logarithms go through double.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", an integer, or a decimal such as "-1.25" or "3e-2".
/// Decimals are read exactly as scaled integers. Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Round-to-nearest conversion.
double to_double(const Rational& value);

/// Natural logarithm of a positive rational, robust to values outside the
/// double range.
double log_of(const Rational& value);
double log_of(const BigInt& value);

/// |x|^k exactly.
Rational pow_exact(const Rational& x, unsigned long k);

/// |x|^p in floating point, exact (then rounded) when p is an integer.
double pow_abs(const Rational& x, const Rational& p);

/// True when p is a positive integer.
bool is_positive_integer(const Rational& p);

}  // namespace latineq
