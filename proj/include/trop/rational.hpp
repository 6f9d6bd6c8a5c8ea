#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace trop {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", an integer, or an exact decimal such as "-1.25" or "3e-2".
/// Throws trop::Error(InvalidInput) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& q);

/// Short decimal rendering for SVG output; the only lossy conversion.
std::string to_decimal(const Rational& q, int digits = 4);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace trop
