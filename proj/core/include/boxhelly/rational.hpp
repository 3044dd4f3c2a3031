#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace boxhelly {

/// Exact arbitrary-precision rational. Always kept in canonical form
/// (reduced, positive denominator); all comparisons are exact.
using Rational = mpq_class;

/// Builds a canonical rational from an integer pair. The denominator must be
/// nonzero.
Rational make_rational(long num, long den = 1);

/// Parses "p" or "p/q" with optional leading minus on p. Throws ParseError on
/// anything else (including q == 0). The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& value);

}  // namespace boxhelly
