#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace pachsel {

using Rational = mpq_class;

// Parses "p/q", "p", or a decimal literal such as "-0.125" / "1e-3" into an
// exact rational. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

// Canonical "p/q" (or "p" when q = 1) string.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// Uniform rational in the open interval (-bound, bound) with denominator
// 2^bits, scaled by bound. Zero is excluded so that perturbations always move.
Rational random_symmetric_rational(std::mt19937_64& rng, const Rational& bound,
                                   unsigned bits = 40);

// Uniform rational in [lo, hi) on a 2^bits grid.
Rational random_rational_between(std::mt19937_64& rng, const Rational& lo,
                                 const Rational& hi, unsigned bits = 40);

// Largest rational of the form 2^-k (k >= 0 integer, or 2^k) that is <= value.
// value must be positive.
Rational dyadic_floor(const Rational& value);

}  // namespace pachsel
