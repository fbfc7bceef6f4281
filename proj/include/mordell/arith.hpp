#pragma once

// Exact integer and rational scalars. GMP's mpq_class keeps values in
// lowest terms with a positive denominator after every arithmetic
// operation, which is the canonical form the rest of the library relies on.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace mordell {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a", "a/b" (b != 0, optional surrounding whitespace) into
/// canonical form. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1. Re-parses exactly.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }
inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

Rational pow(const Rational& base, unsigned exponent);
Integer pow(const Integer& base, unsigned exponent);

/// p-adic valuation of a nonzero integer; p must be >= 2.
long valuation(const Integer& n, const Integer& p);
/// v_p(num) - v_p(den) for nonzero q.
long valuation(const Rational& q, const Integer& p);

/// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);
/// The nonnegative square root when n is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);
/// Square root of a rational that is a perfect square in Q (sign: >= 0).
std::optional<Rational> exact_sqrt(const Rational& q);

/// Integer ceiling of the real cube root of n, i.e. the smallest c with c^3 >= n.
Integer ceil_cbrt(const Integer& n);

}  // namespace mordell
