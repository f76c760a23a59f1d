#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace qd {

using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);

// Exact square root in Q when one exists (nonnegative root).
std::optional<Rational> rational_sqrt(const Rational& q);

// 2-adic valuation of a nonzero rational.
long valuation(const Rational& q, unsigned long p);

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
Rational inverse(const Rational& q);

inline Integer zero_like(const Integer&) { return Integer(0); }
inline Integer one_like(const Integer&) { return Integer(1); }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }
Integer inverse(const Integer& z);  // only units +-1

}  // namespace qd
