#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace bf {

// Exact arbitrary-precision rational, the default scalar of the engine.
// GMP keeps values canonical (gcd 1, positive denominator) through
// arithmetic; construction goes through the helpers below so raw
// numerator/denominator pairs are canonicalized exactly once.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q" and terminating decimals ("0.35" -> 7/20).
// Throws Error(parse_error) on anything else.
Rational rational_from_string(std::string_view text);

// Canonical form: "p/q" with gcd(p,q)=1 and q>0, or "p" when q=1.
std::string to_fraction_string(const Rational& q);

// mpq_get_d truncates toward zero; dividing the parts instead gives the
// IEEE round-to-nearest result whenever both fit a double exactly.
inline double to_double(const Rational& q) {
  constexpr double kExact = 9007199254740992.0;  // 2^53
  double num = q.get_num().get_d();
  double den = q.get_den().get_d();
  if (std::abs(num) < kExact && den < kExact) return num / den;
  return q.get_d();
}

}  // namespace bf
