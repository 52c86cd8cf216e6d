#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "bf/rational.hpp"

namespace bf {

// Per-mode numeric policy. Rational mode compares exactly; float64 mode uses
// the tolerances fixed here (normalization/nonnegativity 1e-9 absolute,
// Möbius negativity below -1e-9, conditioning denominators below 1e-12).
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "rational";

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_positive(const Rational& x) { return sgn(x) > 0; }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool sum_is_one(const Rational& s) { return s == 1; }
  static bool mass_negative(const Rational& x) { return sgn(x) < 0; }
  static bool mobius_negative(const Rational& x) { return sgn(x) < 0; }
  static bool denominator_vanishes(const Rational& d) { return sgn(d) == 0; }
  static bool in_unit_interval(const Rational& x) { return x >= 0 && x <= 1; }
  static double defect_from_one(const Rational& s) { return std::abs(to_double(s) - 1.0); }
  static Rational from_string(std::string_view text) { return rational_from_string(text); }
  static double as_double(const Rational& x) { return to_double(x); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float64";

  static constexpr double norm_tol = 1e-9;
  static constexpr double mobius_tol = 1e-9;
  static constexpr double denom_tol = 1e-12;

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_positive(double x) { return x > 0.0; }
  static bool eq(double a, double b) { return std::abs(a - b) <= norm_tol; }
  static bool sum_is_one(double s) { return std::abs(s - 1.0) <= norm_tol; }
  static bool mass_negative(double x) { return x < -norm_tol; }
  static bool mobius_negative(double x) { return x < -mobius_tol; }
  static bool denominator_vanishes(double d) { return d < denom_tol; }
  static bool in_unit_interval(double x) { return x >= -norm_tol && x <= 1.0 + norm_tol; }
  static double defect_from_one(double s) { return std::abs(s - 1.0); }
  static double from_string(std::string_view text) {
    return to_double(rational_from_string(text));
  }
  static double as_double(double x) { return x; }
};

}  // namespace bf
