#include "bf/rational.hpp"

#include <cctype>

#include "bf/errors.hpp"

namespace bf {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) fail(errc::parse_error, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_string(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = (s[0] == '-');
    s.remove_prefix(1);
  }
  if (s.empty()) fail(errc::parse_error, "empty number '" + std::string(text) + "'");

  Rational q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(errc::parse_error, "bad fraction '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) fail(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
    q = Rational(n) / Rational(d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty())
      fail(errc::parse_error, "bad decimal '" + std::string(text) + "'");
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)))
      fail(errc::parse_error, "bad decimal '" + std::string(text) + "'");
    mpz_class n(whole.empty() ? std::string("0") : std::string(whole), 10);
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class f(frac.empty() ? std::string("0") : std::string(frac), 10);
    q = Rational(n * scale + f) / Rational(scale);
  } else {
    if (!all_digits(s)) fail(errc::parse_error, "bad number '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(s), 10));
  }
  if (negative) q = -q;
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_str();  // canonical "p/q" or "p"
}

}  // namespace bf
