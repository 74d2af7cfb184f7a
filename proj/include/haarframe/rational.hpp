#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace haarframe {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer den(const Rational& x) { return boost::multiprecision::denominator(x); }

inline Integer floor_int(const Rational& x) {
  Integer n = num(x), d = den(x);
  Integer q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline Rational floor(const Rational& x) { return Rational(floor_int(x)); }

inline bool is_integer(const Rational& x) { return den(x) == 1; }

// <x> in [0,1)
inline Rational circle_frac(const Rational& x) { return x - floor(x); }

// <x>* = 1 - <1-x>, in (0,1]
inline Rational circle_frac_star(const Rational& x) {
  return Rational(1) - circle_frac(Rational(1) - x);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

inline Rational rational_gcd(const Rational& x, const Rational& y) {
  if (x <= 0 || y <= 0) throw std::domain_error("rational_gcd: arguments must be positive");
  Integer l = lcm(den(x), den(y));
  Integer g = boost::multiprecision::gcd(num(x) * (l / den(x)), num(y) * (l / den(y)));
  return Rational(g, l);
}

struct LatticeSplit {
  Rational floor_q;
  Rational frac_q;
};

inline LatticeSplit lattice_round(const Rational& x, const Integer& q) {
  if (q < 1) throw std::domain_error("lattice_round: q must be >= 1");
  Rational fl = Rational(floor_int(x * Rational(q)), q);
  return {fl, x - fl};
}

inline std::string to_string(const Rational& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

// Accepts "n", "-n", "p/q". Decimal or exponent notation is rejected.
inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern))
    throw std::invalid_argument("not an exact rational (expected n or p/q): '" + s + "'");
  Integer n(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
  Integer d = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(n, d);
}

inline long to_long(const Integer& n) { return n.convert_to<long>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline Rational abs(const Rational& x) { return x < 0 ? -x : x; }

}  // namespace haarframe
