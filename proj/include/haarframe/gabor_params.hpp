#pragma once

#include "haarframe/piecewise_map.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace haarframe {

// A declared-irrational value known only to lie in the open interval (lower, upper).
struct IrrationalMarker {
  Rational lower = 0;
  Rational upper = 1;
};

struct GaborParams {
  std::variant<Rational, IrrationalMarker> a;
  Rational c;

  GaborParams(Rational a_value, Rational c_value) : a(std::move(a_value)), c(std::move(c_value)) {
    if (std::get<Rational>(a) <= 0) throw std::domain_error("gabor parameters: a must be positive");
    check_c();
  }
  GaborParams(IrrationalMarker m, Rational c_value) : a(std::move(m)), c(std::move(c_value)) {
    const auto& mk = std::get<IrrationalMarker>(a);
    if (mk.lower < 0 || mk.lower >= mk.upper)
      throw std::domain_error("gabor parameters: irrational bounds must satisfy 0 <= lower < upper");
    check_c();
  }

  bool a_rational() const { return std::holds_alternative<Rational>(a); }
  const Rational& a_value() const { return std::get<Rational>(a); }
  const IrrationalMarker& a_marker() const { return std::get<IrrationalMarker>(a); }

 private:
  void check_c() const {
    if (c <= 0) throw std::domain_error("gabor parameters: c must be positive");
  }
};

// Time-frequency coordinates; an irrational alpha makes the product alpha*beta irrational.
struct TFParams {
  std::variant<Rational, IrrationalMarker> alpha;
  Rational beta;

  TFParams(Rational al, Rational be) : alpha(std::move(al)), beta(std::move(be)) {
    if (std::get<Rational>(alpha) <= 0 || beta <= 0)
      throw std::domain_error("tf parameters: alpha and beta must be positive");
  }
  TFParams(IrrationalMarker m, Rational be) : alpha(std::move(m)), beta(std::move(be)) {
    if (beta <= 0) throw std::domain_error("tf parameters: beta must be positive");
    const auto& mk = std::get<IrrationalMarker>(alpha);
    if (mk.lower < 0 || mk.lower >= mk.upper)
      throw std::domain_error("tf parameters: irrational bounds must satisfy 0 <= lower < upper");
  }

  bool product_rational() const { return std::holds_alternative<Rational>(alpha); }
};

inline std::string a_string(const GaborParams& g) {
  return g.a_rational() ? to_string(g.a_value()) : std::string("irrational");
}

inline GaborParams normalize_tf(const TFParams& tf) {
  Rational c = tf.beta / 2;
  if (tf.product_rational()) return GaborParams(std::get<Rational>(tf.alpha) * tf.beta, c);
  const auto& m = std::get<IrrationalMarker>(tf.alpha);
  return GaborParams(IrrationalMarker{m.lower * tf.beta, m.upper * tf.beta}, c);
}

enum class Region { InRegion, OutsideRegion };

// 0 < a <= min(1, 2c). A declared-irrational a must be placed on one side by its bounds.
inline Region density_check(const GaborParams& g) {
  Rational limit = std::min(Rational(1), 2 * g.c);
  if (g.a_rational()) return g.a_value() <= limit ? Region::InRegion : Region::OutsideRegion;
  const auto& m = g.a_marker();
  if (m.upper <= limit) return Region::InRegion;
  if (m.lower >= limit) return Region::OutsideRegion;
  throw std::domain_error("density check: irrational a bounds straddle min(1, 2c)");
}

inline MapParams map_params(const GaborParams& g) {
  if (!g.a_rational()) throw std::domain_error("map_params: a must be rational");
  const Rational& a = g.a_value();
  const Rational& c = g.c;
  if (!(a < 1 && c > 1) || is_integer(c))
    throw std::domain_error("map_params: need 0 < a < 1 < c with c not an integer");
  Rational fc = circle_frac(c);
  Rational x1 = std::max((a + fc - 1) / a, Rational(0));
  Rational x2 = std::min(fc / a, Rational(1));
  Rational alpha = x2 != 1 ? circle_frac(floor(c) / a) : circle_frac(c / a);
  return MapParams(alpha, x1, x2);
}

}  // namespace haarframe
