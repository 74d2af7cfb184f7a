#pragma once

#include "haarframe/interval_union.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace haarframe {

// The three-branch circle map: U = [0,x1) moves by alpha + (x2-x1),
// H = [x1,x2) is fixed, V = [x2,1) moves by alpha.
struct MapParams {
  Rational alpha;
  Rational x1;
  Rational x2;

  MapParams() : alpha(0), x1(0), x2(1) {}
  MapParams(Rational a, Rational lo, Rational hi)
      : alpha(std::move(a)), x1(std::move(lo)), x2(std::move(hi)) {
    if (alpha < 0 || alpha >= 1) throw std::domain_error("map parameters: need 0 <= alpha < 1");
    if (x1 < 0 || x1 >= x2 || x2 > 1)
      throw std::domain_error("map parameters: need 0 <= x1 < x2 <= 1");
  }

  Rational hole_length() const { return x2 - x1; }
  Rational u_shift() const { return alpha + x2 - x1; }

  IntervalUnion U() const { return IntervalUnion{{Rational(0), x1}}; }
  IntervalUnion H() const { return IntervalUnion{{x1, x2}}; }
  IntervalUnion V() const { return IntervalUnion{{x2, Rational(1)}}; }

  Integer lattice() const { return lcm(den(alpha), lcm(den(x1), den(x2))); }

  bool operator==(const MapParams&) const = default;
};

inline std::string to_string(const MapParams& p) {
  return "alpha=" + to_string(p.alpha) + " x1=" + to_string(p.x1) + " x2=" + to_string(p.x2);
}

enum class Direction : int { Forward = 1, Backward = -1 };

inline Rational m_apply(const MapParams& p, const Rational& t) {
  if (t < 0 || t >= 1) throw std::domain_error("m_apply: t must lie in [0,1)");
  if (t < p.x1) return circle_frac(t + p.u_shift());
  if (t < p.x2) return t;
  return circle_frac(t + p.alpha);
}

// Same translations on the (0,1] model of the circle.
inline Rational m_tilde_apply(const MapParams& p, const Rational& t) {
  if (t <= 0 || t > 1) throw std::domain_error("m_tilde_apply: t must lie in (0,1]");
  if (t <= p.x1) return circle_frac_star(t + p.u_shift());
  if (t <= p.x2) return t;
  return circle_frac_star(t + p.alpha);
}

inline Rational l_apply(const MapParams& p, const Rational& t, Direction dir) {
  if (dir == Direction::Forward) return m_apply(p, t);
  if (t < 0 || t >= 1) throw std::domain_error("l_apply: t must lie in [0,1)");
  return 1 - m_tilde_apply(p, 1 - t);
}

// A finite union of left-open right-closed arcs (c,d] in (0,1]. Stored through
// its endpoint shadow, which normalizes identically to the half-open form.
struct OpenClosedUnion {
  IntervalUnion endpoints;
  bool operator==(const OpenClosedUnion&) const = default;
};

inline OpenClosedUnion pi(const IntervalUnion& a) { return {a}; }
inline IntervalUnion pi_inverse(const OpenClosedUnion& a) { return a.endpoints; }

namespace detail {

inline std::array<HalfOpenInterval, 3> branch_cuts(const MapParams& p) {
  return {HalfOpenInterval{Rational(0), p.x1}, HalfOpenInterval{p.x1, p.x2},
          HalfOpenInterval{p.x2, Rational(1)}};
}

}  // namespace detail

// Image of a half-open union: each piece inside one branch is anchored at its
// left endpoint.
inline IntervalUnion m_image_direct(const MapParams& p, const IntervalUnion& a) {
  std::vector<HalfOpenInterval> out;
  for (const auto& part : a.parts()) {
    for (const auto& cut : detail::branch_cuts(p)) {
      Rational lo = std::max(part.lo, cut.lo), hi = std::min(part.hi, cut.hi);
      if (lo >= hi) continue;
      Rational start = m_apply(p, lo), len = hi - lo;
      if (start + len <= 1) {
        out.push_back({start, start + len});
      } else {
        out.push_back({start, Rational(1)});
        out.push_back({Rational(0), start + len - 1});
      }
    }
  }
  return IntervalUnion(std::move(out));
}

// Image of a left-open union under the coherent map: pieces are anchored at
// their right endpoint, which m_tilde_apply keeps in (0,1].
inline OpenClosedUnion m_tilde_image(const MapParams& p, const OpenClosedUnion& a) {
  std::vector<HalfOpenInterval> out;
  for (const auto& part : a.endpoints.parts()) {
    for (const auto& cut : detail::branch_cuts(p)) {
      Rational lo = std::max(part.lo, cut.lo), hi = std::min(part.hi, cut.hi);
      if (lo >= hi) continue;
      Rational end = m_tilde_apply(p, hi), len = hi - lo;
      if (end - len >= 0) {
        out.push_back({end - len, end});
      } else {
        out.push_back({end - len + 1, Rational(1)});
        out.push_back({Rational(0), end});
      }
    }
  }
  return {IntervalUnion(std::move(out))};
}

enum class MapVariant { Direct, CoherentConjugated };

inline IntervalUnion m_image(const MapParams& p, const IntervalUnion& a,
                             MapVariant which = MapVariant::Direct) {
  if (which == MapVariant::Direct) return m_image_direct(p, a);
  return pi_inverse(m_tilde_image(p, pi(a)));
}

// Setwise L^{+1} or L^{-1}; the backward map is t -> 1 - M~(1-t).
inline IntervalUnion l_image(const MapParams& p, const IntervalUnion& a, Direction dir) {
  if (dir == Direction::Forward) return m_image_direct(p, a);
  OpenClosedUnion mirrored{iu_reflect(a)};  // 1 - A as a left-open union
  return iu_reflect(m_tilde_image(p, mirrored).endpoints);
}

inline MapParams disturb(const MapParams& p, const Rational& delta) {
  if (!(-p.x1 < delta && delta < 1 - p.x2))
    throw std::domain_error("disturb: need -x1 < delta < 1 - x2");
  return MapParams(p.alpha, p.x1 + delta, p.x2 + delta);
}

}  // namespace haarframe
