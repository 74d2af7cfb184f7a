#pragma once

#include "haarframe/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace haarframe {

// [lo, hi) inside the circle [0,1)
struct HalfOpenInterval {
  Rational lo;
  Rational hi;

  bool operator==(const HalfOpenInterval&) const = default;
  Rational length() const { return hi - lo; }
  bool contains(const Rational& t) const { return lo <= t && t < hi; }
};

enum class SetOp { Union, Intersect, Subtract };

class IntervalUnion {
 public:
  IntervalUnion() = default;
  IntervalUnion(std::initializer_list<HalfOpenInterval> parts)
      : IntervalUnion(std::vector<HalfOpenInterval>(parts)) {}

  // Accepts overlapping, unsorted or empty pieces; stores the canonical form.
  explicit IntervalUnion(std::vector<HalfOpenInterval> pieces) {
    for (const auto& p : pieces) {
      if (p.lo < 0 || p.hi > 1 || p.lo > p.hi)
        throw std::domain_error("interval [" + to_string(p.lo) + "," + to_string(p.hi) +
                                ") is not inside [0,1)");
    }
    std::erase_if(pieces, [](const HalfOpenInterval& p) { return p.lo == p.hi; });
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& x, const auto& y) { return x.lo < y.lo; });
    for (auto& p : pieces) {
      if (!parts_.empty() && p.lo <= parts_.back().hi) {
        if (p.hi > parts_.back().hi) parts_.back().hi = p.hi;
      } else {
        parts_.push_back(std::move(p));
      }
    }
  }

  static IntervalUnion circle() { return IntervalUnion{{Rational(0), Rational(1)}}; }

  // {<t> : t in [start, start+length)}, split at 0 when it wraps
  static IntervalUnion arc(const Rational& start, const Rational& length) {
    if (length < 0) throw std::domain_error("arc: negative length");
    if (length >= 1) return circle();
    Rational lo = circle_frac(start);
    Rational hi = lo + length;
    if (hi <= 1) return IntervalUnion{{lo, hi}};
    return IntervalUnion{{lo, Rational(1)}, {Rational(0), hi - 1}};
  }

  const std::vector<HalfOpenInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  Rational measure() const {
    Rational m = 0;
    for (const auto& p : parts_) m += p.length();
    return m;
  }

  bool contains(const Rational& t) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), t,
                               [](const Rational& v, const HalfOpenInterval& p) { return v < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(t);
  }

  bool subset_of(const IntervalUnion& other) const;

  bool operator==(const IntervalUnion&) const = default;

 private:
  std::vector<HalfOpenInterval> parts_;
};

inline IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<HalfOpenInterval> out;
  const auto& x = a.parts();
  const auto& y = b.parts();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Rational& lo = std::max(x[i].lo, y[j].lo);
    const Rational& hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) ++i; else ++j;
  }
  return IntervalUnion(std::move(out));
}

inline IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<HalfOpenInterval> all(a.parts());
  all.insert(all.end(), b.parts().begin(), b.parts().end());
  return IntervalUnion(std::move(all));
}

inline IntervalUnion complement(const IntervalUnion& a) {
  std::vector<HalfOpenInterval> out;
  Rational cursor = 0;
  for (const auto& p : a.parts()) {
    if (cursor < p.lo) out.push_back({cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < 1) out.push_back({cursor, Rational(1)});
  return IntervalUnion(std::move(out));
}

inline IntervalUnion subtract(const IntervalUnion& a, const IntervalUnion& b) {
  return intersect(a, complement(b));
}

inline IntervalUnion iu_boolean(const IntervalUnion& a, const IntervalUnion& b, SetOp op) {
  switch (op) {
    case SetOp::Union: return unite(a, b);
    case SetOp::Intersect: return intersect(a, b);
    case SetOp::Subtract: return subtract(a, b);
  }
  throw std::logic_error("unknown set operation");
}

inline bool IntervalUnion::subset_of(const IntervalUnion& other) const {
  return subtract(*this, other).empty();
}

inline IntervalUnion iu_translate(const IntervalUnion& a, const Rational& s) {
  Rational shift = circle_frac(s);
  if (shift == 0) return a;
  std::vector<HalfOpenInterval> out;
  out.reserve(a.size() + 1);
  for (const auto& p : a.parts()) {
    Rational lo = p.lo + shift, hi = p.hi + shift;
    if (hi <= 1) {
      out.push_back({lo, hi});
    } else if (lo >= 1) {
      out.push_back({lo - 1, hi - 1});
    } else {
      out.push_back({lo, Rational(1)});
      out.push_back({Rational(0), hi - 1});
    }
  }
  return IntervalUnion(std::move(out));
}

// [c,d) -> [1-d, 1-c); the half-open shadow of 1 - pi(A)
inline IntervalUnion iu_reflect(const IntervalUnion& a) {
  std::vector<HalfOpenInterval> out;
  out.reserve(a.size());
  for (const auto& p : a.parts()) out.push_back({1 - p.hi, 1 - p.lo});
  return IntervalUnion(std::move(out));
}

inline std::string to_string(const IntervalUnion& a) {
  if (a.empty()) return "∅";
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += "∪";
    s += "[" + to_string(a.parts()[i].lo) + "," + to_string(a.parts()[i].hi) + ")";
  }
  return s;
}

// Lowest common denominator of all endpoints.
inline Integer lattice_denominator(const IntervalUnion& a) {
  Integer l = 1;
  for (const auto& p : a.parts()) l = lcm(l, lcm(den(p.lo), den(p.hi)));
  return l;
}

}  // namespace haarframe
