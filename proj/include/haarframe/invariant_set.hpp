#pragma once

#include "haarframe/piecewise_map.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace haarframe {

class IterationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// 0 selects the lattice default 4 L^2 (saturating).
inline std::uint64_t resolve_cap(const MapParams& p, std::uint64_t max_iter) {
  if (max_iter) return max_iter;
  Integer l = p.lattice();
  Integer cap = 4 * l * l;
  if (cap > Integer(std::numeric_limits<std::uint64_t>::max() / 2))
    return std::numeric_limits<std::uint64_t>::max() / 2;
  return cap.convert_to<std::uint64_t>();
}

struct MaximalInvariantResult {
  IntervalUnion S;
  long steps_N = 0;
  std::vector<IntervalUnion> gap_orbit;  // T_0, ..., T_{N-1}
};

inline MaximalInvariantResult compute_S(const MapParams& p, std::uint64_t max_iter = 0) {
  const std::uint64_t cap = resolve_cap(p, max_iter);
  MaximalInvariantResult r;
  const IntervalUnion hole = p.H();

  if (p.u_shift() > 1) {
    // Images overlap; the whole circle is eventually absorbed by H.
    IntervalUnion image = IntervalUnion::circle();
    while (!image.subset_of(hole)) {
      if (static_cast<std::uint64_t>(r.steps_N) >= cap)
        throw IterationCapExceeded("compute_S: absorption did not finish within the cap");
      image = m_image(p, image);
      ++r.steps_N;
    }
    return r;
  }

  IntervalUnion removed = hole;
  IntervalUnion gap = subtract(IntervalUnion{{p.alpha, p.u_shift()}}, hole);
  while (!gap.empty()) {
    if (static_cast<std::uint64_t>(r.steps_N) >= cap)
      throw IterationCapExceeded("compute_S: gap orbit did not terminate within the cap");
    removed = unite(removed, gap);
    r.gap_orbit.push_back(gap);
    gap = subtract(m_image(p, gap), hole);
    ++r.steps_N;
  }
  r.S = complement(removed);
  return r;
}

inline Rational squeeze_y(const IntervalUnion& S, const Rational& t) {
  if (S.empty()) throw std::domain_error("squeeze_y: S is empty");
  if (t < 0 || t >= 1) throw std::domain_error("squeeze_y: t must lie in [0,1)");
  Rational prefix = intersect(S, IntervalUnion{{Rational(0), t}}).measure();
  return circle_frac(prefix / S.measure());
}

inline Rational y_alpha(const MapParams& p, const IntervalUnion& S) { return squeeze_y(S, p.alpha); }

struct StructureType {
  enum class Kind { Empty, SubsetU, SubsetV, TypeI, TypeII, TypeIII };
  Kind kind = Kind::Empty;
  Integer q = 0;      // SubsetU / SubsetV
  long N = 0;         // Type I, II, III
  long M = 0;         // Type II, III
  Rational delta = 0; // Type II, III
};

inline std::string to_string(StructureType::Kind k) {
  switch (k) {
    case StructureType::Kind::Empty: return "Empty";
    case StructureType::Kind::SubsetU: return "SubsetU";
    case StructureType::Kind::SubsetV: return "SubsetV";
    case StructureType::Kind::TypeI: return "TypeI";
    case StructureType::Kind::TypeII: return "TypeII";
    case StructureType::Kind::TypeIII: return "TypeIII";
  }
  return "?";
}

namespace detail {

// Smallest k >= 0 with image^k(start) == target.
inline long orbit_hit(const MapParams& p, IntervalUnion start, const IntervalUnion& target,
                      std::uint64_t cap, const char* what) {
  for (std::uint64_t k = 0; k <= cap; ++k) {
    if (start == target) return static_cast<long>(k);
    start = m_image(p, start);
  }
  throw IterationCapExceeded(std::string("classify: ") + what + " not reached within the cap");
}

inline long return_time(const MapParams& p, const Rational& t, std::uint64_t cap) {
  Rational x = m_apply(p, t);
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (x == t) return static_cast<long>(k);
    x = m_apply(p, x);
  }
  throw IterationCapExceeded("classify: return time exceeds the cap");
}

}  // namespace detail

inline StructureType classify(const MapParams& p, const MaximalInvariantResult& r,
                              std::uint64_t max_iter = 0) {
  using Kind = StructureType::Kind;
  StructureType out;
  const IntervalUnion& S = r.S;
  if (S.empty()) return out;
  const std::uint64_t cap = resolve_cap(p, max_iter);

  if (S.subset_of(p.U())) {
    out.kind = Kind::SubsetU;
    out.q = den(circle_frac(p.u_shift()));
    return out;
  }
  if (S.subset_of(p.V())) {
    out.kind = Kind::SubsetV;
    out.q = den(p.alpha);
    return out;
  }

  const Rational& lowest = S.parts().front().lo;
  const Rational& highest = S.parts().back().hi;
  const Rational width = p.hole_length();

  if (lowest > 0) {
    out.kind = Kind::TypeII;
    out.delta = lowest;
    const Rational& d = out.delta;
    out.N = 1 + detail::orbit_hit(p, IntervalUnion::arc(p.alpha, width + d),
                                  IntervalUnion::arc(p.x1 - d, width + d), cap, "widened gap");
    long tail = detail::orbit_hit(p, IntervalUnion::arc(p.x1 - d, d),
                                  IntervalUnion{{Rational(0), d}}, cap, "initial gap");
    out.M = out.N + tail;
    if (detail::return_time(p, d, cap) != out.M)
      throw InternalInconsistency("classify: return time of delta disagrees with gap orbit");
  } else if (highest < 1) {
    out.kind = Kind::TypeIII;
    out.delta = 1 - highest;
    const Rational& d = out.delta;
    out.N = 1 + detail::orbit_hit(p, IntervalUnion::arc(p.alpha - d, width + d),
                                  IntervalUnion::arc(p.x1, width + d), cap, "widened gap");
    long tail = detail::orbit_hit(p, IntervalUnion{{p.x2, p.x2 + d}},
                                  IntervalUnion{{1 - d, Rational(1)}}, cap, "final gap");
    out.M = out.N + tail;
    if (detail::return_time(p, Rational(0), cap) != out.M)
      throw InternalInconsistency("classify: return time of 0 disagrees with gap orbit");
  } else {
    out.kind = Kind::TypeI;
    out.N = 1 + detail::orbit_hit(p, IntervalUnion{{p.alpha, p.u_shift()}}, p.H(), cap,
                                  "hole");
  }
  return out;
}

struct SymmetricSetResult {
  enum class Case { Empty, I, II, III };
  IntervalUnion E;
  long M = 0;       // denominator of Y(alpha); 0 when S is empty
  long N_frac = 0;  // numerator of Y(alpha)
  Case kind = Case::Empty;
  Rational Delta = 0;
  Rational delta = 0;
};

inline std::string to_string(SymmetricSetResult::Case c) {
  switch (c) {
    case SymmetricSetResult::Case::Empty: return "empty";
    case SymmetricSetResult::Case::I: return "i";
    case SymmetricSetResult::Case::II: return "ii";
    case SymmetricSetResult::Case::III: return "iii";
  }
  return "?";
}

inline SymmetricSetResult compute_E_closed(const MapParams& p, const MaximalInvariantResult& r) {
  using Case = SymmetricSetResult::Case;
  SymmetricSetResult out;
  out.Delta = p.hole_length();
  if (r.S.empty()) return out;

  const Rational y = y_alpha(p, r.S);
  const Rational Mq(den(y)), Nq(num(y));
  out.M = to_long(den(y));
  out.N_frac = to_long(num(y));
  const Rational step = 1 / Mq;
  const Rational half = 1 / (2 * Mq);
  const Rational& D = out.Delta;

  auto build = [&](const Rational& spacing, const Rational& lo, const Rational& hi) {
    std::vector<HalfOpenInterval> parts;
    for (long k = 0; k < out.M; ++k) parts.push_back({k * spacing + lo, k * spacing + hi});
    return IntervalUnion(std::move(parts));
  };

  if (p.x2 < half && p.alpha == Nq / Mq) {
    out.kind = Case::I;
    out.E = build(step, p.x2, step - p.x2);
  } else if (p.x1 > 1 - half && p.alpha == circle_frac(Nq / Mq - D)) {
    out.kind = Case::II;
    out.E = build(step, 1 - p.x1, p.x1 - (Mq - 1) / Mq);
  } else if (out.M > 1 && D < 1 / (Mq - 1)) {
    const Rational rest = (Mq - Nq) / Mq;
    const Rational d = p.x2 - rest * (1 + D);
    const Rational bound = half - (Mq - 1) / (2 * Mq) * D;
    if (p.alpha == Nq / Mq - rest * D && abs(d) < bound) {
      out.kind = Case::III;
      out.delta = d;
      out.E = build((1 + D) / Mq, abs(d), (1 - (Mq - 1) * D) / Mq - abs(d));
    }
  }
  return out;
}

// Largest F with M(F) = F and L^{-1}(F) = F, refined downward from S ∩ (1 - pi(S)).
inline IntervalUnion compute_E_fixedpoint(const MapParams& p, const MaximalInvariantResult& r,
                                          std::uint64_t max_iter = 0) {
  const std::uint64_t cap = resolve_cap(p, max_iter);
  IntervalUnion F = intersect(r.S, iu_reflect(r.S));
  for (std::uint64_t k = 0; k <= cap; ++k) {
    if (F.empty()) return F;
    IntervalUnion next =
        intersect(intersect(F, m_image(p, F)), l_image(p, F, Direction::Backward));
    if (next == F) return F;
    F = std::move(next);
  }
  throw IterationCapExceeded("compute_E_fixedpoint: no fixed point within the cap");
}

inline long lambda_step(const MapParams& p, long floor_c, const Rational& t) {
  if (t < p.x1) return floor_c + 1;
  if (t >= p.x2) return floor_c;
  throw std::domain_error("lambda: point lies in the hole");
}

// lambda_n(t): sum of increments along n forward (n > 0) or |n| backward steps.
inline long lambda_n(const MapParams& p, long floor_c, Rational t, long n) {
  long total = 0;
  if (n >= 0) {
    for (long j = 0; j < n; ++j) {
      total += lambda_step(p, floor_c, t);
      t = l_apply(p, t, Direction::Forward);
    }
  } else {
    for (long j = 0; j < -n; ++j) {
      t = l_apply(p, t, Direction::Backward);
      total -= lambda_step(p, floor_c, t);
    }
  }
  return total;
}

struct LambdaCycle {
  Rational base_t;
  std::vector<long> increments;
  long period_K = 0;
  std::set<long> residues;
};

inline LambdaCycle lambda_cycle(const MapParams& p, long floor_c, const SymmetricSetResult& e,
                                const Rational& t) {
  if (e.E.empty()) throw std::domain_error("lambda_cycle: E is empty");
  if (!e.E.contains(t)) throw std::domain_error("lambda_cycle: t is not in E");
  LambdaCycle out;
  out.base_t = t;
  Rational x = t;
  std::vector<long> partial;
  long sum = 0;
  for (long j = 0; j < e.M; ++j) {
    partial.push_back(sum);
    long inc = lambda_step(p, floor_c, x);
    out.increments.push_back(inc);
    sum += inc;
    x = l_apply(p, x, Direction::Forward);
  }
  if (x != t) throw InternalInconsistency("lambda_cycle: orbit does not close after M steps");
  out.period_K = sum;
  for (long s : partial) out.residues.insert(((s % sum) + sum) % sum);
  if (static_cast<long>(out.residues.size()) != e.M)
    throw InternalInconsistency("lambda_cycle: residues are not distinct");
  return out;
}

}  // namespace haarframe
