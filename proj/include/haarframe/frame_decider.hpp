#pragma once

#include "haarframe/gabor_params.hpp"
#include "haarframe/invariant_set.hpp"
#include "haarframe/witness.hpp"

#include <optional>
#include <string>
#include <vector>

namespace haarframe {

enum class Verdict { Frame, NotFrame };
enum class Route { OutsideDensityRegion, SpecialCase, ClosedForm, Dynamical, Agreement };

inline std::string to_string(Verdict v) { return v == Verdict::Frame ? "frame" : "notframe"; }

inline std::string to_string(Route r) {
  switch (r) {
    case Route::OutsideDensityRegion: return "outside-density-region";
    case Route::SpecialCase: return "special-case";
    case Route::ClosedForm: return "closed-form";
    case Route::Dynamical: return "dynamical";
    case Route::Agreement: return "agreement";
  }
  return "?";
}

// A violated gcd inequality. Family 1: |c - n| < gcd(n,p)/2q (or |beta - 2n| < gcd(n, alpha beta)).
// Family 2: the shifted inequality around n p/q (or around 1/alpha).
struct GcdViolation {
  long n = 0;
  int family = 0;
};

struct Decision {
  Verdict verdict = Verdict::Frame;
  Route route = Route::ClosedForm;
  std::string tag;  // special-case label
  std::optional<GcdViolation> violation;
  std::optional<MapParams> params;
  std::optional<SymmetricSetResult> symmetric;
  std::optional<WitnessSequence> witness;
};

struct DecideOptions {
  std::uint64_t max_iter = 0;  // 0: lattice default
  long witness_window = 500;
};

inline std::optional<Decision> special_cases(const GaborParams& g) {
  auto make = [](Verdict v, std::string tag) {
    Decision d;
    d.verdict = v;
    d.route = Route::SpecialCase;
    d.tag = std::move(tag);
    return d;
  };
  const Rational& c = g.c;
  if (is_integer(c)) return make(Verdict::NotFrame, "c-integer");
  if (!g.a_rational()) {
    // c is not an integer here; the verdict does not depend on which irrational a is.
    return make(Verdict::Frame, c < 1 ? "irrational-a-small-c" : "irrational-a");
  }
  const Rational& a = g.a_value();
  if (a == 1)
    return make(circle_frac(c) == Rational(1, 2) ? Verdict::Frame : Verdict::NotFrame, "a-one");
  if (a < 1 && a / 2 <= c && c < 1) {
    Rational q(den(a));
    return make(c <= 1 - 1 / (2 * q) ? Verdict::Frame : Verdict::NotFrame, "rational-a-small-c");
  }
  return std::nullopt;
}

inline Decision decide_closed_form(const GaborParams& g) {
  Decision d;
  d.route = Route::ClosedForm;
  const Rational& c = g.c;
  if (!g.a_rational()) {
    d.verdict = is_integer(c) ? Verdict::NotFrame : Verdict::Frame;
    if (is_integer(c)) d.violation = GcdViolation{to_long(floor_int(c)), 1};
    return d;
  }
  const Integer p = num(g.a_value()), q = den(g.a_value());
  const Rational qr(q), pr(p);

  for (Integer n = std::max(floor_int(c), Integer(1)); n <= floor_int(c) + 1; ++n) {
    Rational bound(boost::multiprecision::gcd(n, p), 2 * q);
    if (abs(c - Rational(n)) < bound) {
      d.verdict = Verdict::NotFrame;
      d.violation = GcdViolation{to_long(n), 1};
      return d;
    }
  }
  // |c - n p/q| < 1/2 bounds n to the open interval ((c - 1/2) q/p, (c + 1/2) q/p).
  Integer lo = std::max(floor_int((c - Rational(1, 2)) * qr / pr) + 1, Integer(1));
  Integer hi = floor_int((c + Rational(1, 2)) * qr / pr);
  for (Integer n = lo; n <= hi; ++n) {
    if (n % q == 0) continue;
    Rational bound = Rational(boost::multiprecision::gcd(n, q) - (q - p), 2 * q);
    if (abs(c - Rational(n) * pr / qr) < bound) {
      d.verdict = Verdict::NotFrame;
      d.violation = GcdViolation{to_long(n), 2};
      return d;
    }
  }
  d.verdict = Verdict::Frame;
  return d;
}

inline Decision decide_dynamical(const GaborParams& g, const DecideOptions& opt = {}) {
  Decision d;
  d.route = Route::Dynamical;
  MapParams p = map_params(g);
  MaximalInvariantResult r = compute_S(p, opt.max_iter);
  SymmetricSetResult e = compute_E_closed(p, r);
  IntervalUnion fixed = r.S.empty() ? IntervalUnion{} : compute_E_fixedpoint(p, r, opt.max_iter);
  if (fixed != e.E)
    throw InternalInconsistency("symmetric set: closed form " + to_string(e.E) +
                                " differs from fixed point " + to_string(fixed) + " at " +
                                to_string(p));
  d.params = p;
  d.symmetric = e;
  if (e.E.empty()) {
    d.verdict = Verdict::Frame;
    return d;
  }
  d.verdict = Verdict::NotFrame;
  WitnessSequence w = build_witness(g, e);
  WitnessCheck check = verify_witness(w, g, opt.witness_window);
  if (!check.verified)
    throw InternalInconsistency("witness fails to cancel at n=" + std::to_string(check.failed_n));
  d.witness = std::move(w);
  return d;
}

inline Decision decide(const GaborParams& g, const DecideOptions& opt = {}) {
  if (density_check(g) == Region::OutsideRegion) {
    Decision d;
    d.verdict = Verdict::NotFrame;
    d.route = Route::OutsideDensityRegion;
    return d;
  }
  if (auto s = special_cases(g)) return *s;
  Decision closed = decide_closed_form(g);
  Decision dyn = decide_dynamical(g, opt);
  if (closed.verdict != dyn.verdict)
    throw InternalInconsistency("closed form and dynamical routes disagree at a=" + a_string(g) +
                                " c=" + to_string(g.c));
  dyn.route = Route::Agreement;
  dyn.violation = closed.violation;
  return dyn;
}

inline Decision decide_tf(const TFParams& tf, const DecideOptions& opt = {}) {
  Decision d;
  const Rational& beta = tf.beta;
  const GaborParams g = normalize_tf(tf);

  if (!tf.product_rational()) {
    const auto& m = std::get<IrrationalMarker>(tf.alpha);
    // alpha itself is irrational, so alpha <= 1 and alpha*beta <= 1 are strict.
    bool inside = m.upper <= 1 && m.upper * beta <= 1;
    bool outside = m.lower >= 1 || m.lower * beta >= 1;
    if (inside == outside)
      throw std::domain_error("decide_tf: irrational alpha bounds straddle the density boundary");
    if (outside) {
      d.verdict = Verdict::NotFrame;
      d.route = Route::OutsideDensityRegion;
    } else {
      bool even_integer = is_integer(beta) && num(beta) % 2 == 0;
      d.verdict = even_integer ? Verdict::NotFrame : Verdict::Frame;
      d.route = Route::SpecialCase;
      d.tag = "irrational-product";
    }
  } else {
    const Rational& alpha = std::get<Rational>(tf.alpha);
    const Rational ab = alpha * beta;
    d.route = Route::ClosedForm;
    d.verdict = Verdict::Frame;
    if (ab > 1 || alpha > 1) {
      d.verdict = Verdict::NotFrame;
      d.route = Route::OutsideDensityRegion;
    } else {
      auto violate = [&](long n, int family) {
        d.verdict = Verdict::NotFrame;
        d.violation = GcdViolation{n, family};
      };
      Integer half = floor_int(beta / 2);
      for (Integer n = std::max(half, Integer(1)); n <= half + 1 && !d.violation; ++n)
        if (abs(beta - 2 * Rational(n)) < rational_gcd(Rational(n), ab)) violate(to_long(n), 1);
      const Rational inv_a = 1 / alpha, inv_ab = 1 / ab;
      Integer lo = std::max(floor_int((inv_a - inv_ab) / 2) + 1, Integer(1));
      Integer hi = floor_int((inv_a + inv_ab) / 2);
      for (Integer n = lo; n <= hi && !d.violation; ++n)
        if (abs(inv_a - 2 * Rational(n)) < rational_gcd(Rational(n), inv_ab) - (inv_ab - 1))
          violate(to_long(n), 2);
    }
  }

  Decision normalized = decide(g, opt);
  if (normalized.verdict != d.verdict)
    throw InternalInconsistency("time-frequency criterion disagrees with the normalized decision");
  return d;
}

struct LatticeWindow {
  Rational u;
  Rational v;
  bool operator==(const LatticeWindow&) const = default;
};

struct ReductionReport {
  enum class Case { AlreadyLattice, Below, Half, Above };
  Case kind = Case::AlreadyLattice;
  std::vector<LatticeWindow> windows;
};

// Frame property of H_c equals the joint frame property of the listed lattice windows.
inline ReductionReport reduce_window(const Rational& a, const Rational& c) {
  if (a <= 0 || a > 1) throw std::domain_error("reduce_window: need 0 < a <= 1");
  if (c <= 0) throw std::domain_error("reduce_window: need c > 0");
  const Integer q = den(a);
  const Rational step(1, q);
  auto [fl, fr] = lattice_round(c, q);
  ReductionReport rep;
  if (fr == 0) {
    rep.windows = {{c, c}};
    return rep;
  }
  const Rational half = step / 2;
  if (fr < half) {
    rep.kind = ReductionReport::Case::Below;
    rep.windows = {{fl, fl}, {fl, fl + step}};
  } else if (fr == half) {
    rep.kind = ReductionReport::Case::Half;
    rep.windows = {{fl, fl + step}};
  } else {
    rep.kind = ReductionReport::Case::Above;
    rep.windows = {{fl + step, fl + step}, {fl, fl + step}};
  }
  return rep;
}

}  // namespace haarframe
