#pragma once

#include "haarframe/gabor_params.hpp"
#include "haarframe/invariant_set.hpp"

#include <set>
#include <stdexcept>
#include <vector>

namespace haarframe {

// H_{u,v} = -chi[-u,0) + chi[0,v); H_c is the case u = v = c.
inline int haar_value(const Rational& y, const Rational& u, const Rational& v) {
  if (y >= 0) return y < v ? 1 : 0;
  return y >= -u ? -1 : 0;
}

struct WitnessSequence {
  Rational t0;
  long period_K = 0;
  std::set<long> ones;

  bool at(long j) const { return ones.count(((j % period_K) + period_K) % period_K) > 0; }
};

struct WitnessCheck {
  bool verified = false;
  long failed_n = 0;
};

inline WitnessSequence build_witness(const GaborParams& g, const SymmetricSetResult& e) {
  if (e.E.empty()) throw std::domain_error("build_witness: E is empty, no witness exists");
  MapParams p = map_params(g);
  const Rational t = e.E.parts().front().lo;
  LambdaCycle cyc = lambda_cycle(p, to_long(floor_int(g.c)), e, t);
  return {t * g.a_value(), cyc.period_K, cyc.residues};
}

// sum_j q_j H_{u,v}(x + j - n a)
inline Rational shifted_sum(const WitnessSequence& w, const Rational& a, const Rational& u,
                            const Rational& v, long n) {
  Rational base = w.t0 - n * a;
  // j ranges over [-u - base, v - base)
  long j_lo = to_long(floor_int(-u - base));
  long j_hi = to_long(floor_int(v - base)) + 1;
  long total = 0;
  for (long j = j_lo; j <= j_hi; ++j)
    if (w.at(j)) total += haar_value(base + j, u, v);
  return Rational(total);
}

// Checks |n| <= n_window in order 0, 1, -1, 2, -2, ..., then one full n-period
// [0, qK), after which the sum repeats because the sequence is K-periodic.
inline WitnessCheck verify_witness(const WitnessSequence& w, const GaborParams& g, long n_window,
                                   const Rational& u, const Rational& v) {
  if (!g.a_rational()) throw std::domain_error("verify_witness: a must be rational");
  if (w.period_K <= 0 || w.ones.empty()) return {false, 0};
  const Rational& a = g.a_value();
  auto bad = [&](long n) { return shifted_sum(w, a, u, v, n) != 0; };
  for (long m = 0; m <= n_window; ++m) {
    if (bad(m)) return {false, m};
    if (m && bad(-m)) return {false, -m};
  }
  long period = to_long(den(a)) * w.period_K;
  for (long n = n_window + 1; n < period; ++n)
    if (bad(n)) return {false, n};
  return {true, 0};
}

inline WitnessCheck verify_witness(const WitnessSequence& w, const GaborParams& g,
                                   long n_window = 500) {
  return verify_witness(w, g, n_window, g.c, g.c);
}

}  // namespace haarframe
