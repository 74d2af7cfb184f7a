#pragma once

// Independent reference computations used by the tests. Nothing here calls the
// interval-union image machinery: sets are explicit lists of lattice cells.

#include "haarframe/haarframe.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace haarframe::testing {

inline Rational R(long n, long d = 1) { return Rational(n, d); }

inline std::vector<Rational> sample_points(const IntervalUnion& A) {
  std::vector<Rational> out;
  for (const auto& p : A.parts()) {
    out.push_back(p.lo);
    out.push_back((p.lo + p.hi) / 2);
  }
  return out;
}

// Points of A on a mesh of step 1/(4 L).
inline std::vector<Rational> mesh_points(const IntervalUnion& A, long L) {
  std::vector<Rational> out;
  for (long i = 0; i < 4 * L; ++i) {
    Rational t(i, 4 * L);
    if (A.contains(t)) out.push_back(t);
  }
  return out;
}

// The circle cut into L cells [i/L, (i+1)/L); the map is a permutation-like index map.
class CellLattice {
 public:
  CellLattice(const MapParams& p, long L) : L_(L), next_(L), hole_(L, false) {
    long x1 = to_long(num(p.x1 * L)), x2 = to_long(num(p.x2 * L));
    long su = to_long(num(circle_frac(p.u_shift()) * L)), sv = to_long(num(p.alpha * L));
    for (long i = 0; i < L; ++i) {
      if (i < x1) next_[i] = (i + su) % L;
      else if (i < x2) { next_[i] = i; hole_[i] = true; }
      else next_[i] = (i + sv) % L;
    }
  }

  static long natural_lattice(const MapParams& p) { return to_long(p.lattice()); }

  // Cells whose forward orbit never meets the hole.
  std::vector<bool> invariant_cells() const {
    enum State { Unknown, Visiting, In, Out };
    std::vector<State> st(L_, Unknown);
    for (long s = 0; s < L_; ++s) {
      std::vector<long> path;
      long i = s;
      State verdict;
      while (true) {
        if (st[i] == In || st[i] == Out) { verdict = st[i]; break; }
        if (st[i] == Visiting) { verdict = In; break; }
        if (hole_[i]) { verdict = Out; break; }
        st[i] = Visiting;
        path.push_back(i);
        i = next_[i];
      }
      if (hole_[i]) st[i] = Out;
      for (long k : path) st[k] = verdict;
    }
    std::vector<bool> out(L_);
    for (long i = 0; i < L_; ++i) out[i] = st[i] == In;
    return out;
  }

  // Largest cell set closed under the forward map and the mirrored backward map.
  std::vector<bool> symmetric_cells() const {
    auto S = invariant_cells();
    std::vector<bool> F(L_);
    for (long i = 0; i < L_; ++i) F[i] = S[i] && S[L_ - 1 - i];
    bool changed = true;
    while (changed) {
      changed = false;
      for (long i = 0; i < L_; ++i) {
        if (!F[i]) continue;
        long back = L_ - 1 - next_[L_ - 1 - i];
        if (!F[next_[i]] || !F[back]) { F[i] = false; changed = true; }
      }
    }
    return F;
  }

  IntervalUnion to_union(const std::vector<bool>& cells) const {
    std::vector<HalfOpenInterval> parts;
    for (long i = 0; i < L_; ++i)
      if (cells[i]) parts.push_back({Rational(i, L_), Rational(i + 1, L_)});
    return IntervalUnion(std::move(parts));
  }

 private:
  long L_;
  std::vector<long> next_;
  std::vector<bool> hole_;
};

inline IntervalUnion reference_S(const MapParams& p) {
  CellLattice lat(p, CellLattice::natural_lattice(p));
  return lat.to_union(lat.invariant_cells());
}

inline IntervalUnion reference_E(const MapParams& p) {
  CellLattice lat(p, CellLattice::natural_lattice(p));
  return lat.to_union(lat.symmetric_cells());
}

inline Rational random_rational(std::mt19937_64& rng, long max_den, bool allow_one = false) {
  std::uniform_int_distribution<long> dd(1, max_den);
  long d = dd(rng);
  std::uniform_int_distribution<long> nd(0, allow_one ? d : d - 1);
  return Rational(nd(rng), d);
}

inline MapParams random_map_params(std::mt19937_64& rng, long max_den) {
  while (true) {
    Rational alpha = random_rational(rng, max_den);
    Rational x1 = random_rational(rng, max_den);
    Rational x2 = random_rational(rng, max_den, true);
    if (x1 < x2) return MapParams(alpha, x1, x2);
  }
}

inline IntervalUnion random_union(std::mt19937_64& rng, long den, int max_parts) {
  std::uniform_int_distribution<long> pick(0, den);
  std::uniform_int_distribution<int> count(0, max_parts);
  std::vector<HalfOpenInterval> parts;
  for (int k = count(rng); k > 0; --k) {
    long a = pick(rng), b = pick(rng);
    if (a > b) std::swap(a, b);
    parts.push_back({Rational(a, den), Rational(b, den)});
  }
  return IntervalUnion(std::move(parts));
}

struct GridPoint {
  Rational a, c;
};

// a = p/q (q <= 10, coprime), c = m/24 in (1,5) not an integer, inside the density region.
inline std::vector<GridPoint> route_grid() {
  std::vector<GridPoint> out;
  for (long q = 2; q <= 10; ++q)
    for (long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      for (long m = 25; m < 120; ++m) {
        Rational c(m, 24);
        if (is_integer(c)) continue;
        GaborParams g(Rational(p, q), c);
        if (density_check(g) == Region::InRegion) out.push_back({Rational(p, q), c});
      }
    }
  return out;
}

}  // namespace haarframe::testing
