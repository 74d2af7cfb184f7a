#pragma once

#include "haarframe/frame_decider.hpp"
#include "haarframe/witness.hpp"

#include <Eigen/SVD>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace haarframe {

struct NullspaceWitness {
  Rational x;
  long period = 0;  // P = p k
  long k = 0;
  std::vector<Rational> vector;               // one period of the sequence
  std::vector<std::vector<Rational>> basis;   // full nullspace of the periodic system
};

namespace detail {

// Coefficient matrix of sum_j q_{j mod P} H_{u,v}(x + j - n a) = 0, n = 0..qk-1.
inline std::vector<std::vector<long>> lattice_system(const Rational& a, const LatticeWindow& w,
                                                     const Rational& x, long k) {
  const long p = to_long(num(a)), q = to_long(den(a));
  const long P = p * k, rows = q * k;
  std::vector<std::vector<long>> A(rows, std::vector<long>(P, 0));
  for (long n = 0; n < rows; ++n) {
    Rational base = x - n * a;
    long j_lo = to_long(floor_int(-w.u - base));
    long j_hi = to_long(floor_int(w.v - base)) + 1;
    for (long j = j_lo; j <= j_hi; ++j) {
      int h = haar_value(base + j, w.u, w.v);
      if (h) A[n][((j % P) + P) % P] += h;
    }
  }
  return A;
}

// prime < 2^31 keeps every product inside 64 bits
inline long rank_mod_prime(std::vector<std::vector<long>> A, std::int64_t prime) {
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  auto pw = [&](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= prime;
    for (; e; e >>= 1, b = b * b % prime)
      if (e & 1) r = r * b % prime;
    return r;
  };
  for (auto& row : A)
    for (auto& v : row) v = ((v % prime) + prime) % prime;
  long rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<long>(rows); ++col) {
    std::size_t piv = rank;
    while (piv < rows && A[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[rank]);
    std::int64_t inv = pw(A[rank][col], prime - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (!A[r][col]) continue;
      std::int64_t f = A[r][col] * inv % prime;
      for (std::size_t c = col; c < cols; ++c)
        A[r][c] = ((A[r][c] - f * A[rank][c]) % prime + prime) % prime;
    }
    ++rank;
  }
  return rank;
}

// Basis of {v : A v = 0} over the rationals via reduced row echelon form.
inline std::vector<std::vector<Rational>> rational_nullspace(const std::vector<std::vector<long>>& in) {
  const std::size_t rows = in.size(), cols = rows ? in[0].size() : 0;
  std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) A[r][c] = Rational(in[r][c]);
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && A[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[rank]);
    Rational inv = 1 / A[rank][col];
    for (std::size_t c = col; c < cols; ++c) A[rank][c] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][col] == 0) continue;
      Rational f = A[r][col];
      for (std::size_t c = col; c < cols; ++c) A[r][c] -= f * A[rank][c];
    }
    pivot_of_col[col] = static_cast<long>(rank++);
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0) v[col] = -A[pivot_of_col[col]][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

inline void check_lattice_window(const Rational& a, const LatticeWindow& w) {
  const Rational q(den(a));
  if (w.u < 0 || w.v <= 0 || !is_integer(w.u * q) || !is_integer(w.v * q))
    throw std::domain_error("lattice window: u, v must be multiples of 1/q with v > 0");
}

// Periodic null sequences for the lattice window; absence up to the cap is inconclusive.
inline std::optional<NullspaceWitness> nullspace_search(const Rational& a, const LatticeWindow& w,
                                                        long max_period_multiple = 8) {
  if (a <= 0 || a > 1) throw std::domain_error("nullspace_search: need 0 < a <= 1");
  check_lattice_window(a, w);
  const long p = to_long(num(a)), q = to_long(den(a));
  constexpr std::int64_t prime = 2147483647;  // 2^31 - 1
  for (long k = 1; k <= max_period_multiple; ++k) {
    for (long j = 0; j < p; ++j) {
      Rational x(j, q);
      auto A = detail::lattice_system(a, w, x, k);
      // rank over Q is at least the rank mod a prime
      if (detail::rank_mod_prime(A, prime) == p * k) continue;
      auto basis = detail::rational_nullspace(A);
      if (basis.empty()) continue;
      NullspaceWitness out{x, p * k, k, basis.front(), std::move(basis)};
      return out;
    }
  }
  return std::nullopt;
}

// Exact re-check of a periodic solution over `periods` full n-periods.
inline bool verify_lattice_witness(const Rational& a, const LatticeWindow& w,
                                   const NullspaceWitness& s, long periods = 2) {
  const long q = to_long(den(a));
  const long P = s.period;
  bool nonzero = false;
  for (const auto& v : s.vector) nonzero = nonzero || v != 0;
  if (!nonzero) return false;
  for (long n = 0; n < periods * q * s.k; ++n) {
    Rational base = s.x - n * a;
    long j_lo = to_long(floor_int(-w.u - base));
    long j_hi = to_long(floor_int(w.v - base)) + 1;
    Rational total = 0;
    for (long j = j_lo; j <= j_hi; ++j) {
      int h = haar_value(base + j, w.u, w.v);
      if (h) total += h * s.vector[((j % P) + P) % P];
    }
    if (total != 0) return false;
  }
  return true;
}

struct GramianEstimate {
  long truncation = 0;
  std::vector<Rational> x_samples;
  std::vector<double> sigma;  // per sample
  double min_singular_estimate = 0;
  bool diagnostic = true;     // floating point; never a verdict
};

inline double gramian_sigma_min(const Rational& a, const Rational& c, const Rational& x,
                                long truncation) {
  long n_lo = to_long(floor_int((x - truncation - c) / a)) - 1;
  long n_hi = to_long(floor_int((x + truncation + c) / a)) + 1;
  const long cols = 2 * truncation + 1;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n_hi - n_lo + 1, cols);
  for (long n = n_lo; n <= n_hi; ++n) {
    Rational base = x - n * a;
    for (long j = -truncation; j <= truncation; ++j)
      G(n - n_lo, j + truncation) = haar_value(base + j, c, c);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(G);
  return svd.singularValues().minCoeff();
}

inline GramianEstimate ronshen_estimate(const GaborParams& g, long truncation = 64,
                                        long x_grid_size = 16) {
  if (!g.a_rational()) throw std::domain_error("ronshen_estimate: a must be rational");
  if (truncation <= 0 || x_grid_size <= 0)
    throw std::domain_error("ronshen_estimate: truncation and grid size must be positive");
  const Rational& a = g.a_value();
  GramianEstimate est;
  est.truncation = truncation;
  est.min_singular_estimate = std::numeric_limits<double>::infinity();
  for (long i = 0; i < x_grid_size; ++i) {
    Rational x = a * Rational(i, x_grid_size);
    double s = gramian_sigma_min(a, g.c, x, truncation);
    est.x_samples.push_back(x);
    est.sigma.push_back(s);
    est.min_singular_estimate = std::min(est.min_singular_estimate, s);
  }
  return est;
}

}  // namespace haarframe
