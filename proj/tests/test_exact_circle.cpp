#include "support.hpp"

#include <gtest/gtest.h>

using namespace haarframe;
using haarframe::testing::R;

TEST(CircleFrac, Examples) {
  EXPECT_EQ(circle_frac(R(7, 3)), R(1, 3));
  EXPECT_EQ(circle_frac(R(-1, 3)), R(2, 3));
  EXPECT_EQ(circle_frac_star(R(3, 2)), R(1, 2));
  EXPECT_EQ(circle_frac_star(R(2)), R(1));
  EXPECT_EQ(circle_frac_star(R(0)), R(1));
}

TEST(CircleFrac, Identities) {
  for (long n = -40; n <= 40; ++n)
    for (long d = 1; d <= 9; ++d) {
      Rational x(n, d);
      EXPECT_EQ(circle_frac(x) + floor(x), x);
      EXPECT_GE(circle_frac(x), 0);
      EXPECT_LT(circle_frac(x), 1);
      EXPECT_EQ(circle_frac_star(x), 1 - circle_frac(1 - x));
      EXPECT_GT(circle_frac_star(x), 0);
      EXPECT_LE(circle_frac_star(x), 1);
    }
}

// Largest g = k/L dividing both arguments, found by scanning k downward.
static Rational brute_gcd(const Rational& x, const Rational& y) {
  Integer L = lcm(den(x), den(y));
  long top = to_long(num(std::min(x, y) * Rational(L)));
  for (long k = top; k >= 1; --k) {
    Rational g(k, L);
    if (is_integer(x / g) && is_integer(y / g)) return g;
  }
  return 0;
}

TEST(RationalGcd, Examples) {
  EXPECT_EQ(rational_gcd(R(1), R(3, 4)), R(1, 4));
  EXPECT_EQ(rational_gcd(R(2), R(3)), R(1));
  EXPECT_EQ(rational_gcd(R(2), R(4, 3)), R(2, 3));
  EXPECT_EQ(brute_gcd(R(1), R(3, 4)), R(1, 4));
  EXPECT_EQ(brute_gcd(R(2), R(4, 3)), R(2, 3));
}

TEST(RationalGcd, RejectsNonPositive) {
  EXPECT_THROW(rational_gcd(R(0), R(1)), std::domain_error);
  EXPECT_THROW(rational_gcd(R(1), R(-1, 2)), std::domain_error);
}

TEST(RationalGcd, MatchesDivisorScan) {
  for (long a = 1; a <= 12; ++a)
    for (long b = 1; b <= 6; ++b)
      for (long c = 1; c <= 12; ++c)
        for (long d = 1; d <= 6; ++d) {
          Rational x(a, b), y(c, d);
          Rational g = rational_gcd(x, y);
          ASSERT_TRUE(is_integer(x / g) && is_integer(y / g));
          ASSERT_EQ(g, brute_gcd(x, y)) << to_string(x) << " " << to_string(y);
        }
}

TEST(LatticeRound, Examples) {
  auto a = lattice_round(R(4, 5), 2);
  EXPECT_EQ(a.floor_q, R(1, 2));
  EXPECT_EQ(a.frac_q, R(3, 10));
  auto b = lattice_round(R(3, 2), 2);
  EXPECT_EQ(b.floor_q, R(3, 2));
  EXPECT_EQ(b.frac_q, R(0));
  auto c = lattice_round(R(21, 10), 1);
  EXPECT_EQ(c.floor_q, R(2));
  EXPECT_EQ(c.frac_q, R(1, 10));
}

TEST(LatticeRound, Postconditions) {
  for (long q = 1; q <= 7; ++q)
    for (long n = -30; n <= 30; ++n) {
      Rational x(n, 11);
      auto s = lattice_round(x, q);
      EXPECT_TRUE(is_integer(s.floor_q * q));
      EXPECT_GE(s.frac_q, 0);
      EXPECT_LT(s.frac_q, R(1, q));
      EXPECT_EQ(s.floor_q + s.frac_q, x);
    }
}

TEST(Parse, RoundTripAndRejectsDecimals) {
  EXPECT_EQ(parse_rational("3/4"), R(3, 4));
  EXPECT_EQ(parse_rational("6/8"), R(3, 4));
  EXPECT_EQ(parse_rational("-2"), R(-2));
  EXPECT_EQ(to_string(R(6, 8)), "3/4");
  EXPECT_EQ(to_string(R(4, 2)), "2");
  EXPECT_THROW(parse_rational("0.75"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1e3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(IntervalUnion, BooleanExamples) {
  IntervalUnion A{{R(0), R(1, 3)}, {R(2, 3), R(1)}};
  EXPECT_EQ(intersect(A, IntervalUnion{{R(1, 4), R(3, 4)}}),
            (IntervalUnion{{R(1, 4), R(1, 3)}, {R(2, 3), R(3, 4)}}));
  EXPECT_EQ(subtract(IntervalUnion::circle(), IntervalUnion{{R(1, 3), R(2, 3)}}), A);
  EXPECT_EQ(unite(IntervalUnion{{R(0), R(1, 2)}}, IntervalUnion{{R(1, 2), R(1)}}),
            IntervalUnion::circle());
  EXPECT_EQ(iu_boolean(A, A, SetOp::Subtract), IntervalUnion{});
}

TEST(IntervalUnion, CanonicalForm) {
  IntervalUnion A{{R(1, 2), R(3, 4)}, {R(0), R(1, 4)}, {R(1, 4), R(1, 3)}, {R(1, 5), R(1, 5)}};
  ASSERT_EQ(A.size(), 2u);
  EXPECT_EQ(A.parts()[0], (HalfOpenInterval{R(0), R(1, 3)}));
  // the wrap pair stays split
  IntervalUnion W{{R(0), R(1, 4)}, {R(3, 4), R(1)}};
  EXPECT_EQ(W.size(), 2u);
  EXPECT_EQ(to_string(W), "[0,1/4)∪[3/4,1)");
  EXPECT_EQ(to_string(IntervalUnion{}), "∅");
  EXPECT_THROW((IntervalUnion{{R(1, 2), R(3, 2)}}), std::domain_error);
}

TEST(IntervalUnion, TranslateExamples) {
  EXPECT_EQ(iu_translate(IntervalUnion{{R(2, 3), R(1)}}, R(1, 3)), (IntervalUnion{{R(0), R(1, 3)}}));
  EXPECT_EQ(iu_translate(IntervalUnion{{R(1, 2), R(1)}}, R(2, 3)),
            (IntervalUnion{{R(1, 6), R(2, 3)}}));
  IntervalUnion A{{R(1, 7), R(2, 7)}, {R(5, 7), R(1)}};
  EXPECT_EQ(iu_translate(A, 0), A);
  EXPECT_EQ(iu_translate(A, 3), A);
}

TEST(IntervalUnion, ReflectExamples) {
  EXPECT_EQ(iu_reflect(IntervalUnion{{R(0), R(1, 3)}}), (IntervalUnion{{R(2, 3), R(1)}}));
  IntervalUnion sym{{R(1, 8), R(3, 8)}, {R(5, 8), R(7, 8)}};
  EXPECT_EQ(iu_reflect(sym), sym);
}

TEST(IntervalUnion, RandomizedProperties) {
  std::mt19937_64 rng(20261015);
  std::uniform_int_distribution<long> shift(-30, 30);
  for (int trial = 0; trial < 500; ++trial) {
    auto A = haarframe::testing::random_union(rng, 24, 4);
    auto B = haarframe::testing::random_union(rng, 36, 4);
    EXPECT_EQ(unite(A, B).measure() + intersect(A, B).measure(), A.measure() + B.measure());
    EXPECT_EQ(unite(subtract(A, B), intersect(A, B)), A);
    EXPECT_EQ(complement(complement(A)), A);
    Rational s(shift(rng), 7);
    auto T = iu_translate(A, s);
    EXPECT_EQ(T.measure(), A.measure());
    EXPECT_EQ(iu_translate(T, -s), A);
    EXPECT_EQ(iu_reflect(iu_reflect(A)), A);
    EXPECT_EQ(iu_reflect(A).measure(), A.measure());
    // pointwise agreement on a mesh
    for (long i = 0; i < 72; ++i) {
      Rational t(i, 72);
      EXPECT_EQ(intersect(A, B).contains(t), A.contains(t) && B.contains(t));
      EXPECT_EQ(unite(A, B).contains(t), A.contains(t) || B.contains(t));
      EXPECT_EQ(T.contains(circle_frac(t + s)), A.contains(t));
      EXPECT_EQ(iu_reflect(A).contains(t), A.contains(1 - t - R(1, 144)));
    }
    for (std::size_t k = 1; k < A.size(); ++k) EXPECT_LT(A.parts()[k - 1].hi, A.parts()[k].lo);
  }
}
