#include <gtest/gtest.h>

#include <random>

#include "bp/linalg.hpp"

using namespace bp;

namespace {

ZMatrix diag_of(const SmithForm& s, const ZMatrix& a) {
  return reduce(s.u * a * s.v, pow_ui(s.p, s.m));
}

}  // namespace

TEST(Smith, DiagonalizesAndTracksInverses) {
  ZMatrix a(3, 3);
  a << 9, 3, 0, 6, 12, 27, 1, 0, 3;
  SmithForm s = smith_form(a, 3, 10);
  ZMatrix d = diag_of(s, a);
  const mpz_class m = pow_ui(3, 10);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_EQ(d(i, j), 0);
      else EXPECT_EQ(d(i, i), pow_ui(3, s.diag[i]));
  EXPECT_EQ(reduce(s.u * s.u_inv, m), ZMatrix::Identity(3, 3));
  EXPECT_EQ(reduce(s.v * s.v_inv, m), ZMatrix::Identity(3, 3));
  // det = 9*(36-0) - 3*(18-27) + 0 = 351 = 3^3 * 13
  int total = 0;
  for (int v : s.diag) total += v;
  EXPECT_EQ(total, 3);
}

TEST(Smith, RankDeficient) {
  ZMatrix a(2, 3);
  a << 1, 2, 3, 2, 4, 6;
  SmithForm s = smith_form(a, 5, 8);
  EXPECT_EQ(s.rank, 1);
  EXPECT_EQ(s.diag[1], 8);
}

TEST(Smith, SolveAndInverse) {
  ZMatrix a(2, 2);
  a << 3, 1, 0, 9;
  ZMatrix b(2, 1);
  b << 4, 9;
  auto x = solve_integral(a, b, 3, 12);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)(0, 0), 1);
  EXPECT_EQ((*x)(1, 0), 1);
  ZMatrix c(2, 1);
  c << 1, 0;
  EXPECT_FALSE(solve_integral(a, c, 3, 12).has_value());
  int shift = 0;
  ZMatrix inv = inverse_scaled(a, 3, 12, &shift);
  EXPECT_EQ(shift, 3);
  ZMatrix prod = reduce(a * inv, pow_ui(3, 12 - shift));
  EXPECT_EQ(prod, ZMatrix::Identity(2, 2) * pow_ui(3, shift));
}

TEST(Rational, DeterminantAndCharpoly) {
  QMatrix a(3, 3);
  a << 2, 1, 0, 0, 3, mpq_class(1, 2), 1, 0, 1;
  // det = 2*3*1 + 1*(1/2)*1 = 6.5
  EXPECT_EQ(determinant(a), mpq_class(13, 2));
  QVector c = charpoly(a);
  EXPECT_EQ(c(3), 1);
  EXPECT_EQ(c(0), -mpq_class(13, 2));
  EXPECT_EQ(c(2), -6);
}

TEST(Smith, RandomTriangularDeterminantOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + int(rng() % 6);
    ZMatrix a = ZMatrix::Zero(n, n);
    int expect = 0;
    for (int i = 0; i < n; ++i) {
      long d = long(rng() % 40) + 1;
      a(i, i) = d;
      expect += vp(mpz_class(d), 3, 100);
      for (int j = i + 1; j < n; ++j) a(i, j) = long(rng() % 50) - 25;
    }
    auto diag = elementary_divisor_valuations(a, 3, 30);
    int total = 0;
    for (int v : diag) total += v;
    EXPECT_EQ(total, expect);
  }
}
