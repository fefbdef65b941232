#include <gtest/gtest.h>

#include <random>

#include "bp/fp_poly.hpp"

using namespace bp;

namespace {

// Brute-force irreducibility: no monic divisor of degree 1..deg/2.
bool brute_irreducible(const PrimeField& F, const FpPoly& f) {
  int n = degree(f);
  for (int d = 1; 2 * d <= n; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i) count *= F.q;
    for (u64 idx = 0; idx < count; ++idx) {
      FpPoly g(d + 1);
      u64 t = idx;
      for (int i = 0; i < d; ++i) {
        g[i] = t % F.q;
        t /= F.q;
      }
      g[d] = 1;
      if (fp_mod(F, f, g).empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(FpPoly, FixtureQuarticModThree) {
  PrimeField F{3};
  FpPoly f = fp_from_z(F, {507, 48, 49, 2, 1});
  auto fs = fp_factor(F, f);
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].first, (FpPoly{0, 1}));
  EXPECT_EQ(fs[0].second, 2);
  EXPECT_EQ(fs[1].first, (FpPoly{1, 1}));
  EXPECT_EQ(fs[1].second, 2);
}

TEST(FpPoly, SplittingAndInert) {
  PrimeField F5{5}, F3{3}, F2{2};
  auto fs = fp_factor(F5, {1, 0, 1});
  ASSERT_EQ(fs.size(), 2u);
  EXPECT_EQ(fs[0].first, (FpPoly{2, 1}));
  EXPECT_EQ(fs[1].first, (FpPoly{3, 1}));
  EXPECT_TRUE(fp_is_irreducible(F3, {1, 0, 1}));
  auto f2 = fp_factor(F2, {1, 0, 1, 0, 1});
  ASSERT_EQ(f2.size(), 1u);
  EXPECT_EQ(f2[0].first, (FpPoly{1, 1, 1}));
  EXPECT_EQ(f2[0].second, 2);
}

TEST(FpPoly, RandomFactorizationsAgainstBruteForce) {
  std::mt19937_64 rng(11);
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL}) {
    PrimeField F{q};
    for (int t = 0; t < 150; ++t) {
      int n = 1 + int(rng() % 7);
      FpPoly f(n + 1);
      for (auto& c : f) c = rng() % q;
      f[n] = 1;
      auto fs = fp_factor(F, f);
      FpPoly prod = {1};
      for (auto& [g, m] : fs) {
        EXPECT_TRUE(brute_irreducible(F, g));
        for (int i = 0; i < m; ++i) prod = fp_mul(F, prod, g);
      }
      EXPECT_EQ(prod, f);
    }
  }
}

TEST(FpPoly, LargePrimeRoots) {
  PrimeField F{1000003};
  // (x - 5)(x - 999999)(x^2 + 1) has two linear factors
  FpPoly f = fp_mul(F, fp_mul(F, {F.neg(5), 1}, {F.neg(999999), 1}), {1, 0, 1});
  auto fs = fp_factor(F, f);
  int linear = 0;
  for (auto& [g, m] : fs) linear += degree(g) == 1;
  // 1000003 = 3 mod 4, so x^2 + 1 stays irreducible
  EXPECT_EQ(linear, 2);
  EXPECT_EQ(fs.size(), 3u);
}

TEST(FpPoly, InverseModulo) {
  PrimeField F{7};
  FpPoly m = {3, 0, 1, 1};  // irreducible? check, then test inverse
  if (fp_is_irreducible(F, m)) {
    FpPoly a = {2, 5};
    FpPoly inv = fp_invmod(F, a, m);
    EXPECT_EQ(fp_mulmod(F, a, inv, m), (FpPoly{1}));
  }
}
