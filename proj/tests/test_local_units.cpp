#include <gtest/gtest.h>

#include <random>

#include "bp/local_units.hpp"

using namespace bp;

namespace {

using ZPoly = std::vector<mpz_class>;

LocalElt from_power_basis(const LocalFieldPtr& F, const ZPoly& a) {
  LocalElt theta(F, F->generator, F->precision);
  LocalElt acc = zero(F);
  for (size_t i = a.size(); i-- > 0;) acc = acc * theta + from_integer(F, a[i]);
  return acc;
}

LocalElt random_unit(const LocalFieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    ZVector c(F->n);
    for (int i = 0; i < F->n; ++i) c(i) = long(rng() % 100000);
    LocalElt x(F, c, F->precision);
    if (valuation(x) == 0) return x;
  }
}

LocalElt align(const LocalLog& l, int shift) {
  return scale(l.value, pow_ui(l.value.prime(), shift - l.shift));
}

const ZPoly kQ3 = {0, 1};
const ZPoly kZeta3 = {1, 1, 1};
const ZPoly kZeta9 = {1, 0, 0, 1, 0, 0, 1};

}  // namespace

TEST(Mu, LocalRootsOfUnity) {
  EXPECT_EQ(mu_p_part(make_base_field(3, 40, kQ3)).k, 0);
  EXPECT_EQ(mu_p_part(make_base_field(3, 40, kZeta3)).k, 1);
  EXPECT_EQ(mu_p_part(make_base_field(3, 60, kZeta9)).k, 2);
  EXPECT_EQ(mu_p_part(make_base_field(3, 40, {1, 0, 1})).k, 0);
  EXPECT_EQ(mu_p_part(make_base_field(5, 40, {1, 1, 1, 1, 1})).k, 1);
  EXPECT_EQ(mu_p_part(make_base_field(7, 30, kQ3)).k, 0);
}

TEST(Mu, GeneratorHasExactOrder) {
  auto F = make_base_field(3, 60, kZeta9);
  MuGroup mu = mu_p_part(F);
  ASSERT_TRUE(mu.zeta);
  EXPECT_EQ(pow(*mu.zeta, 9), with_precision(one(F), mu.zeta->precision()));
  EXPECT_FALSE(pow(*mu.zeta, 3) == with_precision(one(F), mu.zeta->precision()));
}

TEST(Mu, StableUnderPrecision) {
  for (const ZPoly& g : {kQ3, kZeta3, kZeta9}) {
    auto a = mu_p_part(make_base_field(3, 50, g));
    auto b = mu_p_part(make_base_field(3, 70, g));
    EXPECT_EQ(a.k, b.k);
  }
}

TEST(PthPower, ZetaThreeIsNotACube) {
  auto F = make_base_field(3, 30, kZeta3);
  LocalElt zeta(F, F->generator, F->precision);
  EXPECT_FALSE(is_pth_power(zeta).is_power);
  // exhaustive oracle: no x = a + b*theta mod 3^3 has x^3 = zeta mod 3^3
  const int k = 3;
  bool found = false;
  for (long a = 0; a < 27 && !found; ++a)
    for (long b = 0; b < 27 && !found; ++b) {
      LocalElt x = with_precision(from_power_basis(F, {a, b}), k);
      if (pow(x, 3) == with_precision(zeta, k)) found = true;
    }
  EXPECT_FALSE(found);
  EXPECT_TRUE(is_pth_power(one(F)).is_power);
}

TEST(PthPower, NonUnits) {
  auto F = make_base_field(3, 30, kZeta3);
  LocalElt pi = uniformizer(F);
  EXPECT_FALSE(is_pth_power(pi).is_power);
  auto r = is_pth_power(pi * pi * pi);
  ASSERT_TRUE(r.is_power);
  EXPECT_EQ(pow(*r.witness, 3), with_precision(pi * pi * pi, r.witness->precision()));
}

TEST(PthPower, PrecisionFloor) {
  auto F = make_base_field(3, 8, kZeta3);
  try {
    (void)is_pth_power(one(F));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionExhausted);
  }
}

TEST(PthPower, RandomPowersHaveWitnesses) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const ZPoly& g : {kQ3, kZeta3, kZeta9}) {
    auto F = make_base_field(3, 40, g);
    for (int t = 0; t < 340; ++t) {
      LocalElt x = random_unit(F, rng);
      LocalElt u = pow(x, 3);
      auto r = is_pth_power(u);
      ASSERT_TRUE(r.is_power);
      EXPECT_EQ(pow(*r.witness, 3), with_precision(u, r.witness->precision()));
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(LocalLog, HomomorphismAndRoundTrip) {
  std::mt19937_64 rng(17);
  for (const ZPoly& g : {kQ3, kZeta3, kZeta9}) {
    auto F = make_base_field(3, 40, g);
    for (int t = 0; t < 120; ++t) {
      LocalElt u = one(F) + uniformizer(F) * random_unit(F, rng);
      LocalElt v = one(F) + uniformizer(F) * random_unit(F, rng);
      LocalLog lu = log_principal(u), lv = log_principal(v), luv = log_principal(u * v);
      int s = std::max({lu.shift, lv.shift, luv.shift});
      LocalElt d = align(luv, s) - align(lu, s) - align(lv, s);
      EXPECT_TRUE(is_zero(d));
      // isometric domain round trip
      const int m0 = F->e / 2 + 1;
      LocalElt w = one(F) + pow(uniformizer(F), m0) * random_unit(F, rng);
      LocalElt back = exp_isometric(log_isometric(w));
      EXPECT_EQ(back, with_precision(w, back.precision()));
    }
  }
}

TEST(LocalLog, KillsRootsOfUnity) {
  auto F = make_base_field(3, 40, kZeta3);
  LocalElt zeta(F, F->generator, F->precision);
  EXPECT_TRUE(is_zero(log_unit(zeta).value));
  EXPECT_TRUE(is_zero(log_unit(from_integer(F, -1)).value));
}

TEST(Roots, CyclotomicAndQuadratic) {
  auto F = make_base_field(3, 30, kZeta3);
  std::vector<LocalElt> phi3(3, one(F));
  auto r = integral_roots(phi3);
  ASSERT_EQ(r.size(), 2u);
  for (auto& z : r) EXPECT_TRUE(is_zero(evaluate(phi3, z)));
  auto Q5 = make_base_field(5, 20, kQ3);
  std::vector<LocalElt> x2p1 = {one(Q5), zero(Q5), one(Q5)};
  EXPECT_EQ(integral_roots(x2p1).size(), 2u);
  auto Q3 = make_base_field(3, 20, kQ3);
  std::vector<LocalElt> y2p1 = {one(Q3), zero(Q3), one(Q3)};
  EXPECT_EQ(integral_roots(y2p1).size(), 0u);
}
