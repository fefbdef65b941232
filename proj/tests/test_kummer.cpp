#include <gtest/gtest.h>

#include <random>

#include "bp/kummer.hpp"

using namespace bp;

namespace {

using ZPoly = std::vector<mpz_class>;

const ZPoly kQ3 = {0, 1};
const ZPoly kZeta3 = {1, 1, 1};

LocalElt random_elt(const LocalFieldPtr& F, std::mt19937_64& rng) {
  ZVector c(F->n);
  for (int i = 0; i < F->n; ++i) c(i) = long(rng() % 1000000);
  return LocalElt(F, c, F->precision);
}

LocalFieldPtr tower_of(const LocalElt& a) {
  KummerResult r = make_kummer_tower(a);
  if (!std::holds_alternative<LocalFieldPtr>(r)) return nullptr;
  return std::get<LocalFieldPtr>(r);
}

bool same(const LocalElt& a, const LocalElt& b) {
  int k = std::min(a.precision(), b.precision());
  return with_precision(a, k) == with_precision(b, k);
}

}  // namespace

TEST(Kummer, CubeRootOfZetaThree) {
  auto B = make_base_field(3, 60, kZeta3);
  LocalElt zeta(B, B->generator, B->precision);
  auto T = tower_of(zeta);
  ASSERT_TRUE(T);
  EXPECT_EQ(T->n, 6);
  EXPECT_EQ(T->e, 6);
  EXPECT_EQ(T->f, 1);
  EXPECT_EQ(mu_p_part(T).k, 2);
  EXPECT_TRUE(same(pow(kummer_root(T), 3), embed(T, zeta)));
}

TEST(Kummer, SplitCases) {
  auto B = make_base_field(3, 50, kZeta3);
  for (long c : {1L, 8L, -27L, 64L}) {
    LocalElt a = from_integer(B, c);
    KummerResult r = make_kummer_tower(a);
    ASSERT_TRUE(std::holds_alternative<SplitMarker>(r)) << c;
    const LocalElt& w = std::get<SplitMarker>(r).root;
    EXPECT_TRUE(same(pow(w, 3), a));
  }
}

TEST(Kummer, RamifiedNonUnitRadicand) {
  auto B = make_base_field(3, 50, kZeta3);
  auto T = tower_of(uniformizer(B));
  ASSERT_TRUE(T);
  EXPECT_EQ(T->e, 6);
  EXPECT_EQ(valuation(kummer_root(T)), 1);
}

TEST(Kummer, UnramifiedLayerExists) {
  auto B = make_base_field(3, 50, kZeta3);
  int unramified = 0;
  // 1 + 3 pi t has defect exactly p e / (p - 1)
  for (long t = -4; t <= 4; ++t) {
    LocalElt a = one(B) + from_integer(B, 3 * t) * uniformizer(B);
    auto T = tower_of(a);
    if (!T) continue;
    EXPECT_TRUE(same(pow(kummer_root(T), 3), embed(T, a)));
    if (T->f == 3) {
      ++unramified;
      EXPECT_EQ(T->e, 2);
      EXPECT_EQ(T->residue.size(), 27u);
      EXPECT_EQ(mu_p_part(T).k, 1);
      GaloisGenerator s = galois_generator(T);
      std::mt19937_64 rng(t + 100);
      LocalElt x = random_elt(T, rng);
      EXPECT_TRUE(same(s(s(s(x))), x));
      EXPECT_FALSE(same(s(x), x));
      EXPECT_EQ(w_one_minus_s(s).order, 1);
    }
  }
  EXPECT_GT(unramified, 0);
}

TEST(Kummer, GaloisActionIsAnAutomorphismOfOrderP) {
  std::mt19937_64 rng(3);
  auto B = make_base_field(3, 60, kZeta3);
  LocalElt zeta(B, B->generator, B->precision);
  for (const LocalElt& a : {zeta, from_integer(B, 4), uniformizer(B)}) {
    auto T = tower_of(a);
    ASSERT_TRUE(T);
    GaloisGenerator s = galois_generator(T);
    LocalElt y = kummer_root(T);
    EXPECT_TRUE(same(s(y), embed(T, s.zeta_p) * y));
    for (int t = 0; t < 20; ++t) {
      LocalElt x = random_elt(T, rng), z = random_elt(T, rng);
      EXPECT_TRUE(same(s(s(s(x))), x));
      EXPECT_TRUE(same(s(x * z), s(x) * s(z)));
      LocalElt b = random_elt(B, rng);
      EXPECT_TRUE(same(s(embed(T, b)), embed(T, b)));
    }
  }
}

TEST(Kummer, RelativeNorm) {
  std::mt19937_64 rng(11);
  auto B = make_base_field(3, 60, kZeta3);
  LocalElt zeta(B, B->generator, B->precision);
  auto T = tower_of(zeta);
  ASSERT_TRUE(T);
  GaloisGenerator s = galois_generator(T);
  EXPECT_TRUE(same(relative_norm(s, kummer_root(T)), zeta));
  MuGroup mu = mu_p_part(T);
  LocalElt nz = relative_norm(s, *mu.zeta);
  EXPECT_TRUE(same(pow(nz, 3), one(B)));
  EXPECT_FALSE(same(nz, one(B)));
  for (int t = 0; t < 20; ++t) {
    LocalElt x = random_elt(T, rng), z = random_elt(T, rng);
    EXPECT_TRUE(same(relative_norm(s, x * z), relative_norm(s, x) * relative_norm(s, z)));
    LocalElt b = random_elt(B, rng);
    EXPECT_TRUE(same(relative_norm(s, embed(T, b)), pow(b, 3)));
  }
}

TEST(Kummer, Descent) {
  std::mt19937_64 rng(7);
  auto B = make_base_field(3, 50, kZeta3);
  auto T = tower_of(from_integer(B, 4));
  ASSERT_TRUE(T);
  LocalElt b = random_elt(B, rng);
  auto d = descend(embed(T, b));
  ASSERT_TRUE(d);
  EXPECT_TRUE(same(*d, b));
  EXPECT_FALSE(descend(kummer_root(T)));
}

TEST(Kummer, RootsOfUnityQuotient) {
  auto B = make_base_field(3, 60, kZeta3);
  LocalElt zeta(B, B->generator, B->precision);
  auto T9 = tower_of(zeta);
  ASSERT_TRUE(T9);
  EXPECT_EQ(w_one_minus_s(galois_generator(T9)).order, 3);
  auto T = tower_of(from_integer(B, 4));
  ASSERT_TRUE(T);
  EXPECT_EQ(w_one_minus_s(galois_generator(T)).order, mu_p_part(T).k >= 2 ? 3 : 1);
}

TEST(Kummer, NonGaloisLayerRejected) {
  auto Q3 = make_base_field(3, 40, kQ3);
  auto T = tower_of(from_integer(Q3, 2));
  ASSERT_TRUE(T);
  EXPECT_EQ(T->e, 3);
  try {
    (void)galois_generator(T);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotKummer);
  }
}
