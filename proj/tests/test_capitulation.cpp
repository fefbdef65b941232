#include <gtest/gtest.h>

#include <random>

#include "bp/bp_lattice.hpp"
#include "bp/capitulation.hpp"

using namespace bp;

namespace {

const ZPoly kFixture = {507, 48, 49, 2, 1};
const std::vector<std::string> kAlphaI = {"-5269/178", "-1034/89", "-111/89", "-59/178"};
const std::vector<std::string> kAlphaII = {"97/2", "3/2", "3/2", "0"};
const std::vector<std::string> kJ = {"-70/89", "-52/89", "-3/89", "-2/89"};

NumberFieldPtr fixture() {
  static NumberFieldPtr K = NumberField::create(kFixture);
  return K;
}

void check_invariants(const CapitulationReport& r) {
  EXPECT_EQ(r.verdict == Verdict::Injective, r.kernel_lo == 1 && r.kernel_hi == 1);
  bool not_loc = false;
  for (auto& pl : r.places) {
    not_loc = not_loc || pl.c.kind == PlaceKind::NonSplitNotLocCyclotomic;
    if (pl.c.kind != PlaceKind::Split && pl.c.w_one_minus_s)
      EXPECT_EQ(pl.h1 == r.p, *pl.c.w_one_minus_s == 1);
    if (pl.c.kind == PlaceKind::NonSplitLocCyclotomic) EXPECT_EQ(pl.c.mu_Lw, pl.c.mu_Kv + 1);
    if (pl.c.kind == PlaceKind::NonSplitNotLocCyclotomic) EXPECT_EQ(pl.c.mu_Lw, pl.c.mu_Kv);
  }
  if (not_loc) EXPECT_EQ(r.verdict, Verdict::Injective);
  if (r.mu_K == 1) EXPECT_EQ(r.verdict, Verdict::Injective);
  if (r.verdict == Verdict::NonInjective) {
    EXPECT_EQ(r.kernel_lo, r.p);
    EXPECT_EQ(r.mu_K, r.mu_L);
    EXPECT_GT(r.mu_K, 1);
    ASSERT_TRUE(r.ramification);
    EXPECT_NE(*r.ramification, KummerRamification::NotPRamified);
    EXPECT_FALSE(not_loc);
  }
  // |Im psi| = p exactly when the kernel is nontrivial
  const auto psi = im_psi_order(r);
  if (psi) {
    EXPECT_EQ(*psi == r.p, r.kernel_lo == r.p);
    EXPECT_EQ(r.kernel_lo, r.kernel_hi);
  } else {
    EXPECT_NE(r.kernel_lo, r.kernel_hi);
  }
  EXPECT_EQ(r.caveats.front(), kLeopoldtCaveat);
}

}  // namespace

// Brute force: is a a cube modulo pi^4 = 9 in Z_3[zeta_3]? Units of level >= 4 are cubes.
bool cube_mod_pi4(const LocalElt& a) {
  const LocalFieldPtr& F = a.field();
  const LocalElt target = with_precision(a, 2);
  for (long c0 = 0; c0 < 9; ++c0)
    for (long c1 = 0; c1 < 9; ++c1) {
      ZVector c(2);
      c << c0, c1;
      LocalElt x(F, c, 2);
      if (pow(x, 3) == target) return true;
    }
  return false;
}

TEST(Capitulation, FixtureUnitTimesRootOfUnity) {
  auto K = fixture();
  NFElt a = NFElt::parse(K, kAlphaI), j = NFElt::parse(K, kJ);
  auto r = diagnose(K, 3, a, 60);
  ASSERT_TRUE(r.ramification);
  EXPECT_EQ(*r.ramification, KummerRamification::PRamifiedUnitIdealAtP);
  EXPECT_EQ(r.mu_K, 3);
  EXPECT_EQ(r.mu_L, 3);
  EXPECT_FALSE(r.globally_cyclotomic);
  ASSERT_EQ(r.places.size(), 2u);
  for (auto& pl : r.places) {
    const PlaceAboveP v = K->places_above(3, 60)[pl.index];
    LocalElt av = complete_at(v, a), jv = complete_at(v, j);
    // a j^-1 = -1 mod pi^3, and not mod pi^4
    EXPECT_EQ(valuation(av * inverse(jv) + one(v.completion)), 3);
    // oracle: a is not in j^k * cubes for any k, so L_w is neither split nor K_v(zeta_9)
    EXPECT_FALSE(cube_mod_pi4(av));
    EXPECT_FALSE(cube_mod_pi4(av * inverse(jv)));
    EXPECT_FALSE(cube_mod_pi4(av * inverse(jv * jv)));
    EXPECT_EQ(pl.c.kind, PlaceKind::NonSplitNotLocCyclotomic);
    EXPECT_EQ(pl.c.mu_Kv, 1);
    EXPECT_EQ(pl.c.mu_Lw, 1);
    EXPECT_EQ(pl.c.e_rel, 3);
    EXPECT_EQ(pl.h1, 3);
  }
  EXPECT_EQ(r.verdict, Verdict::Injective);
  check_invariants(r);
}

TEST(Capitulation, FixtureUnitGivesUnramifiedLayer) {
  auto K = fixture();
  NFElt a = NFElt::parse(K, kAlphaII);
  auto r = diagnose(K, 3, a, 60);
  EXPECT_EQ(r.verdict, Verdict::Injective);
  ASSERT_EQ(r.places.size(), 2u);
  for (auto& pl : r.places) {
    const PlaceAboveP v = K->places_above(3, 60)[pl.index];
    LocalElt av = complete_at(v, a);
    EXPECT_EQ(valuation(av + one(v.completion)), 3);
    EXPECT_FALSE(cube_mod_pi4(av));
    EXPECT_EQ(pl.c.kind, PlaceKind::NonSplitNotLocCyclotomic);
    EXPECT_EQ(pl.c.e_rel, 1);
    EXPECT_EQ(pl.c.f_rel, 3);
  }
  check_invariants(r);
}

TEST(Capitulation, SplitPlaceWitness) {
  auto K = fixture();
  NFElt x = NFElt::parse(K, {"1", "1", "0", "0"});
  NFElt u = NFElt::parse(K, kAlphaII);
  for (const NFElt& w : {u, NFElt::from_integer(K, 4), NFElt::from_integer(K, 10)}) {
    NFElt a = pow(x, 3) * w;
    for (const PlaceAboveP& v : K->places_above(3, 60)) {
      PlaceClassification c = classify_place(v, a, 3);
      LocalElt av = complete_at(v, a);
      EXPECT_EQ(c.kind == PlaceKind::Split, cube_mod_pi4(complete_at(v, w)));
      if (c.split_root) EXPECT_EQ(pow(*c.split_root, 3), with_precision(av, c.split_root->precision()));
    }
  }
  NFElt cube = pow(x, 3) * pow(u, 3);
  for (const PlaceAboveP& v : K->places_above(3, 60)) {
    PlaceClassification c = classify_place(v, cube, 3);
    EXPECT_EQ(c.kind, PlaceKind::Split);
    ASSERT_TRUE(c.split_root);
    EXPECT_EQ(pow(*c.split_root, 3), with_precision(complete_at(v, cube), c.split_root->precision()));
  }
}

TEST(Capitulation, GloballyCyclotomicLayer) {
  auto K = fixture();
  auto r = diagnose(K, 3, NFElt::parse(K, kJ), 60);
  EXPECT_EQ(r.verdict, Verdict::Injective);
  EXPECT_TRUE(r.globally_cyclotomic);
  EXPECT_EQ(r.mu_L, 9);
  check_invariants(r);
}

TEST(Capitulation, TrivialRootsOfUnity) {
  auto Q = NumberField::create({0, 1});
  auto r = diagnose(Q, 3, NFElt::from_integer(Q, 2), 40);
  EXPECT_EQ(r.verdict, Verdict::Injective);
  EXPECT_EQ(r.mu_K, 1);
  ASSERT_EQ(r.places.size(), 1u);
  EXPECT_EQ(r.places[0].c.kind, PlaceKind::NonSplitNotLocCyclotomic);
  EXPECT_EQ(r.places[0].c.mu_Kv, 0);
  EXPECT_EQ(r.places[0].c.mu_Lw, 0);
  auto s = diagnose(Q, 3, NFElt::from_integer(Q, 4), 40);
  EXPECT_EQ(s.places[0].c.kind, PlaceKind::NonSplitNotLocCyclotomic);
  check_invariants(r);
}

TEST(Capitulation, H1Orders) {
  PlaceClassification c;
  c.kind = PlaceKind::Split;
  EXPECT_EQ(h1_order(c, 3), 1);
  c.kind = PlaceKind::NonSplitLocCyclotomic;
  EXPECT_EQ(h1_order(c, 3), 1);
  c.kind = PlaceKind::NonSplitNotLocCyclotomic;
  EXPECT_EQ(h1_order(c, 3), 3);
}

TEST(Capitulation, KernelOrderCases) {
  KernelInputs in;
  in.p = 3;
  in.mu_K = 3;
  in.ramification = KummerRamification::PRamifiedUnitIdealAtP;
  in.kinds = {PlaceKind::Split, PlaceKind::NonSplitLocCyclotomic};
  EXPECT_EQ(kernel_order(in), std::make_pair(3L, 3L));
  in.kinds.push_back(PlaceKind::NonSplitNotLocCyclotomic);
  EXPECT_EQ(kernel_order(in), std::make_pair(1L, 1L));
  in.kinds.pop_back();
  in.globally_cyclotomic = true;
  EXPECT_EQ(kernel_order(in), std::make_pair(1L, 1L));
  in.globally_cyclotomic = false;
  in.ramification = KummerRamification::NotPRamified;
  EXPECT_EQ(kernel_order(in), std::make_pair(1L, 1L));
  in.ramification.reset();
  std::vector<std::string> cav;
  EXPECT_EQ(kernel_order(in, &cav), std::make_pair(1L, 3L));
  EXPECT_EQ(cav.size(), 1u);
  in.mu_K = 1;
  EXPECT_EQ(kernel_order(in), std::make_pair(1L, 1L));
}

TEST(Capitulation, Refusals) {
  auto K = fixture();
  try {
    (void)diagnose(K, 3, NFElt::from_integer(K, 8), 60);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
  try {
    (void)diagnose(K, 3, NFElt::parse(K, kAlphaI), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionExhausted);
  }
}

TEST(Capitulation, RandomInvariants) {
  std::mt19937_64 rng(4);
  auto K = fixture();
  NFElt j = NFElt::parse(K, kJ);
  int runs = 0;
  for (int t = 0; t < 40 && runs < 12; ++t) {
    QVector c(4);
    for (int i = 0; i < 4; ++i) c(i) = long(rng() % 21) - 10;
    NFElt a(K, c);
    if (a.is_zero()) continue;
    if (t % 2) a = a * j;
    try {
      auto r = diagnose_at(K, 3, a, 60);
      check_invariants(r);
      ++runs;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DomainError) << e.what();
    }
  }
  EXPECT_GE(runs, 10);
}
