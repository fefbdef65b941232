#include <gtest/gtest.h>

#include <random>

#include "bp/padic.hpp"

using namespace bp;

namespace {

// Series oracle: sum of exact rational terms, reduced mod p^n at the end.
mpz_class rational_mod(const mpq_class& q, long p, int n) {
  mpz_class m = pow_ui(p, n);
  return mod(q.get_num() * inverse_mod(q.get_den(), m), m);
}

mpz_class log_oracle(long u, long p, int n) {
  mpq_class z(u - 1), sum = 0, zk = 1;
  for (int k = 1; k < 6 * n; ++k) {
    zk *= z;
    mpq_class t = zk / k;
    sum += (k % 2 ? t : mpq_class(-t));
  }
  // p-adic sums of p-integral rationals; denominators k/p^v_p(k) are units,
  // p-parts of k are absorbed because zk carries enough powers of p
  sum.canonicalize();
  return rational_mod(sum, p, n);
}

mpz_class exp_oracle(long x, long p, int n) {
  mpq_class sum = 1, term = 1;
  for (int k = 1; k < 6 * n; ++k) {
    term = term * x / k;
    sum += term;
  }
  return rational_mod(sum, p, n);
}

}  // namespace

TEST(PAdic, AdditionWrapsToZero) {
  EXPECT_TRUE((PAdic(3, 5, 2) + PAdic(3, 5, 241)).is_zero());
}

TEST(PAdic, MultiplicationOracle) {
  EXPECT_EQ((PAdic(3, 4, 5) * PAdic(3, 4, 17)).value(), 4);
  PAdic x(3, 7, 1234);
  EXPECT_EQ(x * PAdic(3, 7, 1), x);
}

TEST(PAdic, MixedPrecisionCoercesDown) {
  PAdic a(3, 6, 100), b(3, 3, 1);
  PAdic c = a + b;
  EXPECT_EQ(c.precision(), 3);
  EXPECT_EQ(c.value(), 101 % 27);
}

TEST(PAdic, MismatchedPrimeRejected) {
  try {
    (void)(PAdic(3, 4, 1) + PAdic(5, 4, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOperand);
  }
}

TEST(PAdic, Valuation) {
  EXPECT_EQ(valuation(PAdic(3, 5, 18)), 2);
  EXPECT_EQ(valuation(PAdic(3, 5, 1)), 0);
  EXPECT_EQ(valuation(PAdic(3, 5, 0)), kInfiniteValuation);
}

TEST(PAdic, Invert) {
  EXPECT_EQ(invert(PAdic(3, 4, 2)).value(), 41);
  EXPECT_EQ(invert(PAdic(3, 4, 1)).value(), 1);
  try {
    (void)invert(PAdic(3, 4, 6));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
}

TEST(PAdic, Teichmuller) {
  EXPECT_EQ(teichmuller(PAdic(3, 4, 1)).value(), 1);
  EXPECT_EQ(teichmuller(PAdic(3, 4, 2)).value(), 80);
  // brute-force oracle: the unique x = 2 mod 5 with x^4 = 1 mod 125
  long brute = -1;
  for (long x = 0; x < 125; ++x)
    if (x % 5 == 2 && (x * x % 125) * (x * x % 125) % 125 == 1) brute = x;
  EXPECT_EQ(brute, 57);
  EXPECT_EQ(teichmuller(PAdic(5, 3, 2)).value(), brute);
}

TEST(PAdic, LogOfOneIsZero) {
  EXPECT_TRUE(log_principal(PAdic(3, 10, 1)).is_zero());
  EXPECT_EQ(exp_principal(PAdic(3, 10, 0)).value(), 1);
}

TEST(PAdic, LogRejectsNonPrincipal) {
  try {
    (void)log_principal(PAdic(3, 10, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
  try {
    (void)exp_principal(PAdic(3, 10, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(PAdic, LogSeriesOracle) {
  const int n = 8;
  PAdic l28 = log_principal(PAdic(3, n, 28));
  PAdic sum = log_principal(PAdic(3, n, 4)) + log_principal(PAdic(3, n, 7));
  EXPECT_EQ(l28.precision(), n - log_precision_loss(3, n));
  EXPECT_EQ(sum, l28);
  EXPECT_EQ(l28.value(), log_oracle(28, 3, l28.precision()));
  EXPECT_EQ(log_principal(PAdic(3, n, 4)).value(), log_oracle(4, 3, l28.precision()));
}

TEST(PAdic, ExpSeriesOracle) {
  const int n = 12;
  PAdic e3 = exp_principal(PAdic(3, n, 3));
  EXPECT_EQ(e3.value(), exp_oracle(3, 3, e3.precision()));
  PAdic lhs = exp_principal(PAdic(3, n, 9));
  PAdic rhs = exp_principal(PAdic(3, n, 3)) * exp_principal(PAdic(3, n, 6));
  EXPECT_EQ(lhs, rhs);
}

TEST(PAdic, LogExpRoundTrip) {
  const int n = 6;
  PAdic u(3, n, 4);
  PAdic l = log_principal(u);
  EXPECT_EQ(exp_principal(l), u);
}

TEST(PAdic, HenselLift) {
  const long p = 3;
  PAdicPoly f1 = {PAdic(p, 6, -1), PAdic(p, 6, 0), PAdic(p, 6, 1)};
  EXPECT_EQ(hensel_lift(f1, PAdic(p, 6, 1)).value(), 1);

  PAdicPoly f2 = {PAdic(p, 6, 2), PAdic(p, 6, 0), PAdic(p, 6, 1)};
  PAdic r = hensel_lift(f2, PAdic(p, 6, 1));
  EXPECT_EQ(r.precision(), 6);
  long brute = -1;
  for (long x = 0; x < 729; ++x)
    if (x % 3 == 1 && (x * x + 2) % 729 == 0) brute = x;
  EXPECT_EQ(r.value(), brute);

  PAdicPoly f3 = {PAdic(p, 6, -1), PAdic(p, 6, 0), PAdic(p, 6, 0), PAdic(p, 6, 1)};
  PAdic r3 = hensel_lift(f3, PAdic(p, 6, 1));
  EXPECT_EQ(r3.value(), 1);
  EXPECT_EQ(r3.precision(), 5);
}

TEST(PAdic, HenselCriterionFailure) {
  // x^2 - 3 has no root; f(0) = -3 with f'(0) = 0
  PAdicPoly f = {PAdic(3, 6, -3), PAdic(3, 6, 0), PAdic(3, 6, 1)};
  try {
    (void)hensel_lift(f, PAdic(3, 6, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HenselFailure);
  }
}

TEST(PAdic, HenselStableUnderPrecision) {
  PAdicPoly f = {PAdic(5, 20, 1), PAdic(5, 20, 0), PAdic(5, 20, 1)};
  PAdicPoly g = {PAdic(5, 30, 1), PAdic(5, 30, 0), PAdic(5, 30, 1)};
  PAdic a = hensel_lift(f, PAdic(5, 20, 2));
  PAdic b = hensel_lift(g, PAdic(5, 30, 2));
  EXPECT_EQ(a, b);
}

class PAdicProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20241016};
  mpz_class random_below(const mpz_class& m) {
    gmp_randclass r(gmp_randinit_default);
    r.seed(rng());
    return r.get_z_range(m);
  }
};

TEST_F(PAdicProperties, RingAxioms) {
  for (long p : {3L, 5L, 7L}) {
    const int n = 15;
    mpz_class m = pow_ui(p, n);
    for (int i = 0; i < 400; ++i) {
      PAdic a(p, n, random_below(m)), b(p, n, random_below(m)), c(p, n, random_below(m));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_TRUE((a - a).is_zero());
    }
  }
}

TEST_F(PAdicProperties, ValuationAdditive) {
  const long p = 3;
  const int n = 20;
  for (int i = 0; i < 1000; ++i) {
    mpz_class a = (random_below(1000) + 1) * pow_ui(p, int(rng() % 6));
    mpz_class b = (random_below(1000) + 1) * pow_ui(p, int(rng() % 6));
    PAdic x(p, n, a), y(p, n, b);
    int va = valuation(x), vb = valuation(y);
    if (va + vb < n) EXPECT_EQ(valuation(x * y), va + vb);
  }
}

TEST_F(PAdicProperties, TeichmullerRootOfUnity) {
  for (long p : {3L, 5L, 7L}) {
    const int n = 25;
    for (int i = 0; i < 300; ++i) {
      mpz_class v = random_below(pow_ui(p, n));
      if (v % p == 0) v += 1;
      PAdic t = teichmuller(PAdic(p, n, v));
      EXPECT_EQ(pow(t, p - 1).value(), 1);
      EXPECT_EQ(mod(t.value() - v, p), 0);
      EXPECT_EQ(teichmuller(t), t);
    }
  }
}

TEST_F(PAdicProperties, LogHomomorphismAndRoundTrip) {
  for (long p : {3L, 5L}) {
    const int n = 30;
    mpz_class m = pow_ui(p, n);
    for (int i = 0; i < 1000; ++i) {
      PAdic u(p, n, 1 + p * random_below(m));
      PAdic v(p, n, 1 + p * random_below(m));
      PAdic d = log_principal(u * v) - log_principal(u) - log_principal(v);
      EXPECT_TRUE(d.is_zero());
      PAdic w(p, n, 1 + p * p * random_below(m));
      EXPECT_EQ(exp_principal(log_principal(w)), w);
    }
  }
}
