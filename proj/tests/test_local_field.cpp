#include <gtest/gtest.h>

#include <random>

#include "bp/linalg.hpp"
#include "bp/local_field.hpp"

using namespace bp;

namespace {

using ZPoly = std::vector<mpz_class>;

LocalElt from_power_basis(const LocalFieldPtr& F, const ZPoly& a) {
  LocalElt theta(F, F->generator, F->precision);
  LocalElt acc = zero(F);
  for (size_t i = a.size(); i-- > 0;) acc = acc * theta + from_integer(F, a[i]);
  return acc;
}

// Resultant via the Sylvester matrix, computed over Q.
mpz_class resultant(const ZPoly& f, const ZPoly& g) {
  int m = int(f.size()) - 1, n = int(g.size()) - 1;
  QMatrix s = QMatrix::Zero(m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + k) = mpq_class(f[m - k]);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + k) = mpq_class(g[n - k]);
  mpq_class d = determinant(s);
  return d.get_num();
}

}  // namespace

TEST(BaseField, CyclotomicThree) {
  auto F = make_base_field(3, 20, {1, 1, 1});
  EXPECT_EQ(F->e, 2);
  EXPECT_EQ(F->f, 1);
  EXPECT_EQ(valuation(uniformizer(F)), 1);
  EXPECT_EQ(valuation(from_integer(F, 3)), 2);
  EXPECT_EQ(valuation(from_integer(F, 18)), 4);
  LocalElt z(F, F->generator, F->precision);
  EXPECT_EQ(z * z * z, one(F));
}

TEST(BaseField, UnramifiedQuadratic) {
  auto F = make_base_field(3, 20, {1, 0, 1});
  EXPECT_EQ(F->e, 1);
  EXPECT_EQ(F->f, 2);
  EXPECT_EQ(F->residue.size(), 9u);
  EXPECT_EQ(valuation(uniformizer(F)), 1);
}

TEST(BaseField, DegreeOneIsQp) {
  auto F = make_base_field(3, 10, {0, 1});
  EXPECT_EQ(F->n, 1);
  EXPECT_EQ(F->e, 1);
  EXPECT_EQ(valuation(from_integer(F, 54)), 3);
}

TEST(BaseField, Rejections) {
  try {
    (void)make_base_field(3, 10, {-1, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAField);
  }
  try {
    (void)make_base_field(3, 10, {5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOperand);
  }
  // x^2 - 9 reduces to x^2 but is reducible; Dedekind flags the presentation
  try {
    (void)make_base_field(3, 10, {-9, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(BaseField, InverseAndDivision) {
  auto F = make_base_field(3, 20, {1, 1, 1});
  LocalElt x = from_power_basis(F, {2, 5});
  EXPECT_EQ(x * inverse(x), one(F));
  LocalElt pi = uniformizer(F);
  LocalElt y = x * pi * pi * pi;
  LocalElt q = divide_by_pi_power(y, 3);
  EXPECT_EQ(with_precision(q, q.precision()), with_precision(x, q.precision()));
  EXPECT_EQ(divide_by_p_power(from_integer(F, 27), 2), from_integer(F, 3));
}

TEST(BaseField, TeichmullerInUnramified) {
  auto F = make_base_field(5, 15, {2, 0, 1});  // x^2 + 2 irreducible mod 5
  ASSERT_EQ(F->f, 2);
  LocalElt x = from_power_basis(F, {3, 1});
  LocalElt t = teichmuller(x);
  EXPECT_EQ(pow(t, 24), one(F));
  EXPECT_EQ(residue(t), residue(x));
}

class NormValuation : public ::testing::TestWithParam<ZPoly> {};

TEST_P(NormValuation, MatchesResultant) {
  const ZPoly g = GetParam();
  auto F = make_base_field(3, 30, g);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 350; ++t) {
    ZPoly a(g.size() - 1);
    for (auto& c : a) c = long(rng() % 200) - 100;
    int sh = int(rng() % 3);
    for (auto& c : a) c *= pow_ui(3, sh);
    LocalElt x = from_power_basis(F, a);
    mpz_class r = resultant(g, a);
    if (r == 0) continue;
    int v = valuation(x);
    EXPECT_EQ(F->f * v, vp(r, 3, 1000));
    EXPECT_EQ(norm_valuation(x), vp(r, 3, 1000));
    ZPoly b(g.size() - 1);
    for (auto& c : b) c = long(rng() % 200) - 100;
    LocalElt y = from_power_basis(F, b);
    int vy = valuation(y);
    if (v != kInfiniteValuation && vy != kInfiniteValuation)
      EXPECT_EQ(valuation(x * y), v + vy);
    // N(xy) = N(x) N(y), through ab mod g
    ZPoly ab(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) ab[i + j] += a[i] * b[j];
    for (size_t k = ab.size(); k-- > g.size() - 1;) {
      const mpz_class c = ab[k];
      for (size_t i = 0; i < g.size(); ++i) ab[k - (g.size() - 1) + i] -= c * g[i];
    }
    ab.resize(g.size() - 1);
    EXPECT_EQ(resultant(g, ab), r * resultant(g, b));
    if (resultant(g, b) != 0) EXPECT_EQ(norm_valuation(x * y), vp(r * resultant(g, b), 3, 1000));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, NormValuation,
                         ::testing::Values(ZPoly{1, 1, 1}, ZPoly{1, 0, 1}, ZPoly{1, 0, 0, 1, 0, 0, 1},
                                           ZPoly{3, 0, 1}, ZPoly{0, 1}));
