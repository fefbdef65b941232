#include "bp/fp_poly.hpp"

#include <algorithm>
#include <random>

#include "bp/error.hpp"

namespace bp {

u64 PrimeField::pow(u64 a, u64 e) const {
  u64 r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 PrimeField::inv(u64 a) const {
  if (a % q == 0) fail(ErrorCode::NotInvertible, "zero has no inverse in F_q");
  return pow(a, q - 2);
}

u64 PrimeField::reduce(const mpz_class& x) const {
  return u64(mpz_fdiv_ui(x.get_mpz_t(), q));
}

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_add(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FpPoly fp_sub(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FpPoly fp_mul(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

FpPoly fp_scale(const PrimeField& F, const FpPoly& a, u64 c) {
  FpPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  trim(r);
  return r;
}

void fp_divmod(const PrimeField& F, const FpPoly& a, const FpPoly& b, FpPoly& quo, FpPoly& rem) {
  if (b.empty()) fail(ErrorCode::InvalidOperand, "polynomial division by zero");
  rem = a;
  trim(rem);
  quo.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
  const u64 lead_inv = F.inv(b.back());
  while (rem.size() >= b.size()) {
    size_t shift = rem.size() - b.size();
    u64 c = F.mul(rem.back(), lead_inv);
    quo[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b[j]));
    trim(rem);
  }
  trim(quo);
}

FpPoly fp_mod(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  fp_divmod(F, a, b, q, r);
  return r;
}

FpPoly fp_div(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  FpPoly q, r;
  fp_divmod(F, a, b, q, r);
  return q;
}

FpPoly fp_monic(const PrimeField& F, const FpPoly& a) {
  if (a.empty()) return a;
  return fp_scale(F, a, F.inv(a.back()));
}

FpPoly fp_gcd(const PrimeField& F, FpPoly a, FpPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(F, a);
}

FpPoly fp_xgcd(const PrimeField& F, const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t) {
  FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    FpPoly q, r;
    fp_divmod(F, r0, r1, q, r);
    FpPoly s2 = fp_sub(F, s0, fp_mul(F, q, s1));
    FpPoly t2 = fp_sub(F, t0, fp_mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  u64 li = F.inv(r0.back());
  s = fp_scale(F, s0, li);
  t = fp_scale(F, t0, li);
  return fp_scale(F, r0, li);
}

FpPoly fp_derivative(const PrimeField& F, const FpPoly& a) {
  FpPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(F.mul(a[i], i % F.q));
  trim(d);
  return d;
}

FpPoly fp_mulmod(const PrimeField& F, const FpPoly& a, const FpPoly& b, const FpPoly& m) {
  return fp_mod(F, fp_mul(F, a, b), m);
}

FpPoly fp_powmod(const PrimeField& F, const FpPoly& a, const mpz_class& e, const FpPoly& m) {
  FpPoly r = fp_mod(F, FpPoly{1}, m), base = fp_mod(F, a, m);
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = fp_mulmod(F, r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_mulmod(F, r, base, m);
  }
  return r;
}

FpPoly fp_invmod(const PrimeField& F, const FpPoly& a, const FpPoly& m) {
  FpPoly s, t;
  FpPoly g = fp_xgcd(F, fp_mod(F, a, m), m, s, t);
  if (g.size() != 1) fail(ErrorCode::NotInvertible, "polynomial not invertible modulo m");
  return fp_mod(F, s, m);
}

u64 fp_eval(const PrimeField& F, const FpPoly& a, u64 x) {
  u64 r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

FpPoly fp_from_z(const PrimeField& F, const std::vector<mpz_class>& f) {
  FpPoly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = F.reduce(f[i]);
  trim(r);
  return r;
}

namespace {

using Factors = std::vector<std::pair<FpPoly, int>>;

Factors squarefree(const PrimeField& F, const FpPoly& f) {
  Factors out;
  FpPoly c = fp_gcd(F, f, fp_derivative(F, f));
  FpPoly w = fp_div(F, f, c);
  int i = 1;
  while (w.size() > 1) {
    FpPoly y = fp_gcd(F, w, c);
    FpPoly fac = fp_div(F, w, y);
    if (fac.size() > 1) out.push_back({fac, i});
    w = y;
    c = fp_div(F, c, y);
    ++i;
  }
  if (c.size() > 1) {
    // c is a polynomial in x^q
    FpPoly root;
    for (size_t k = 0; k < c.size(); k += F.q) root.push_back(c[k]);
    for (auto& [g, j] : squarefree(F, root)) out.push_back({g, j * int(F.q)});
  }
  return out;
}

Factors distinct_degree(const PrimeField& F, FpPoly f) {
  Factors out;
  FpPoly h = {0, 1};
  const FpPoly x = {0, 1};
  for (int i = 1; 2 * i <= degree(f); ++i) {
    h = fp_powmod(F, h, mpz_class(std::to_string(F.q)), f);
    FpPoly g = fp_gcd(F, f, fp_sub(F, h, x));
    if (g.size() > 1) {
      out.push_back({g, i});
      f = fp_div(F, f, g);
      h = fp_mod(F, h, f);
    }
  }
  if (f.size() > 1) out.push_back({fp_monic(F, f), degree(f)});
  return out;
}

void equal_degree(const PrimeField& F, const FpPoly& f, int d, std::mt19937_64& rng,
                  std::vector<FpPoly>& out) {
  if (degree(f) == d) {
    out.push_back(fp_monic(F, f));
    return;
  }
  const int n = degree(f);
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), F.q, d);
  for (;;) {
    FpPoly a(n);
    for (auto& c : a) c = rng() % F.q;
    trim(a);
    if (a.size() < 2) continue;
    FpPoly b;
    if (F.q == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      FpPoly t = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        t = fp_mulmod(F, t, t, f);
        b = fp_add(F, b, t);
      }
    } else {
      b = fp_sub(F, fp_powmod(F, a, (qd - 1) / 2, f), FpPoly{1});
    }
    FpPoly g = fp_gcd(F, f, b);
    if (g.size() > 1 && degree(g) < n) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, fp_div(F, f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const PrimeField& F, const FpPoly& f_in) {
  FpPoly f = f_in;
  trim(f);
  if (f.empty()) fail(ErrorCode::InvalidOperand, "cannot factor the zero polynomial");
  f = fp_monic(F, f);
  std::mt19937_64 rng(0x5eed ^ F.q);
  Factors out;
  for (auto& [g, mult] : squarefree(F, f)) {
    for (auto& [h, d] : distinct_degree(F, g)) {
      std::vector<FpPoly> parts;
      equal_degree(F, h, d, rng, parts);
      for (auto& part : parts) out.push_back({part, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(),
                                        b.first.rend());
  });
  return out;
}

bool fp_is_irreducible(const PrimeField& F, const FpPoly& f) {
  auto fs = fp_factor(F, f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace bp
