#include "bp/zpoly.hpp"

#include <algorithm>

#include "bp/error.hpp"

namespace bp {

namespace {

mpz_class red(const mpz_class& x, const mpz_class& m) { return m == 0 ? x : mod(x, m); }

}  // namespace

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdegree(const ZPoly& a) {
  ZPoly t = a;
  ztrim(t);
  return int(t.size()) - 1;
}

ZPoly zp_reduce(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = red(a[i], m);
  ztrim(r);
  return r;
}

ZPoly zp_symmetric(const ZPoly& a, const mpz_class& m) {
  ZPoly r = zp_reduce(a, m);
  const mpz_class half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  ztrim(r);
  return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = (i < a.size() ? a[i] : mpz_class(0)) + (i < b.size() ? b[i] : mpz_class(0));
  return zp_reduce(r, m);
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i)
    r[i] = (i < a.size() ? a[i] : mpz_class(0)) - (i < b.size() ? b[i] : mpz_class(0));
  return zp_reduce(r, m);
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return zp_reduce(r, m);
}

ZPoly zp_scale(const ZPoly& a, const mpz_class& c, const mpz_class& m) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return zp_reduce(r, m);
}

void zp_divmod(const ZPoly& a, const ZPoly& b_in, const mpz_class& m, ZPoly& quo, ZPoly& rem) {
  ZPoly b = b_in;
  ztrim(b);
  if (b.empty() || b.back() != 1) fail(ErrorCode::InvalidOperand, "division by a non-monic polynomial");
  rem = zp_reduce(a, m);
  const int db = int(b.size()) - 1;
  quo.assign(std::max<int>(0, int(rem.size()) - db), 0);
  for (int i = int(rem.size()) - 1; i >= db; --i) {
    mpz_class c = rem[i];
    if (c == 0) continue;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = red(rem[i - db + j] - c * b[j], m);
  }
  ztrim(rem);
  ztrim(quo);
}

ZPoly zp_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly q, r;
  zp_divmod(a, b, m, q, r);
  return r;
}

ZPoly zp_derivative(const ZPoly& a) {
  ZPoly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * long(i));
  ztrim(r);
  return r;
}

mpz_class zp_eval(const ZPoly& a, const mpz_class& x, const mpz_class& m) {
  mpz_class r = 0;
  for (size_t i = a.size(); i-- > 0;) r = red(r * x + a[i], m);
  return r;
}

ZPoly zp_from_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_class(std::to_string(a[i]));
  return r;
}

namespace {

FpPoly to_fp(const PrimeField& F, const ZPoly& a) { return fp_from_z(F, a); }

// f = g h mod q^n from f = g h mod q; g monic.
void lift_pair(const ZPoly& f, ZPoly& g, ZPoly& h, long q, int n) {
  PrimeField F{u64(q)};
  const FpPoly gb = to_fp(F, g), hb = to_fp(F, h);
  FpPoly s, t;
  FpPoly d = fp_xgcd(F, gb, hb, s, t);  // s g + t h = d
  if (d.size() != 1) fail(ErrorCode::DomainError, "Hensel factors are not coprime");
  const u64 dinv = F.inv(d[0]);
  s = fp_scale(F, s, dinv);
  t = fp_scale(F, t, dinv);
  mpz_class qk = q;
  for (int k = 1; k < n; ++k) {
    const mpz_class qk1 = qk * q;
    ZPoly err = zp_sub(f, zp_mul(g, h, qk1), qk1);
    for (auto& c : err) {
      if (!mpz_divisible_p(c.get_mpz_t(), qk.get_mpz_t()))
        fail(ErrorCode::HenselFailure, "Hensel factorization lost consistency");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), qk.get_mpz_t());
    }
    const FpPoly eb = to_fp(F, err);
    // dg h + dh g = e with deg dg < deg g
    const FpPoly dg = fp_mod(F, fp_mul(F, eb, t), gb);
    const FpPoly dh = fp_div(F, fp_sub(F, eb, fp_mul(F, dg, hb)), gb);
    g = zp_add(g, zp_scale(zp_from_fp(dg), qk, 0), qk1);
    h = zp_add(h, zp_scale(zp_from_fp(dh), qk, 0), qk1);
    qk = qk1;
  }
}

}  // namespace

std::vector<ZPoly> hensel_factor(const ZPoly& f, const std::vector<FpPoly>& factors, long q, int n) {
  if (factors.empty()) fail(ErrorCode::InvalidOperand, "no factors to lift");
  const mpz_class m = pow_ui(q, n);
  PrimeField F{u64(q)};
  std::vector<ZPoly> out;
  ZPoly rest = zp_reduce(f, m);
  for (size_t i = 0; i + 1 < factors.size(); ++i) {
    ZPoly g = zp_from_fp(factors[i]);
    FpPoly others = {1};
    for (size_t j = i + 1; j < factors.size(); ++j) others = fp_mul(F, others, factors[j]);
    ZPoly h = zp_from_fp(others);
    lift_pair(rest, g, h, q, n);
    out.push_back(g);
    rest = h;
  }
  out.push_back(rest);
  return out;
}

ZPoly ZQuotient::pow(ZPoly a, mpz_class e) const {
  ZPoly r = reduce(ZPoly{1});
  a = reduce(a);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

ZPoly ZQuotient::inverse(const ZPoly& a, long q) const {
  PrimeField F{u64(q)};
  FpPoly y0 = fp_invmod(F, fp_from_z(F, a), fp_from_z(F, g));
  ZPoly y = zp_from_fp(y0);
  mpz_class prec = q;
  const ZPoly two = {2};
  while (prec < m) {
    prec *= prec;
    y = mul(y, zp_sub(two, mul(a, y), m));
  }
  return reduce(y);
}

}  // namespace bp
