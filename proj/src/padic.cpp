#include "bp/padic.hpp"

#include <algorithm>

namespace bp {

namespace {

void check_prime(long p) {
  if (p < 2 || !is_prime(mpz_class(p)))
    fail(ErrorCode::InvalidOperand, "modulus base must be prime");
}

void require_odd(long p, const char* op) {
  if (p == 2) fail(ErrorCode::DomainError, std::string(op) + " requires an odd prime");
}

}  // namespace

PAdic::PAdic(long p, int precision, const mpz_class& value) : p_(p), n_(precision) {
  check_prime(p);
  if (precision < 1) fail(ErrorCode::InvalidOperand, "precision must be positive");
  value_ = mod(value, pow_ui(p, precision));
}

PAdic PAdic::from_rational(long p, int precision, const mpq_class& q) {
  mpz_class m = pow_ui(p, precision);
  mpz_class den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), p))
    fail(ErrorCode::NotInvertible, "denominator divisible by p");
  return PAdic(p, precision, q.get_num() * inverse_mod(den, m));
}

PAdic PAdic::with_precision(int n) const {
  return PAdic(p_, std::min(n, n_), value_);
}

void PAdic::coerce(const PAdic& b) {
  if (b.p_ != p_) fail(ErrorCode::InvalidOperand, "mismatched primes");
  if (b.n_ < n_) {
    n_ = b.n_;
    value_ = mod(value_, pow_ui(p_, n_));
  }
}

PAdic PAdic::operator-() const { return PAdic(p_, n_, -value_); }

PAdic& PAdic::operator+=(const PAdic& b) {
  coerce(b);
  value_ = mod(value_ + b.value_, modulus());
  return *this;
}

PAdic& PAdic::operator-=(const PAdic& b) {
  coerce(b);
  value_ = mod(value_ - b.value_, modulus());
  return *this;
}

PAdic& PAdic::operator*=(const PAdic& b) {
  coerce(b);
  value_ = mod(value_ * b.value_, modulus());
  return *this;
}

bool operator==(const PAdic& a, const PAdic& b) {
  if (a.p_ != b.p_) return false;
  mpz_class m = pow_ui(a.p_, std::min(a.n_, b.n_));
  return mod(a.value_ - b.value_, m) == 0;
}

int valuation(const PAdic& a) {
  if (a.is_zero()) return kInfiniteValuation;
  return vp(a.value(), a.prime(), a.precision());
}

PAdic invert(const PAdic& a) {
  if (valuation(a) != 0) fail(ErrorCode::NotInvertible, "p-adic non-unit");
  return PAdic(a.prime(), a.precision(), inverse_mod(a.value(), a.modulus()));
}

PAdic pow(const PAdic& a, const mpz_class& e) {
  if (e < 0) return pow(invert(a), -e);
  mpz_class r;
  mpz_class m = a.modulus();
  mpz_powm(r.get_mpz_t(), a.value().get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return PAdic(a.prime(), a.precision(), r);
}

PAdic teichmuller(const PAdic& a) {
  if (valuation(a) != 0) fail(ErrorCode::NotInvertible, "Teichmuller lift of a non-unit");
  PAdic x = a;
  mpz_class p(a.prime());
  for (int i = 0; i < a.precision(); ++i) {
    PAdic y = pow(x, p);
    if (y == x) break;
    x = y;
  }
  return x;
}

int log_precision_loss(long p, int n) {
  int d = 0;
  for (long t = p; t <= n; t *= p) ++d;
  return d + 1;
}

PAdic log_principal(const PAdic& u) {
  require_odd(u.prime(), "log");
  const long p = u.prime();
  const int n = u.precision();
  PAdic z = u - PAdic(p, n, 1);
  int vz = valuation(z);
  if (vz < 1) fail(ErrorCode::DomainError, "log needs a principal unit");
  const int delta = log_precision_loss(p, n);
  if (vz == kInfiniteValuation) return PAdic(p, std::max(1, n - delta), 0);
  const int w = n + 2 * delta + 2;
  const mpz_class m = pow_ui(p, w);
  // log(1+z) = sum (-1)^(k+1) z^k / k
  mpz_class zk = 1, sum = 0;
  for (long k = 1;; ++k) {
    zk = mod(zk * z.value(), m);
    int vk = vp(mpz_class(k), p, 64);
    if (long(k) * vz - vk >= n + 1) break;
    mpz_class kk = k;
    mpz_class t = zk;
    for (int i = 0; i < vk; ++i) mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    mpz_divexact(kk.get_mpz_t(), kk.get_mpz_t(), pow_ui(p, vk).get_mpz_t());
    t = t * inverse_mod(kk, m);
    sum += (k % 2 ? t : mpz_class(-t));
  }
  return PAdic(p, std::max(1, n - delta), sum);
}

PAdic exp_principal(const PAdic& x) {
  require_odd(x.prime(), "exp");
  const long p = x.prime();
  const int n = x.precision();
  int vx = valuation(x);
  if (vx < 1) fail(ErrorCode::DomainError, "exp needs an argument divisible by p");
  const int delta = log_precision_loss(p, n);
  if (vx == kInfiniteValuation) return PAdic(p, std::max(1, n - delta), 1);
  // Terms stop mattering once k*vx - (k-1)/(p-1) > n.
  long kmax = 1;
  while (kmax * vx - (kmax - 1) / (p - 1) <= n) ++kmax;
  int guard = 1;
  for (long t = p; t <= kmax; t *= p) guard += int(kmax / t);
  const int w = n + guard + 1;
  const mpz_class m = pow_ui(p, w);
  mpz_class term = 1, sum = 1;
  for (long k = 1; k <= kmax; ++k) {
    term = mod(term * x.value(), m);
    int vk = vp(mpz_class(k), p, 64);
    for (int i = 0; i < vk; ++i) mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), p);
    mpz_class kk = k;
    mpz_divexact(kk.get_mpz_t(), kk.get_mpz_t(), pow_ui(p, vk).get_mpz_t());
    term = mod(term * inverse_mod(kk, m), m);
    sum += term;
  }
  return PAdic(p, std::max(1, n - delta), sum);
}

PAdic evaluate(const PAdicPoly& f, const PAdic& x) {
  if (f.empty()) return PAdic(x.prime(), x.precision(), 0);
  PAdic acc = f.back();
  for (auto it = f.rbegin() + 1; it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PAdicPoly derivative(const PAdicPoly& f) {
  PAdicPoly d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(f[i] * PAdic(f[i].prime(), f[i].precision(), long(i)));
  return d;
}

PAdic hensel_lift(const PAdicPoly& f, const PAdic& x0) {
  if (f.empty()) fail(ErrorCode::InvalidOperand, "empty polynomial");
  const long p = x0.prime();
  int n = x0.precision();
  for (const auto& c : f) n = std::min(n, c.precision());
  PAdicPoly df = derivative(f);
  PAdic x = x0.with_precision(n);
  int v = valuation(evaluate(df, x));
  int vf = valuation(evaluate(f, x));
  if (v == kInfiniteValuation || v >= n)
    fail(ErrorCode::HenselFailure, "derivative vanishes at working precision");
  if (vf != kInfiniteValuation && vf <= 2 * v)
    fail(ErrorCode::HenselFailure, "Hensel criterion v(f) > 2 v(f') fails");
  const mpz_class pv = pow_ui(p, v);
  for (int it = 0; it < 4 * n + 8; ++it) {
    PAdic fx = evaluate(f, x);
    if (fx.is_zero()) break;
    PAdic dx = evaluate(df, x);
    mpz_class num = fx.value(), den = dx.value();
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pv.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pv.get_mpz_t());
    PAdic step = PAdic(p, n, num) * invert(PAdic(p, n, den));
    if (step.is_zero()) break;
    x -= step;
  }
  int vres = valuation(evaluate(f, x));
  if (vres != kInfiniteValuation && vres < n - v)
    fail(ErrorCode::HenselFailure, "Newton iteration did not converge");
  return x.with_precision(std::max(1, n - v));
}

}  // namespace bp
