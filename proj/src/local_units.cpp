#include "bp/local_units.hpp"

#include <algorithm>

namespace bp {

namespace {

void require_odd(long p) {
  if (p == 2) fail(ErrorCode::DomainError, "unit-group analysis requires an odd prime");
}

int filtration_bound(const LocalField& F) { return int((F.p * F.e) / (F.p - 1)) + 1; }

mpz_class as_mpz(u64 x) { return mpz_class(std::to_string(x)); }

std::shared_ptr<const FiltrationData> compute_filtration(const LocalFieldPtr& F) {
  require_odd(F->p);
  if (F->precision < pth_power_precision_floor(*F))
    fail(ErrorCode::PrecisionExhausted, "precision below the p-th power test floor");
  auto fd = std::make_shared<FiltrationData>();
  fd->m = filtration_bound(*F);
  for (int i = 1; i < fd->m; ++i)
    for (int j = 0; j < F->f; ++j) {
      LocalElt t = scale(basis_element(F, i % F->e, j), pow_ui(F->p, i / F->e));
      LocalElt g = one(F) + t;
      fd->labels.push_back({i, j});
      fd->gens.push_back(g);
      fd->gens_inv.push_back(inverse(g));
    }
  const int k = int(fd->gens.size());
  ZMatrix rel = ZMatrix::Zero(k, k);
  for (int l = 0; l < k; ++l) {
    ZVector d = filtration_digits(*fd, pow(fd->gens[l], mpz_class(F->p)));
    for (int r = 0; r < k; ++r) rel(r, l) = -d(r);
    rel(l, l) += F->p;
  }
  fd->snf = smith_form(rel, F->p, k + 2);
  fd->nontrivial = int(std::count_if(fd->snf.diag.begin(), fd->snf.diag.end(),
                                     [](int d) { return d >= 1; }));
  return fd;
}

LocalElt product_of_powers(const FiltrationData& fd, const ZVector& x, const LocalFieldPtr& F) {
  LocalElt w = one(F);
  for (Eigen::Index l = 0; l < x.size(); ++l)
    if (x(l) != 0) w = w * pow(fd.gens[l], x(l));
  return w;
}

}  // namespace

const FiltrationData& LocalField::filtration(const LocalFieldPtr& self) const {
  std::call_once(filtration_once_, [&] { filtration_ = compute_filtration(self); });
  return *filtration_;
}

int pth_power_precision_floor(const LocalField& F) { return filtration_bound(F) + 2 * F.e + 5; }

ZVector filtration_digits(const FiltrationData& fd, const LocalElt& u_in) {
  const LocalField& F = u_in.parent();
  const int k = int(fd.gens.size());
  ZVector d = ZVector::Zero(k);
  LocalElt u = u_in;
  int l = 0;
  for (int i = 1; i < fd.m; ++i) {
    LocalElt w = u - one(u.field());
    int v = valuation(w);
    if (v < i) fail(ErrorCode::DomainError, "digit extraction needs a principal unit");
    const int a = i / F.e, b = i % F.e;
    const mpz_class pa = pow_ui(F.p, a);
    for (int j = 0; j < F.f; ++j, ++l) {
      mpz_class c = w.coeffs()(F.index(b, j));
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), c.get_mpz_t(), pa.get_mpz_t());
      d(l) = mod(q, mpz_class(F.p));
    }
    for (int j = 0; j < F.f; ++j) {
      int idx = l - F.f + j;
      if (d(idx) != 0) u = u * pow(fd.gens_inv[idx], d(idx));
    }
  }
  return d;
}

PthPowerResult is_pth_power(const LocalElt& u) {
  const LocalFieldPtr& F = u.field();
  const long p = F->p;
  require_odd(p);
  const int v = valuation(u);
  if (v == kInfiniteValuation) fail(ErrorCode::DomainError, "p-th power test of zero");
  if (std::min(u.precision(), F->precision) < pth_power_precision_floor(*F))
    fail(ErrorCode::PrecisionExhausted, "precision below the p-th power test floor");
  if (v > 0) {
    if (v % p != 0) return {};
    PthPowerResult r = is_pth_power(divide_by_pi_power(u, v));
    if (r.is_power) r.witness = *r.witness * pow(uniformizer(F), mpz_class(v / p));
    return r;
  }
  const FiltrationData& fd = F->filtration(F);
  const mpz_class q1 = as_mpz(F->residue.size() - 1);
  const mpz_class kp = inverse_mod(mpz_class(p), q1);
  LocalElt omega = teichmuller(u);
  LocalElt croot = pow(omega, kp);
  LocalElt u1 = u * inverse(omega);

  const SmithForm& s = fd.snf;
  const mpz_class pm = pow_ui(p, s.m);
  ZVector c = s.u * filtration_digits(fd, u1);
  ZVector half = ZVector::Zero(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) = mod(c(i), pm);
    if (s.diag[i] == 0) continue;
    if (!mpz_divisible_ui_p(c(i).get_mpz_t(), p)) return {};
    half(i) = c(i) / p;
  }
  ZVector x = s.u_inv * half;
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = mod(x(i), pm);
  LocalElt w = with_precision(product_of_powers(fd, x, F), u.precision());
  LocalElt rest = u1 * pow(inverse(w), mpz_class(p));
  LocalElt rest_minus_one = rest - one(F);
  if (valuation(rest_minus_one) < fd.m)
    fail(ErrorCode::PrecisionExhausted, "finite-quotient p-th root did not lift");
  LocalElt corr = is_zero(rest_minus_one)
                      ? one(F)
                      : exp_isometric(divide_by_p_power(log_isometric(rest), 1));
  LocalElt root = croot * w * corr;
  LocalElt check = pow(root, mpz_class(p)) - u;
  if (!is_zero(with_precision(check, root.precision())))
    fail(ErrorCode::PrecisionExhausted, "p-th root failed verification");
  return {true, root};
}

// ---- logarithm / exponential

int local_log_loss(const LocalField& F, int precision) {
  int d = 0;
  for (long t = F.p; t <= long(F.e) * precision; t *= F.p) ++d;
  return d + 1;
}

LocalElt log_isometric(const LocalElt& u) {
  const LocalFieldPtr& F = u.field();
  require_odd(F->p);
  const int prec = u.precision();
  LocalElt z = u - one(F);
  const int vz = valuation(z);
  const int delta = local_log_loss(*F, prec);
  if (vz == kInfiniteValuation) return with_precision(zero(F), prec - delta);
  if (long(vz) * (F->p - 1) <= F->e)
    fail(ErrorCode::DomainError, "log series outside its isometric domain");
  // terms z^k/k with k*vz - e*v_p(k) >= e*prec vanish
  long kmax = 1;
  auto logp = [&](long k) {
    int r = 0;
    for (long t = F->p; t <= k; t *= F->p) ++r;
    return r;
  };
  while (kmax * vz - long(F->e) * logp(kmax) < long(F->e) * prec) ++kmax;
  const mpz_class m = pow_ui(F->p, prec);
  LocalElt zk = one(F);
  ZVector sum = ZVector::Zero(F->n);
  for (long k = 1; k <= kmax; ++k) {
    zk = zk * z;
    const int a = vp(mpz_class(k), F->p, 64);
    LocalElt t = divide_by_p_power(zk, a);
    mpz_class unit = mpz_class(k) / pow_ui(F->p, a);
    ZVector c = t.coeffs() * inverse_mod(unit, m);
    if (k % 2 == 0) c = -c;
    sum += c;
  }
  return LocalElt(F, sum, prec - delta);
}

LocalElt exp_isometric(const LocalElt& x) {
  const LocalFieldPtr& F = x.field();
  const int vx = valuation(x);
  const int prec = x.precision();
  const int delta = local_log_loss(*F, prec);
  if (vx == kInfiniteValuation) return with_precision(one(F), prec - delta);
  if (long(vx) * (F->p - 1) <= F->e)
    fail(ErrorCode::DomainError, "exp outside its convergence domain");
  LocalElt y = one(F) + x;
  for (int it = 0; it < 64; ++it) {
    LocalElt l = log_isometric(LocalElt(F, y.coeffs(), prec));
    LocalElt corr = x - l;
    if (is_zero(corr)) break;
    y = LocalElt(F, (y * (one(F) + corr)).coeffs(), prec);
  }
  return with_precision(y, prec - delta);
}

LocalLog log_principal(const LocalElt& u) {
  const LocalFieldPtr& F = u.field();
  LocalElt w = u;
  int r = 0;
  for (;;) {
    int v = valuation(w - one(F));
    if (v == 0) fail(ErrorCode::DomainError, "log needs a principal unit");
    if (v == kInfiniteValuation || long(v) * (F->p - 1) > F->e) break;
    w = pow(w, mpz_class(F->p));
    ++r;
  }
  return {log_isometric(w), r};
}

LocalLog log_unit(const LocalElt& u) {
  const LocalFieldPtr& F = u.field();
  if (valuation(u) != 0) fail(ErrorCode::DomainError, "log of a non-unit");
  const mpz_class q1 = as_mpz(F->residue.size() - 1);
  LocalLog l = log_principal(pow(u, q1));
  l.value = scale(l.value, inverse_mod(q1, pow_ui(F->p, l.value.precision())));
  return l;
}

// ---- roots

LocalElt evaluate(const std::vector<LocalElt>& poly, const LocalElt& x) {
  LocalElt acc = zero(x.field());
  for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

namespace {

using LPoly = std::vector<LocalElt>;

LPoly derivative(const LPoly& f) {
  LPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(scale(f[i], long(i)));
  return d;
}

// P(r + pi Y)
LPoly shift_scale(const LPoly& P, const LocalElt& r, const LocalElt& pi) {
  const LocalFieldPtr& F = r.field();
  LPoly R;
  for (size_t k = P.size(); k-- > 0;) {
    LPoly next(R.size() + 1, zero(F));
    for (size_t i = 0; i < R.size(); ++i) {
      next[i] = next[i] + R[i] * r;
      next[i + 1] = next[i + 1] + R[i] * pi;
    }
    next[0] = next[0] + P[k];
    R = std::move(next);
  }
  return R;
}

LocalElt newton(const LPoly& P, LocalElt x) {
  LPoly dP = derivative(P);
  for (int it = 0; it < 64; ++it) {
    LocalElt step = evaluate(P, x) * inverse(evaluate(dP, x));
    if (is_zero(step)) break;
    x = x - step;
  }
  return x;
}

FpPoly residue_eval(const ResidueField& k, const std::vector<FpPoly>& P, const FpPoly& x) {
  FpPoly acc;
  for (size_t i = P.size(); i-- > 0;) acc = k.add(k.mul(acc, x), P[i]);
  return acc;
}

void roots_rec(LPoly P, int depth, std::vector<LocalElt>& out) {
  const LocalFieldPtr& F = P[0].field();
  int v = kInfiniteValuation;
  for (auto& c : P) v = std::min(v, valuation(c));
  if (v == kInfiniteValuation) fail(ErrorCode::PrecisionExhausted, "root search lost all digits");
  if (v > 0)
    for (auto& c : P) c = divide_by_pi_power(c, v);
  const ResidueField& k = F->residue;
  std::vector<FpPoly> Pbar, dPbar;
  for (auto& c : P) Pbar.push_back(residue(c));
  while (!Pbar.empty() && Pbar.back().empty()) Pbar.pop_back();
  if (Pbar.size() <= 1) return;
  for (size_t i = 1; i < Pbar.size(); ++i) dPbar.push_back(k.mul(Pbar[i], FpPoly{u64(i % F->p)}));
  if (depth > F->e * F->precision) fail(ErrorCode::PrecisionExhausted, "root search too deep");
  const LocalElt pi = uniformizer(F);
  for (u64 idx = 0; idx < k.size(); ++idx) {
    FpPoly rb = k.element(idx);
    if (!residue_eval(k, Pbar, rb).empty()) continue;
    LocalElt r = lift_residue(F, rb);
    if (!residue_eval(k, dPbar, rb).empty()) {
      out.push_back(newton(P, r));
      continue;
    }
    std::vector<LocalElt> sub;
    roots_rec(shift_scale(P, r, pi), depth + 1, sub);
    for (auto& y : sub) out.push_back(r + pi * y);
  }
}

}  // namespace

std::vector<LocalElt> integral_roots(const std::vector<LocalElt>& poly) {
  if (poly.empty()) fail(ErrorCode::InvalidOperand, "empty polynomial");
  std::vector<LocalElt> out;
  roots_rec(poly, 0, out);
  return out;
}

// ---- roots of unity

long MuGroup::order() const {
  long r = 1;
  for (int i = 0; i < k; ++i) r *= field->p;
  return r;
}

MuGroup mu_p_part(const LocalFieldPtr& F) {
  require_odd(F->p);
  const long p = F->p;
  const FiltrationData& fd = F->filtration(F);
  MuGroup mu{F, 0, std::nullopt};
  if (fd.nontrivial != F->n + 1) return mu;
  std::vector<LocalElt> phi(p, one(F));
  auto roots = integral_roots(phi);
  if (roots.empty()) fail(ErrorCode::PrecisionExhausted, "mu_p detected but no root of Phi_p found");
  LocalElt zeta = roots.front();
  mu.k = 1;
  long phi_next = p * (p - 1);
  while (phi_next <= F->n) {
    PthPowerResult r = is_pth_power(zeta);
    if (!r.is_power) break;
    zeta = *r.witness;
    ++mu.k;
    phi_next *= p;
  }
  mu.zeta = zeta;
  return mu;
}

}  // namespace bp
