#include "bp/local_field.hpp"

#include <algorithm>

#include "bp/linalg.hpp"

namespace bp {

// ---- residue field

ResidueField::ResidueField(long p, FpPoly modulus)
    : F_{u64(p)}, modulus_(fp_monic(F_, modulus)), f_(bp::degree(modulus_)) {}

u64 ResidueField::size() const {
  u64 s = 1;
  for (int i = 0; i < f_; ++i) s *= F_.q;
  return s;
}

FpPoly ResidueField::pth_root(const FpPoly& a) const {
  return pow(a, mpz_class(std::to_string(size() / F_.q)));
}

FpPoly ResidueField::element(u64 idx) const {
  FpPoly r(f_);
  for (int i = 0; i < f_; ++i) {
    r[i] = idx % F_.q;
    idx /= F_.q;
  }
  trim(r);
  return r;
}

std::vector<u64> ResidueField::coords(const FpPoly& a) const {
  std::vector<u64> c(f_, 0);
  FpPoly r = reduce(a);
  for (size_t i = 0; i < r.size(); ++i) c[i] = r[i];
  return c;
}

// ---- elements

namespace {

ZVector reduce_vec(const ZVector& v, const mpz_class& m) {
  ZVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = mod(v(i), m);
  return r;
}

void same_field(const LocalElt& a, const LocalElt& b) {
  if (a.field() != b.field()) fail(ErrorCode::InvalidOperand, "elements of different fields");
}

}  // namespace

LocalElt::LocalElt(LocalFieldPtr field, ZVector coeffs, int precision)
    : field_(std::move(field)), prec_(precision) {
  if (!field_) fail(ErrorCode::InvalidOperand, "element without a field");
  if (coeffs.size() != field_->n) fail(ErrorCode::InvalidOperand, "coefficient count mismatch");
  prec_ = std::min(prec_, field_->precision);
  if (prec_ < 1) fail(ErrorCode::PrecisionExhausted, "no p-adic digits left");
  c_ = reduce_vec(coeffs, pow_ui(field_->p, prec_));
}

LocalElt LocalElt::operator-() const { return LocalElt(field_, -c_, prec_); }

LocalElt operator+(const LocalElt& a, const LocalElt& b) {
  same_field(a, b);
  return LocalElt(a.field_, a.c_ + b.c_, std::min(a.prec_, b.prec_));
}

LocalElt operator-(const LocalElt& a, const LocalElt& b) {
  same_field(a, b);
  return LocalElt(a.field_, a.c_ - b.c_, std::min(a.prec_, b.prec_));
}

ZVector raw_mul(const LocalField& F, const ZVector& a, const ZVector& b, const mpz_class& m) {
  ZVector r = ZVector::Zero(F.n);
  for (int k = 0; k < F.n; ++k) {
    if (a(k) == 0) continue;
    r += a(k) * (F.mult[k] * b);
  }
  return reduce_vec(r, m);
}

LocalElt operator*(const LocalElt& a, const LocalElt& b) {
  same_field(a, b);
  int prec = std::min(a.prec_, b.prec_);
  return LocalElt(a.field_, raw_mul(*a.field_, a.c_, b.c_, pow_ui(a.prime(), prec)), prec);
}

bool operator==(const LocalElt& a, const LocalElt& b) {
  if (a.field_ != b.field_) return false;
  return is_zero(a - b);
}

LocalElt zero(const LocalFieldPtr& F) { return LocalElt(F, ZVector::Zero(F->n), F->precision); }

LocalElt one(const LocalFieldPtr& F) { return from_integer(F, 1); }

LocalElt from_integer(const LocalFieldPtr& F, const mpz_class& a) {
  ZVector c = ZVector::Zero(F->n);
  c(0) = a;
  return LocalElt(F, c, F->precision);
}

LocalElt basis_element(const LocalFieldPtr& F, int level_i, int j) {
  ZVector c = ZVector::Zero(F->n);
  c(F->index(level_i, j)) = 1;
  return LocalElt(F, c, F->precision);
}

LocalElt uniformizer(const LocalFieldPtr& F) {
  return F->e == 1 ? from_integer(F, F->p) : basis_element(F, 1, 0);
}

LocalElt lift_residue(const LocalFieldPtr& F, const FpPoly& r) {
  ZVector c = ZVector::Zero(F->n);
  std::vector<u64> rc = F->residue.coords(r);
  for (int j = 0; j < F->f; ++j) c(j) = mpz_class(std::to_string(rc[j]));
  return LocalElt(F, c, F->precision);
}

LocalElt with_precision(const LocalElt& x, int n) {
  return LocalElt(x.field(), x.coeffs(), std::min(n, x.precision()));
}

LocalElt scale(const LocalElt& x, const mpz_class& c) {
  return LocalElt(x.field(), x.coeffs() * c, x.precision());
}

bool is_zero(const LocalElt& x) {
  for (Eigen::Index i = 0; i < x.coeffs().size(); ++i)
    if (x.coeffs()(i) != 0) return false;
  return true;
}

int valuation(const LocalElt& x) {
  const LocalField& F = x.parent();
  int best = kInfiniteValuation;
  for (int i = 0; i < F.e; ++i)
    for (int j = 0; j < F.f; ++j) {
      const mpz_class& c = x.coeffs()(F.index(i, j));
      if (c == 0) continue;
      best = std::min(best, F.e * vp(c, F.p, x.precision()) + i);
    }
  return best;
}

FpPoly residue(const LocalElt& x) {
  const LocalField& F = x.parent();
  FpPoly r(F.f);
  for (int j = 0; j < F.f; ++j) r[j] = F.residue.prime_field().reduce(x.coeffs()(j));
  trim(r);
  return r;
}

LocalElt inverse(const LocalElt& x) {
  if (valuation(x) != 0) fail(ErrorCode::NotInvertible, "local non-unit");
  const LocalFieldPtr& F = x.field();
  LocalElt r = with_precision(lift_residue(F, F->residue.inv(residue(x))), x.precision());
  LocalElt two = from_integer(F, 2);
  for (int it = 0; it < 64; ++it) {
    LocalElt next = r * (two - x * r);
    if (next == r) break;
    r = next;
  }
  return r;
}

LocalElt pow(const LocalElt& x, const mpz_class& e) {
  if (e < 0) return pow(inverse(x), -e);
  LocalElt r = with_precision(one(x.field()), x.precision());
  const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = r * r;
    if (mpz_tstbit(e.get_mpz_t(), i)) r = r * x;
  }
  return r;
}

LocalElt divide_by_p_power(const LocalElt& x, int s) {
  if (s <= 0) return scale(x, pow_ui(x.prime(), -s));
  const mpz_class ps = pow_ui(x.prime(), s);
  ZVector c = x.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!mpz_divisible_p(c(i).get_mpz_t(), ps.get_mpz_t()))
      fail(ErrorCode::DomainError, "division by p leaves the integers");
    mpz_divexact(c(i).get_mpz_t(), c(i).get_mpz_t(), ps.get_mpz_t());
  }
  return LocalElt(x.field(), c, x.precision() - s);
}

LocalElt divide_by_pi_power(const LocalElt& x, int k) {
  const LocalFieldPtr& F = x.field();
  if (k <= 0) return x * pow(uniformizer(F), -k);
  int v = valuation(x);
  if (v != kInfiniteValuation && v < k) fail(ErrorCode::DomainError, "division by pi leaves the integers");
  const int s = (k + F->e - 1) / F->e;
  if (s >= x.precision()) fail(ErrorCode::PrecisionExhausted, "division by pi exhausts precision");
  LocalElt eps_inv(F, F->epsilon_inv, F->precision);
  LocalElt w = x * pow(uniformizer(F), s * F->e - k) * pow(eps_inv, s);
  return divide_by_p_power(w, s);
}

LocalElt teichmuller(const LocalElt& x) {
  if (valuation(x) != 0) fail(ErrorCode::NotInvertible, "Teichmuller lift of a non-unit");
  const mpz_class q = mpz_class(std::to_string(x.parent().residue.size()));
  LocalElt y = x;
  const int limit = x.parent().e * x.precision() + 8;
  for (int it = 0; it < limit; ++it) {
    LocalElt z = pow(y, q);
    if (z == y) return y;
    y = z;
  }
  fail(ErrorCode::PrecisionExhausted, "Teichmuller iteration did not stabilize");
}

ZMatrix mult_matrix(const LocalElt& x) {
  const LocalField& F = x.parent();
  ZMatrix m = ZMatrix::Zero(F.n, F.n);
  for (int k = 0; k < F.n; ++k)
    if (x.coeffs()(k) != 0) m += x.coeffs()(k) * F.mult[k];
  return reduce(m, pow_ui(F.p, x.precision()));
}

int norm_valuation(const LocalElt& x) {
  SmithForm s = smith_form(mult_matrix(x), x.prime(), x.precision());
  if (s.rank < x.parent().n) return kInfiniteValuation;
  int t = 0;
  for (int d : s.diag) t += d;
  return t;
}

// ---- base fields

namespace {

using ZPoly = std::vector<mpz_class>;

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Remainder modulo a monic polynomial, coefficients reduced mod m.
ZPoly zpoly_rem_monic(ZPoly a, const ZPoly& g, const mpz_class& m) {
  const size_t n = g.size() - 1;
  for (size_t k = a.size(); k-- > n;) {
    mpz_class c = mod(a[k], m);
    if (c != 0)
      for (size_t j = 0; j <= n; ++j) a[k - n + j] -= c * g[j];
    a.pop_back();
  }
  for (auto& c : a) c = mod(c, m);
  a.resize(n, 0);
  return a;
}

}  // namespace

LocalFieldPtr make_base_field(long p, int precision, const std::vector<mpz_class>& poly_in) {
  if (poly_in.size() < 2) fail(ErrorCode::InvalidOperand, "defining polynomial must have degree >= 1");
  if (poly_in.back() != 1) fail(ErrorCode::InvalidOperand, "defining polynomial must be monic");
  if (precision < 2) fail(ErrorCode::PrecisionExhausted, "precision too small for a local field");
  PrimeField Fp{u64(p)};
  if (!is_prime(mpz_class(p))) fail(ErrorCode::InvalidOperand, "p must be prime");
  const mpz_class m = pow_ui(p, precision);
  ZPoly g(poly_in.size());
  for (size_t i = 0; i < g.size(); ++i) g[i] = mod(poly_in[i], m);
  const int n = int(g.size()) - 1;

  auto fs = fp_factor(Fp, fp_from_z(Fp, g));
  if (fs.size() != 1)
    fail(ErrorCode::NotAField, "defining polynomial is reducible (residue factorization has " +
                                   std::to_string(fs.size()) + " distinct factors)");
  const FpPoly h = fs[0].first;
  const int e = fs[0].second, f = degree(h);
  ZPoly H(h.size());
  for (size_t i = 0; i < h.size(); ++i) H[i] = mpz_class(std::to_string(h[i]));

  if (e >= 2) {
    ZPoly He = {1};
    for (int i = 0; i < e; ++i) He = zpoly_mul(He, H);
    ZPoly diff(n + 1);
    FpPoly Fbar(n + 1);
    for (int i = 0; i <= n; ++i) {
      diff[i] = mod(g[i] - He[i], m);
      if (!mpz_divisible_ui_p(diff[i].get_mpz_t(), p))
        fail(ErrorCode::NotAField, "residue factorization inconsistent");
      mpz_class t = diff[i] / p;
      Fbar[i] = Fp.reduce(t);
    }
    trim(Fbar);
    if (fp_mod(Fp, Fbar, h).empty())
      fail(ErrorCode::DomainError, "presentation is not p-maximal (Dedekind criterion fails)");
  }

  auto F = std::make_shared<LocalField>();
  F->p = p;
  F->precision = precision;
  F->n = n;
  F->e = e;
  F->f = f;
  F->level = FieldLevel::Base;
  F->residue = ResidueField(p, h);
  F->poly = g;

  // basis polynomials x^j H^i, indexed i*f + j; degree equals the index
  std::vector<ZPoly> basis(n);
  ZPoly Hi = {1};
  for (int i = 0; i < e; ++i) {
    ZPoly xj = Hi;
    for (int j = 0; j < f; ++j) {
      basis[i * f + j] = xj;
      xj.insert(xj.begin(), mpz_class(0));
    }
    Hi = zpoly_mul(Hi, H);
  }
  // power coords -> nice coords: B is unit upper triangular
  ZMatrix B = ZMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (size_t k = 0; k < basis[a].size() && int(k) < n; ++k) B(k, a) = mod(basis[a][k], m);
  auto to_nice = [&](const ZPoly& c) {
    ZVector r = ZVector::Zero(n);
    ZVector t(n);
    for (int k = 0; k < n; ++k) t(k) = k < int(c.size()) ? c[k] : mpz_class(0);
    for (int a = n - 1; a >= 0; --a) {
      r(a) = mod(t(a), m);
      if (r(a) != 0)
        for (int k = 0; k <= a; ++k) t(k) -= r(a) * B(k, a);
    }
    return r;
  };

  F->mult.assign(n, ZMatrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      ZVector col = to_nice(zpoly_rem_monic(zpoly_mul(basis[a], basis[b]), g, m));
      F->mult[a].col(b) = col;
      F->mult[b].col(a) = col;
    }
  F->generator = to_nice(zpoly_rem_monic(ZPoly{0, 1}, g, m));

  ZVector eps = ZVector::Zero(n);
  if (e == 1) {
    eps(0) = 1;
  } else {
    ZVector pi = ZVector::Zero(n);
    pi(f) = 1;
    ZVector pe = ZVector::Zero(n);
    pe(0) = 1;
    for (int i = 0; i < e; ++i) pe = raw_mul(*F, pe, pi, m);
    for (int k = 0; k < n; ++k) {
      if (!mpz_divisible_ui_p(pe(k).get_mpz_t(), p))
        fail(ErrorCode::NotAField, "uniformizer power is not divisible by p");
      eps(k) = pe(k) / p;
    }
  }
  F->epsilon = eps;
  LocalFieldPtr Fc = F;
  F->epsilon_inv = inverse(LocalElt(Fc, eps, precision)).coeffs();
  return Fc;
}

}  // namespace bp
