#include "bp/kummer.hpp"

#include <algorithm>

namespace bp {

namespace {

ZVector reduce_vec(const ZVector& v, const mpz_class& m) {
  ZVector r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r(i) = mod(v(i), m);
  return r;
}

// O_B[y]/(y^p - alpha)
struct Radical {
  const LocalField& B;
  long p;
  int nb;
  mpz_class m;
  ZVector alpha;

  int size() const { return int(p) * nb; }

  ZVector mul(const ZVector& a, const ZVector& b) const {
    ZVector r = ZVector::Zero(size());
    for (int j = 0; j < p; ++j) {
      ZVector aj = a.segment(j * nb, nb);
      if (aj.isZero()) continue;
      for (int k = 0; k < p; ++k) {
        ZVector bk = b.segment(k * nb, nb);
        if (bk.isZero()) continue;
        ZVector prod = raw_mul(B, aj, bk, m);
        int idx = j + k;
        if (idx >= p) {
          prod = raw_mul(B, prod, alpha, m);
          idx -= int(p);
        }
        r.segment(idx * nb, nb) += prod;
      }
    }
    return reduce_vec(r, m);
  }
};

// v / p^shift in radical coordinates
struct Scaled {
  ZVector v;
  int shift = 0;
};

struct Arith {
  const Radical& R;
  const LocalFieldPtr& B;
  int prec;

  Scaled base(const LocalElt& b) const {
    ZVector v = ZVector::Zero(R.size());
    v.segment(0, R.nb) = b.coeffs();
    return {v, 0};
  }
  Scaled mul(const Scaled& a, const Scaled& b) const {
    return {R.mul(a.v, b.v), a.shift + b.shift};
  }
  Scaled add(const Scaled& a, const Scaled& b, bool negate_b = false) const {
    int s = std::max(a.shift, b.shift);
    ZVector va = a.v * pow_ui(R.p, s - a.shift);
    ZVector vb = b.v * pow_ui(R.p, s - b.shift);
    return {reduce_vec(negate_b ? ZVector(va - vb) : ZVector(va + vb), R.m), s};
  }
  Scaled pow(const Scaled& a, int n) const {
    Scaled r = base(with_precision(one(B), prec));
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
  }
  Scaled mul_base(const Scaled& a, const LocalElt& b) const {
    ZVector r(R.size());
    for (int j = 0; j < R.p; ++j)
      r.segment(j * R.nb, R.nb) = raw_mul(R.B, a.v.segment(j * R.nb, R.nb), b.coeffs(), R.m);
    return {r, a.shift};
  }
  // a / pi_B^k
  Scaled div_pi(const Scaled& a, int k) const {
    if (k <= 0) return mul_base(a, bp::pow(uniformizer(B), mpz_class(-k)));
    const int c = (k + B->e - 1) / B->e;
    LocalElt f = bp::pow(uniformizer(B), mpz_class(c * B->e - k)) *
                 bp::pow(LocalElt(B, B->epsilon_inv, B->precision), mpz_class(c));
    if (B->e == 1) f = one(B);
    Scaled r = mul_base(a, f);
    r.shift += c;
    return r;
  }
};

// Residue field of an unramified Artin-Schreier layer: k[X]/(X^p + cX - r).
struct ArtinSchreier {
  const ResidueField& k;
  long p;
  FpPoly c, r;
  using E = std::vector<FpPoly>;

  E mul(const E& a, const E& b) const {
    std::vector<FpPoly> t(2 * p - 1);
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) t[i + j] = k.add(t[i + j], k.mul(a[i], b[j]));
    for (int d = int(2 * p - 2); d >= p; --d) {
      if (t[d].empty()) continue;
      t[d - p] = k.add(t[d - p], k.mul(t[d], r));
      t[d - p + 1] = k.sub(t[d - p + 1], k.mul(t[d], c));
      t[d].clear();
    }
    t.resize(p);
    return t;
  }
  E frob(const E& a) const {
    E x = a;
    for (int i = 1; i < p; ++i) x = mul(x, a);
    return x;
  }
};

struct TowerShape {
  int e_rel = 1, f_rel = 1;
  Scaled pi, z;
  FpPoly residue_modulus;
};

}  // namespace

KummerResult make_kummer_tower(const LocalElt& alpha) {
  const LocalFieldPtr& B = alpha.field();
  const long p = B->p;
  if (p == 2) fail(ErrorCode::DomainError, "Kummer layers require an odd prime");
  const int v = valuation(alpha);
  if (v == kInfiniteValuation) fail(ErrorCode::DomainError, "Kummer radicand is zero");
  PthPowerResult pr = is_pth_power(alpha);
  if (pr.is_power) return SplitMarker{*pr.witness};

  // radical y0 = y / pi^k0 with y0^p = A0 of valuation v0 < p
  const int k0 = v / int(p), v0 = v % int(p);
  const LocalElt A0 = k0 > 0 ? divide_by_pi_power(alpha, int(p) * k0) : alpha;
  const int W = std::min(A0.precision(), B->precision);
  const mpz_class mW = pow_ui(p, W);
  Radical R{*B, p, B->n, mW, reduce_vec(A0.coeffs(), mW)};
  Arith ar{R, B, W};
  const int nb = B->n;
  const LocalElt oneB = with_precision(one(B), W);

  Scaled Y{ZVector::Zero(R.size()), 0};
  Y.v(nb) = 1;
  TowerShape shape;
  shape.residue_modulus = B->residue.modulus();
  const Scaled zB = B->f > 1 ? ar.base(basis_element(B, 0, 1)) : ar.base(oneB);
  auto inv_mod_p = [p](long a) {
    a %= p;
    for (long s = 1; s < p; ++s)
      if ((s * a) % p == 1) return s;
    return 0L;
  };

  if (v0 != 0) {
    long s = inv_mod_p(v0);
    int t = int((s * v0 - 1) / p);
    shape.pi = ar.div_pi(ar.pow(Y, int(s)), t);
    shape.e_rel = int(p);
    shape.z = zB;
  } else {
    LocalElt A = with_precision(A0, W);
    const mpz_class q1 = mpz_class(std::to_string(B->residue.size() - 1));
    LocalElt omega = teichmuller(A);
    LocalElt c = pow(omega, inverse_mod(mpz_class(p), q1));
    A = A * inverse(omega);
    Y = ar.mul_base(Y, inverse(c));
    bool done = false;
    for (int it = 0; it < B->e * W && !done; ++it) {
      LocalElt Am1 = A - oneB;
      const int d = valuation(Am1);
      const long lhs = long(d) * (p - 1), rhs = p * B->e;
      if (d == kInfiniteValuation || lhs > rhs)
        fail(ErrorCode::PrecisionExhausted, "Kummer analysis disagrees with the p-th power test");
      FpPoly rbar = residue(divide_by_pi_power(Am1, d));
      if (lhs < rhs) {
        if (d % p != 0) {
          long s = inv_mod_p(d);
          int t = int((s * d - 1) / p);
          Scaled ym1 = ar.add(Y, ar.base(oneB), true);
          shape.pi = ar.div_pi(ar.pow(ym1, int(s)), t);
          shape.e_rel = int(p);
          shape.z = zB;
          done = true;
          break;
        }
        FpPoly rho = B->residue.pth_root(rbar);
        LocalElt b = oneB + pow(uniformizer(B), mpz_class(d / p)) * lift_residue(B, rho);
        A = A * pow(inverse(b), mpz_class(p));
        Y = ar.mul_base(Y, inverse(b));
        continue;
      }
      // d = p e/(p-1): residue equation X^p + cbar X = rbar
      const int k = d / int(p);
      const ResidueField& kf = B->residue;
      FpPoly cbar = residue(LocalElt(B, B->epsilon_inv, B->precision));
      std::optional<FpPoly> root;
      for (u64 idx = 0; idx < kf.size() && !root; ++idx) {
        FpPoly x = kf.element(idx);
        FpPoly val = kf.sub(kf.add(kf.pow(x, mpz_class(p)), kf.mul(cbar, x)), rbar);
        if (val.empty()) root = x;
      }
      if (root) {
        LocalElt b = oneB + pow(uniformizer(B), mpz_class(k)) * lift_residue(B, *root);
        A = A * pow(inverse(b), mpz_class(p));
        Y = ar.mul_base(Y, inverse(b));
        continue;
      }
      // unramified of degree p
      Scaled X = ar.div_pi(ar.add(Y, ar.base(oneB), true), k);
      ArtinSchreier as{kf, p, cbar, rbar};
      const int fT = B->f * int(p);
      bool found = false;
      for (u64 idx = 0; idx < kf.size() && !found; ++idx) {
        FpPoly g0 = kf.element(idx);
        ArtinSchreier::E gamma(p);
        gamma[0] = g0;
        gamma[1] = FpPoly{1};
        std::vector<ArtinSchreier::E> conj = {gamma};
        ArtinSchreier::E cur = as.frob(gamma);
        while (cur != gamma && int(conj.size()) <= fT) {
          conj.push_back(cur);
          cur = as.frob(cur);
        }
        if (int(conj.size()) != fT) continue;
        // minimal polynomial over F_p: prod (Z - conj_i)
        std::vector<ArtinSchreier::E> P = {ArtinSchreier::E(p)};
        P[0][0] = FpPoly{1};
        for (auto& g : conj) {
          std::vector<ArtinSchreier::E> next(P.size() + 1, ArtinSchreier::E(p));
          for (size_t i = 0; i < P.size(); ++i) {
            for (int l = 0; l < p; ++l) next[i + 1][l] = kf.add(next[i + 1][l], P[i][l]);
            ArtinSchreier::E t = as.mul(P[i], g);
            for (int l = 0; l < p; ++l) next[i][l] = kf.sub(next[i][l], t[l]);
          }
          P = std::move(next);
        }
        FpPoly mod_t(P.size());
        for (size_t i = 0; i < P.size(); ++i) {
          for (int l = 1; l < p; ++l)
            if (!P[i][l].empty()) fail(ErrorCode::DomainError, "residue minimal polynomial not over F_p");
          if (P[i][0].size() > 1) fail(ErrorCode::DomainError, "residue minimal polynomial not over F_p");
          mod_t[i] = P[i][0].empty() ? 0 : P[i][0][0];
        }
        shape.residue_modulus = mod_t;
        shape.z = ar.add(X, ar.base(lift_residue(B, g0)));
        found = true;
      }
      if (!found) fail(ErrorCode::DomainError, "no residue generator found for the unramified layer");
      shape.e_rel = 1;
      shape.f_rel = int(p);
      shape.pi = ar.base(with_precision(uniformizer(B), W));
      done = true;
    }
    if (!done) fail(ErrorCode::PrecisionExhausted, "Kummer defect loop did not terminate");
  }

  const int eT = B->e * shape.e_rel, fT = B->f * shape.f_rel, nT = int(p) * nb;
  std::vector<Scaled> zpow(fT), pipow(eT);
  zpow[0] = ar.base(oneB);
  for (int j = 1; j < fT; ++j) zpow[j] = ar.mul(zpow[j - 1], shape.z);
  pipow[0] = ar.base(oneB);
  for (int i = 1; i < eT; ++i) pipow[i] = ar.mul(pipow[i - 1], shape.pi);
  std::vector<Scaled> basis(nT);
  int delta = 0;
  for (int i = 0; i < eT; ++i)
    for (int j = 0; j < fT; ++j) {
      basis[i * fT + j] = ar.mul(zpow[j], pipow[i]);
      delta = std::max(delta, basis[i * fT + j].shift);
    }
  ZMatrix Cp(nT, nT);
  for (int a = 0; a < nT; ++a)
    Cp.col(a) = reduce_vec(basis[a].v * pow_ui(p, delta - basis[a].shift), mW);

  int s = 0;
  ZMatrix Cinv = inverse_scaled(Cp, p, W, &s);
  const int prec_from = W - s - std::max(0, s - delta);
  const int NT = prec_from - 2 * delta - 1;
  if (NT < pth_power_precision_floor(*B) / 2 || NT < 4)
    fail(ErrorCode::PrecisionExhausted, "tower basis change exhausts precision");
  ZMatrix from_radical;
  if (delta >= s) {
    from_radical = Cinv * pow_ui(p, delta - s);
  } else {
    from_radical = Cinv;
    const mpz_class ps = pow_ui(p, s - delta);
    const mpz_class mf = pow_ui(p, prec_from + (s - delta));
    for (Eigen::Index i = 0; i < from_radical.rows(); ++i)
      for (Eigen::Index j = 0; j < from_radical.cols(); ++j) {
        mpz_class x = mod(from_radical(i, j), mf);
        if (!mpz_divisible_p(x.get_mpz_t(), ps.get_mpz_t()))
          fail(ErrorCode::PrecisionExhausted, "tower basis is not integral at working precision");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), ps.get_mpz_t());
        from_radical(i, j) = x;
      }
  }
  from_radical = reduce(from_radical, pow_ui(p, prec_from));

  auto T = std::make_shared<LocalField>();
  T->p = p;
  T->precision = NT;
  T->n = nT;
  T->e = eT;
  T->f = fT;
  T->level = FieldLevel::Tower;
  T->residue = ResidueField(p, shape.residue_modulus);
  const mpz_class mT = pow_ui(p, NT);
  const mpz_class m2 = pow_ui(p, NT + 2 * delta);
  const mpz_class p2d = pow_ui(p, 2 * delta);
  T->mult.assign(nT, ZMatrix::Zero(nT, nT));
  for (int a = 0; a < nT; ++a)
    for (int b = a; b < nT; ++b) {
      ZVector col = reduce_vec(from_radical * R.mul(Cp.col(a), Cp.col(b)), m2);
      for (int k = 0; k < nT; ++k) {
        if (!mpz_divisible_p(col(k).get_mpz_t(), p2d.get_mpz_t()))
          fail(ErrorCode::PrecisionExhausted, "tower structure constants are not integral");
        mpz_divexact(col(k).get_mpz_t(), col(k).get_mpz_t(), p2d.get_mpz_t());
      }
      col = reduce_vec(col, mT);
      T->mult[a].col(b) = col;
      T->mult[b].col(a) = col;
    }

  ZVector eps = ZVector::Zero(nT);
  if (eT == 1) {
    eps(0) = 1;
  } else {
    ZVector pi = ZVector::Zero(nT), pe = ZVector::Zero(nT);
    pi(fT) = 1;
    pe(0) = 1;
    for (int i = 0; i < eT; ++i) pe = raw_mul(*T, pe, pi, mT);
    for (int k = 0; k < nT; ++k) {
      if (!mpz_divisible_ui_p(pe(k).get_mpz_t(), p))
        fail(ErrorCode::PrecisionExhausted, "tower uniformizer has the wrong valuation");
      eps(k) = pe(k) / p;
    }
  }
  T->epsilon = eps;

  TowerData td;
  td.base = B;
  td.alpha = alpha.coeffs();
  td.e_rel = shape.e_rel;
  td.f_rel = shape.f_rel;
  td.embed = reduce(from_radical.leftCols(nb), mT);
  td.y = reduce_vec(from_radical.col(nb), mT);
  td.to_radical = Cp;
  td.radical_shift = delta;
  td.from_radical = from_radical;
  T->tower = td;
  LocalFieldPtr Tc = T;
  LocalElt eps_elt(Tc, eps, NT);
  if (valuation(eps_elt) != 0)
    fail(ErrorCode::PrecisionExhausted, "tower uniformizer has the wrong valuation");
  T->epsilon_inv = inverse(eps_elt).coeffs();

  LocalElt y = LocalElt(Tc, td.y, NT) * embed(Tc, pow(uniformizer(B), mpz_class(k0)));
  T->tower->y = y.coeffs();
  if (!(pow(y, mpz_class(p)) == embed(Tc, alpha)))
    fail(ErrorCode::PrecisionExhausted, "tower fails y^p = alpha at working precision");
  return Tc;
}

LocalElt embed(const LocalFieldPtr& tower, const LocalElt& x) {
  if (!tower->tower || tower->tower->base != x.field())
    fail(ErrorCode::InvalidOperand, "element is not in the base of this tower");
  const int prec = std::min(x.precision(), tower->precision);
  return LocalElt(tower, tower->tower->embed * x.coeffs(), prec);
}

LocalElt kummer_root(const LocalFieldPtr& tower) {
  if (!tower->tower) fail(ErrorCode::InvalidOperand, "not a tower");
  return LocalElt(tower, tower->tower->y, tower->precision);
}

std::optional<LocalElt> descend(const LocalElt& x) {
  const LocalField& T = x.parent();
  if (!T.tower) fail(ErrorCode::InvalidOperand, "not a tower element");
  const TowerData& td = *T.tower;
  const int prec = x.precision();
  const int out_prec = prec - td.radical_shift;
  if (out_prec < 1) fail(ErrorCode::PrecisionExhausted, "descent exhausts precision");
  const mpz_class m = pow_ui(T.p, prec);
  ZVector r = reduce_vec(td.to_radical * x.coeffs(), m);
  const mpz_class ps = pow_ui(T.p, td.radical_shift);
  const int nb = td.base->n;
  const mpz_class mo = pow_ui(T.p, out_prec);
  for (Eigen::Index i = nb; i < r.size(); ++i)
    if (mod(r(i), mpz_class(m)) != 0 && vp(r(i), T.p, prec) < prec) return std::nullopt;
  ZVector b(nb);
  for (int i = 0; i < nb; ++i) {
    if (!mpz_divisible_p(r(i).get_mpz_t(), ps.get_mpz_t())) return std::nullopt;
    mpz_divexact(b(i).get_mpz_t(), r(i).get_mpz_t(), ps.get_mpz_t());
  }
  return LocalElt(td.base, b, out_prec);
}

LocalElt GaloisGenerator::operator()(const LocalElt& x) const {
  if (x.field() != tower) fail(ErrorCode::InvalidOperand, "automorphism applied outside its field");
  return LocalElt(tower, action * x.coeffs(), x.precision());
}

GaloisGenerator galois_generator(const LocalFieldPtr& T) {
  if (!T->tower) fail(ErrorCode::NotKummer, "not a Kummer tower");
  const TowerData& td = *T->tower;
  const LocalFieldPtr& B = td.base;
  MuGroup mu = mu_p_part(B);
  if (mu.k == 0) fail(ErrorCode::NotKummer, "base field lacks a primitive p-th root of unity");
  const long p = T->p;
  LocalElt zp = pow(*mu.zeta, pow_ui(p, mu.k - 1));
  const int nb = B->n, n = T->n;
  ZMatrix SR = ZMatrix::Zero(n, n);
  LocalElt zj = one(B);
  for (int j = 0; j < p; ++j) {
    SR.block(j * nb, j * nb, nb, nb) = mult_matrix(zj);
    zj = zj * zp;
  }
  const int prec = std::min(T->precision, zp.precision());
  const mpz_class m2 = pow_ui(p, prec + td.radical_shift);
  const mpz_class ps = pow_ui(p, td.radical_shift);
  ZMatrix S = reduce(td.from_radical * SR * td.to_radical, m2);
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    for (Eigen::Index j = 0; j < S.cols(); ++j) {
      if (!mpz_divisible_p(S(i, j).get_mpz_t(), ps.get_mpz_t()))
        fail(ErrorCode::PrecisionExhausted, "Galois action is not integral at working precision");
      mpz_divexact(S(i, j).get_mpz_t(), S(i, j).get_mpz_t(), ps.get_mpz_t());
    }
  return {T, zp, reduce(S, pow_ui(p, prec))};
}

LocalElt relative_norm(const GaloisGenerator& s, const LocalElt& x) {
  LocalElt acc = x, cur = x;
  for (long i = 1; i < s.tower->p; ++i) {
    cur = s(cur);
    acc = acc * cur;
  }
  auto b = descend(acc);
  if (!b) fail(ErrorCode::PrecisionExhausted, "relative norm did not land in the base");
  return *b;
}

CyclicSubgroup w_one_minus_s(const GaloisGenerator& s) {
  MuGroup mu = mu_p_part(s.tower);
  if (mu.k == 0) return {};
  LocalElt g = *mu.zeta * inverse(s(*mu.zeta));
  if (g == with_precision(one(s.tower), g.precision())) return {1, g};
  return {s.tower->p, g};
}

}  // namespace bp
