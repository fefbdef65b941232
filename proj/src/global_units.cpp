#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <random>

#include "bp/number_field.hpp"

namespace bp {

namespace {

using Cplx = std::complex<double>;

std::vector<Cplx> complex_roots(const ZPoly& f) {
  const int n = int(f.size()) - 1;
  if (n == 1) return {Cplx(-f[0].get_d(), 0)};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -f[i].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(C);
  std::vector<Cplx> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

// Largest row sum of |V^-1|: bounds power-basis coordinates by conjugate sizes.
double coordinate_factor(const std::vector<Cplx>& roots) {
  const int n = int(roots.size());
  Eigen::MatrixXcd V(n, n);
  for (int j = 0; j < n; ++j) {
    Cplx t = 1;
    for (int i = 0; i < n; ++i) {
      V(j, i) = t;
      t *= roots[j];
    }
  }
  Eigen::MatrixXcd Vi = V.inverse();
  double best = 0;
  for (int i = 0; i < n; ++i) best = std::max(best, Vi.row(i).cwiseAbs().sum());
  return best;
}

double max_conjugate(const NFElt& a, const std::vector<Cplx>& roots) {
  double best = 0;
  for (const Cplx& r : roots) {
    Cplx s = 0, t = 1;
    for (Eigen::Index i = 0; i < a.coeffs().size(); ++i) {
      s += a.coeffs()(i).get_d() * t;
      t *= r;
    }
    best = std::max(best, std::abs(s));
  }
  return best;
}

mpz_class ceil_mpz(double x) {
  mpz_class r;
  mpz_set_d(r.get_mpz_t(), std::ceil(x));
  return r;
}

// x = num/den mod M with |num| <= nb, 0 < den <= db.
std::optional<mpq_class> rational_reconstruct(const mpz_class& x, const mpz_class& M, const mpz_class& nb,
                                              const mpz_class& db) {
  mpz_class r0 = M, r1 = mod(x, M), s0 = 0, s1 = 1;
  while (r1 > nb) {
    mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > db) return std::nullopt;
  mpq_class out(r1, s1);
  out.canonicalize();
  return out;
}

struct AuxPrime {
  long q = 0;
  int N = 0;
  mpz_class M;
  std::vector<FpPoly> residue;   // irreducible factors of f mod q
  std::vector<ZQuotient> rings;  // Z/q^N[x]/(g_i)
  std::vector<ZPoly> idempotents;
};

AuxPrime make_aux(const NumberField& K, long q, int N) {
  AuxPrime A;
  A.q = q;
  A.N = N;
  A.M = pow_ui(q, N);
  PrimeField F{u64(q)};
  for (auto& [h, mult] : fp_factor(F, fp_from_z(F, K.poly()))) A.residue.push_back(h);
  auto lifted = hensel_factor(K.poly(), A.residue, q, N);
  for (auto& g : lifted) A.rings.push_back({g, A.M});
  for (size_t i = 0; i < lifted.size(); ++i) {
    ZPoly co, rem;
    zp_divmod(K.poly(), lifted[i], A.M, co, rem);
    ZPoly u = A.rings[i].inverse(A.rings[i].reduce(co), q);
    A.idempotents.push_back(zp_mod(zp_mul(co, u, A.M), K.poly(), A.M));
  }
  return A;
}

std::vector<FpPoly> aux_residue_factors(const NumberField& K, long q) {
  PrimeField F{u64(q)};
  std::vector<FpPoly> out;
  for (auto& [h, mult] : fp_factor(F, fp_from_z(F, K.poly()))) out.push_back(h);
  return out;
}

mpz_class residue_order(long q, int f) { return pow_ui(q, f) - 1; }

// Auxiliary primes: odd, prime to p and disc(f), and to any extra integer given.
std::vector<long> aux_primes(const NumberField& K, long p, const mpz_class& avoid, int count) {
  std::vector<long> out;
  for (long q = 3; int(out.size()) < count; q += 2) {
    if (q == p || !is_prime(mpz_class(q))) continue;
    if (mpz_divisible_ui_p(K.discriminant().get_mpz_t(), q)) continue;
    if (avoid != 0 && mpz_divisible_ui_p(avoid.get_mpz_t(), q)) continue;
    out.push_back(q);
  }
  return out;
}

FpPoly residue_of(const NFElt& a, long q, const FpPoly& h) {
  PrimeField F{u64(q)};
  FpPoly r;
  for (Eigen::Index i = a.coeffs().size(); i-- > 0;) {
    const mpq_class& c = a.coeffs()(i);
    u64 v = F.mul(F.reduce(c.get_num()), F.inv(F.reduce(c.get_den())));
    r = fp_add(F, fp_mulmod(F, r, FpPoly{0, 1}, h), FpPoly{v});
  }
  return fp_mod(F, r, h);
}

ZPoly image_mod(const NFElt& a, const AuxPrime& A, size_t i) {
  ZPoly r;
  for (Eigen::Index k = 0; k < a.coeffs().size(); ++k) {
    const mpq_class& c = a.coeffs()(k);
    mpz_class v = mod(c.get_num() * inverse_mod(c.get_den(), A.M), A.M);
    r.push_back(v);
  }
  return A.rings[i].reduce(r);
}

std::optional<NFElt> reconstruct(const NumberFieldPtr& K, const AuxPrime& A, const std::vector<ZPoly>& parts,
                                 const mpz_class& nb, const mpz_class& db) {
  ZPoly X;
  for (size_t i = 0; i < parts.size(); ++i) X = zp_add(X, zp_mul(parts[i], A.idempotents[i], A.M), A.M);
  X = zp_mod(X, K->poly(), A.M);
  QVector c = QVector::Zero(K->degree());
  for (int i = 0; i < K->degree(); ++i) {
    auto r = rational_reconstruct(i < int(X.size()) ? X[i] : mpz_class(0), A.M, nb, db);
    if (!r) return std::nullopt;
    c(i) = *r;
  }
  return NFElt(K, c);
}

int precision_for(long q, const mpz_class& nb, const mpz_class& db) {
  mpz_class need = 2 * nb * db, M = 1;
  int N = 0;
  while (M <= need) {
    M *= q;
    ++N;
  }
  return N + 1;
}

// Teichmuller lift in an unramified ring: x <- x^(q^f), one digit per step.
ZPoly teichmuller_lift(const ZQuotient& R, const ZPoly& x, long q, int f, int N) {
  ZPoly y = R.reduce(x);
  const mpz_class Q = pow_ui(q, f);
  for (int i = 0; i < N; ++i) y = R.pow(y, Q);
  return y;
}

// p-th root in F_{q^f} of a p-th power a != 0.
FpPoly residue_pth_root(const ResidueField& k, const FpPoly& a, long p, const mpz_class& Q1, std::mt19937_64& rng) {
  mpz_class t = Q1;
  int s = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    t /= p;
    ++s;
  }
  if (s == 0) return k.pow(a, inverse_mod(mpz_class(p), Q1));
  // generator of the Sylow p-subgroup
  FpPoly g;
  const mpz_class ps1 = pow_ui(p, s - 1);
  for (;;) {
    FpPoly c;
    for (int i = 0; i < k.degree(); ++i) c.push_back(rng() % u64(k.prime()));
    trim(c);
    if (c.empty()) continue;
    g = k.pow(c, t);
    if (k.pow(g, ps1) != FpPoly{1}) break;
  }
  const FpPoly h = k.pow(a, t);
  const FpPoly gamma = k.pow(g, ps1);
  mpz_class e = 0, pi = 1;
  const FpPoly ginv = k.inv(g);
  for (int i = 0; i < s; ++i) {
    FpPoly cur = k.mul(h, k.pow(ginv, e));
    cur = k.pow(cur, pow_ui(p, s - 1 - i));
    long digit = -1;
    FpPoly gp = {1};
    for (long d = 0; d < p; ++d) {
      if (gp == cur) {
        digit = d;
        break;
      }
      gp = k.mul(gp, gamma);
    }
    if (digit < 0) fail(ErrorCode::DomainError, "discrete logarithm failed in the residue field");
    e += pi * digit;
    pi *= p;
  }
  if (!mpz_divisible_ui_p(e.get_mpz_t(), p)) fail(ErrorCode::DomainError, "element is not a p-th power");
  const FpPoly r1 = k.pow(g, e / p);
  // A t + B p = 1
  mpz_class G, A, B;
  mpz_gcdext(G.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t(), t.get_mpz_t(), mpz_class(p).get_mpz_t());
  auto pw = [&](const FpPoly& x, const mpz_class& ex) {
    return ex >= 0 ? k.pow(x, ex) : k.pow(k.inv(x), -ex);
  };
  return k.mul(pw(r1, A), pw(a, B));
}

// Newton lift of a simple root of x^p = a.
ZPoly lift_pth_root(const ZQuotient& R, const ZPoly& a, ZPoly x, long p, long q, int N) {
  int prec = 1;
  while (prec < N) {
    ZPoly xp1 = R.pow(x, p - 1);
    ZPoly fx = zp_sub(R.mul(xp1, x), a, R.m);
    ZPoly dfx = zp_scale(xp1, p, R.m);
    x = zp_sub(x, R.mul(fx, R.inverse(dfx, q)), R.m);
    prec *= 2;
  }
  return x;
}

bool odometer(std::vector<size_t>& idx, const std::vector<size_t>& sizes, size_t start) {
  for (size_t i = start; i < idx.size(); ++i) {
    if (++idx[i] < sizes[i]) return true;
    idx[i] = 0;
  }
  return false;
}

constexpr long kMaxCombinations = 200000;

std::optional<NFElt> find_root_of_unity(const NumberFieldPtr& K, long p, int k) {
  const long P = pow_ui(p, k).get_si();
  const long phi = P / p * (p - 1);
  const int n = K->degree();
  if (n % phi != 0) return std::nullopt;
  // every completion at an unramified prime must contain mu_P
  long best_q = 0;
  size_t best_r = 0;
  for (long q : aux_primes(*K, p, 0, 20)) {
    auto hs = aux_residue_factors(*K, q);
    for (auto& h : hs)
      if (!mpz_divisible_ui_p(mpz_class(residue_order(q, degree(h))).get_mpz_t(), P)) return std::nullopt;
    if (best_q == 0 || hs.size() < best_r) {
      best_q = q;
      best_r = hs.size();
    }
  }
  const mpz_class D = sqrt(abs(K->discriminant())) + 1;
  const double B = coordinate_factor(complex_roots(K->poly()));
  const mpz_class nb = ceil_mpz(B * 1.01 + 1) * D, db = D;
  const int N = precision_for(best_q, nb, db);
  AuxPrime A = make_aux(*K, best_q, N);
  std::mt19937_64 rng(0x5eed);
  std::vector<std::vector<ZPoly>> roots(A.rings.size());
  for (size_t i = 0; i < A.rings.size(); ++i) {
    const int f = degree(A.residue[i]);
    ResidueField kf(best_q, A.residue[i]);
    const mpz_class Q1 = residue_order(best_q, f);
    FpPoly z;
    for (;;) {
      FpPoly c;
      for (int j = 0; j < f; ++j) c.push_back(rng() % u64(best_q));
      trim(c);
      if (c.empty()) continue;
      z = kf.pow(c, Q1 / P);
      if (kf.pow(z, mpz_class(P / p)) != FpPoly{1}) break;
    }
    ZPoly Z = teichmuller_lift(A.rings[i], zp_from_fp(z), best_q, f, N);
    ZPoly cur = Z;
    for (long j = 1; j < P; ++j) {
      if (j % p) roots[i].push_back(cur);
      cur = A.rings[i].mul(cur, Z);
    }
  }
  // the component at the first place may be fixed up to Galois conjugation of zeta
  std::vector<size_t> sizes(roots.size()), idx(roots.size(), 0);
  double combos = 1;
  for (size_t i = 0; i < roots.size(); ++i) {
    sizes[i] = roots[i].size();
    if (i) combos *= double(sizes[i]);
  }
  if (combos > kMaxCombinations) fail(ErrorCode::PrecisionExhausted, "too many local root combinations");
  const NFElt one = NFElt::from_integer(K, 1);
  do {
    std::vector<ZPoly> parts(roots.size());
    for (size_t i = 0; i < roots.size(); ++i) parts[i] = roots[i][idx[i]];
    auto cand = reconstruct(K, A, parts, nb, db);
    if (cand && pow(*cand, P) == one && !(pow(*cand, P / p) == one)) return cand;
  } while (odometer(idx, sizes, 1));
  return std::nullopt;
}

}  // namespace

GlobalMu global_mu_p(const NumberFieldPtr& K, long p) {
  if (p < 3 || !is_prime(mpz_class(p))) fail(ErrorCode::InvalidOperand, "p must be an odd prime");
  GlobalMu out;
  for (int k = 1;; ++k) {
    auto z = find_root_of_unity(K, p, k);
    if (!z) break;
    out.k = k;
    out.zeta = z;
  }
  if (!out.zeta) out.zeta = NFElt::from_integer(K, 1);
  return out;
}

const char* power_answer_name(PowerAnswer a) {
  switch (a) {
    case PowerAnswer::Yes: return "yes";
    case PowerAnswer::No: return "no";
    case PowerAnswer::Undetermined: return "undetermined";
  }
  return "?";
}

GlobalPthPower is_global_pth_power(const NFElt& a, long p) {
  if (a.is_zero()) fail(ErrorCode::InvalidOperand, "zero is excluded");
  if (p < 3 || !is_prime(mpz_class(p))) fail(ErrorCode::InvalidOperand, "p must be an odd prime");
  const NumberFieldPtr& K = a.field();
  GlobalPthPower out;
  // scale to an algebraic integer: a' = a d^p
  mpz_class d = 1;
  for (Eigen::Index i = 0; i < a.coeffs().size(); ++i)
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.coeffs()(i).get_den_mpz_t());
  const NFElt a1 = a * pow(NFElt::from_integer(K, d), p);
  const mpz_class Na = norm(a1).get_num();
  const auto primes = aux_primes(*K, p, Na * d, 40);
  // residue-field obstruction
  for (long q : primes) {
    for (const FpPoly& h : aux_residue_factors(*K, q)) {
      const mpz_class Q1 = residue_order(q, degree(h));
      if (!mpz_divisible_ui_p(Q1.get_mpz_t(), p)) continue;
      ResidueField kf(q, h);
      FpPoly r = residue_of(a1, q, h);
      if (kf.pow(r, Q1 / p) != FpPoly{1}) {
        out.answer = PowerAnswer::No;
        out.certificate = PthPowerCertificate{q, h};
        return out;
      }
    }
  }
  // reconstruction at the prime with the fewest combinations
  long best_q = 0;
  double best_c = 0;
  for (long q : primes) {
    double c = 1;
    for (const FpPoly& h : aux_residue_factors(*K, q))
      if (mpz_divisible_ui_p(residue_order(q, degree(h)).get_mpz_t(), p)) c *= double(p);
    if (best_q == 0 || c < best_c) {
      best_q = q;
      best_c = c;
    }
  }
  if (best_c > kMaxCombinations) return out;
  const auto croots = complex_roots(K->poly());
  const mpz_class D = sqrt(abs(K->discriminant())) + 1;
  const double B = coordinate_factor(croots) * std::pow(max_conjugate(a1, croots), 1.0 / double(p));
  const mpz_class nb = ceil_mpz(B * 1.01 + 1) * D, db = D;
  const int N = precision_for(best_q, nb, db);
  AuxPrime A = make_aux(*K, best_q, N);
  std::mt19937_64 rng(0x5eed);
  std::vector<std::vector<ZPoly>> roots(A.rings.size());
  for (size_t i = 0; i < A.rings.size(); ++i) {
    const int f = degree(A.residue[i]);
    ResidueField kf(best_q, A.residue[i]);
    const mpz_class Q1 = residue_order(best_q, f);
    const ZPoly ai = image_mod(a1, A, i);
    FpPoly r0 = residue_pth_root(kf, residue_of(a1, best_q, A.residue[i]), p, Q1, rng);
    std::vector<FpPoly> rs = {r0};
    if (mpz_divisible_ui_p(Q1.get_mpz_t(), p)) {
      FpPoly z;
      for (;;) {
        FpPoly c;
        for (int j = 0; j < f; ++j) c.push_back(rng() % u64(best_q));
        trim(c);
        if (c.empty()) continue;
        z = kf.pow(c, Q1 / p);
        if (z != FpPoly{1}) break;
      }
      for (long j = 1; j < p; ++j) rs.push_back(kf.mul(rs.back(), z));
    }
    for (auto& r : rs) roots[i].push_back(lift_pth_root(A.rings[i], ai, zp_from_fp(r), p, best_q, N));
  }
  std::vector<size_t> sizes(roots.size()), idx(roots.size(), 0);
  for (size_t i = 0; i < roots.size(); ++i) sizes[i] = roots[i].size();
  const NFElt dinv = inverse(NFElt::from_integer(K, d));
  do {
    std::vector<ZPoly> parts(roots.size());
    for (size_t i = 0; i < roots.size(); ++i) parts[i] = roots[i][idx[i]];
    auto cand = reconstruct(K, A, parts, nb, db);
    if (cand && pow(*cand, p) == a1) {
      out.answer = PowerAnswer::Yes;
      out.witness = *cand * dinv;
      return out;
    }
  } while (odometer(idx, sizes, 0));
  return out;
}

MuOfL mu_of_L(const NumberFieldPtr& K, long p, const NFElt& alpha) {
  MuOfL out;
  GlobalPthPower self = is_global_pth_power(alpha, p);
  if (self.answer == PowerAnswer::Yes) fail(ErrorCode::DomainError, "alpha is a p-th power; K(alpha^(1/p)) = K");
  GlobalMu mu = global_mu_p(K, p);
  out.k_K = mu.k;
  out.k_L = mu.k;
  if (mu.k == 0) return out;
  NFElt zi = inverse(*mu.zeta);
  NFElt twist = alpha;
  for (long i = 1; i < p; ++i) {
    twist = twist * zi;
    GlobalPthPower r = is_global_pth_power(twist, p);
    if (r.answer == PowerAnswer::Yes) {
      out.globally_cyclotomic = true;
      out.k_L = mu.k + 1;
      return out;
    }
    if (r.answer == PowerAnswer::Undetermined) out.undetermined = true;
  }
  return out;
}

}  // namespace bp
