#include "bp/number_field.hpp"

#include <numeric>

#include "bp/linalg.hpp"

namespace bp {

namespace {

QVector canonical(const QVector& v) {
  QVector r = v;
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i).canonicalize();
  return r;
}

// a*b mod f over Q
QVector poly_mulmod(const QVector& a, const QVector& b, const ZPoly& f) {
  const int n = int(f.size()) - 1;
  std::vector<mpq_class> t(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0) continue;
    for (int j = 0; j < n; ++j) t[i + j] += a(i) * b(j);
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    if (t[d] == 0) continue;
    for (int j = 0; j < n; ++j) t[d - n + j] -= t[d] * f[j];
    t[d] = 0;
  }
  QVector r(n);
  for (int i = 0; i < n; ++i) r(i) = t[i];
  return canonical(r);
}

// Solves M x = b over Q for invertible M.
QVector solve_rational(QMatrix M, QVector b) {
  const int n = int(M.rows());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (M(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorCode::NotInvertible, "zero has no inverse in K");
    M.row(c).swap(M.row(piv));
    std::swap(b(c), b(piv));
    for (int r = 0; r < n; ++r) {
      if (r == c || M(r, c) == 0) continue;
      mpq_class t = M(r, c) / M(c, c);
      M.row(r) -= t * M.row(c);
      b(r) -= t * b(c);
    }
  }
  QVector x(n);
  for (int i = 0; i < n; ++i) x(i) = b(i) / M(i, i);
  return canonical(x);
}

mpz_class lcm_denominator(const QVector& c) {
  mpz_class d = 1;
  for (Eigen::Index i = 0; i < c.size(); ++i) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c(i).get_den_mpz_t());
  return d;
}

// Subset sums of factor degrees that give a proper factor of degree <= n/2.
std::vector<bool> candidate_degrees(const std::vector<int>& degs, int n) {
  std::vector<bool> s(n + 1, false);
  s[0] = true;
  for (int d : degs)
    for (int t = n; t >= d; --t)
      if (s[t - d]) s[t] = true;
  std::vector<bool> out(n + 1, false);
  for (int t = 1; t <= n / 2; ++t) out[t] = s[t];
  return out;
}

void check_irreducible(const ZPoly& f, const mpz_class& disc) {
  const int n = int(f.size()) - 1;
  if (n <= 1) return;
  std::vector<bool> allowed(n + 1, true);
  allowed[0] = false;
  long best_q = 0;
  std::vector<FpPoly> best;
  int used = 0;
  for (long q = 3; used < 10; q += 2) {
    if (!is_prime(mpz_class(q)) || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
    ++used;
    PrimeField F{u64(q)};
    auto fs = fp_factor(F, fp_from_z(F, f));
    std::vector<int> degs;
    std::vector<FpPoly> facs;
    for (auto& [h, mult] : fs)
      for (int i = 0; i < mult; ++i) {
        degs.push_back(degree(h));
        facs.push_back(h);
      }
    auto c = candidate_degrees(degs, n);
    for (int t = 0; t <= n; ++t) allowed[t] = allowed[t] && c[t];
    if (best_q == 0 || facs.size() < best.size()) {
      best_q = q;
      best = facs;
    }
  }
  bool any = false;
  for (int t = 1; t <= n / 2; ++t) any = any || allowed[t];
  if (!any) return;
  // recombine lifted factors against a coefficient bound
  mpz_class norm2 = 0;
  for (auto& c : f) norm2 += c * c;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= n;
  int N = 1;
  mpz_class M = best_q;
  while (M <= 2 * bound) {
    M *= best_q;
    ++N;
  }
  auto lifted = hensel_factor(f, best, best_q, N);
  const int r = int(lifted.size());
  for (unsigned mask = 1; mask < (1u << r) - 1; ++mask) {
    int d = 0;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) d += degree(best[i]);
    if (d > n / 2 || !allowed[d]) continue;
    ZPoly g = {1};
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) g = zp_mul(g, lifted[i], M);
    g = zp_symmetric(g, M);
    ZPoly quo, rem;
    zp_divmod(f, g, 0, quo, rem);
    if (rem.empty()) fail(ErrorCode::NotAField, "defining polynomial has a factor of degree " + std::to_string(d));
  }
}

}  // namespace

NumberFieldPtr NumberField::create(const ZPoly& f_in) {
  ZPoly f = f_in;
  ztrim(f);
  if (f.size() < 2) fail(ErrorCode::InvalidOperand, "defining polynomial must have degree >= 1");
  if (f.back() != 1) fail(ErrorCode::InvalidOperand, "defining polynomial must be monic");
  if (f.size() > 9) fail(ErrorCode::InvalidOperand, "degree above 8 is not supported");
  auto K = std::make_shared<NumberField>();
  K->f_ = f;
  K->n_ = int(f.size()) - 1;
  // disc = (-1)^(n(n-1)/2) N(f'(theta))
  if (K->n_ == 1) {
    K->disc_ = 1;
  } else {
    ZPoly df = zp_derivative(f);
    QVector c = QVector::Zero(K->n_);
    for (size_t i = 0; i < df.size(); ++i) c(i) = df[i];
    NumberFieldPtr tmp = K;
    mpq_class N = norm(NFElt(tmp, c));
    K->disc_ = N.get_num();
    if ((K->n_ * (K->n_ - 1) / 2) % 2) K->disc_ = -K->disc_;
  }
  if (K->disc_ == 0) fail(ErrorCode::NotAField, "defining polynomial is not squarefree");
  check_irreducible(f, K->disc_);
  return K;
}

std::vector<PlaceAboveP> NumberField::places_above(long q, int N) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = places_.find({q, N});
    if (it != places_.end()) return it->second;
  }
  if (!is_prime(mpz_class(q))) fail(ErrorCode::InvalidOperand, "places_above needs a prime");
  PrimeField F{u64(q)};
  auto fs = fp_factor(F, fp_from_z(F, f_));
  std::vector<FpPoly> blocks;
  for (auto& [h, mult] : fs) {
    FpPoly b = {1};
    for (int i = 0; i < mult; ++i) b = fp_mul(F, b, h);
    blocks.push_back(b);
  }
  auto lifted = hensel_factor(f_, blocks, q, N);
  std::vector<PlaceAboveP> out;
  int total = 0;
  for (size_t i = 0; i < lifted.size(); ++i) {
    PlaceAboveP v;
    v.q = q;
    v.index = int(i);
    v.factor = lifted[i];
    try {
      v.completion = make_base_field(q, N, lifted[i]);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DomainError)
        fail(ErrorCode::NotMonogenicAtQ,
             "Z[theta] is not maximal at " + std::to_string(q) + "; supply a q-maximal defining polynomial");
      throw;
    }
    v.e = v.completion->e;
    v.f = v.completion->f;
    v.theta = v.completion->generator;
    total += v.e * v.f;
    out.push_back(v);
  }
  if (total != n_) fail(ErrorCode::NotMonogenicAtQ, "local degrees do not sum to the global degree");
  std::lock_guard<std::mutex> lock(mu_);
  places_[{q, N}] = out;
  return out;
}

NFElt::NFElt(NumberFieldPtr K, QVector coeffs) : K_(std::move(K)) {
  if (coeffs.size() != K_->degree()) fail(ErrorCode::InvalidOperand, "coefficient count differs from the degree");
  c_ = canonical(coeffs);
}

NFElt NFElt::from_integer(NumberFieldPtr K, const mpz_class& a) {
  QVector c = QVector::Zero(K->degree());
  c(0) = a;
  return NFElt(std::move(K), c);
}

NFElt NFElt::parse(NumberFieldPtr K, const std::vector<std::string>& coeffs) {
  if (int(coeffs.size()) > K->degree())
    fail(ErrorCode::InvalidOperand, "too many coefficients for the field degree");
  QVector c = QVector::Zero(K->degree());
  for (size_t i = 0; i < coeffs.size(); ++i) {
    try {
      mpq_class x(coeffs[i], 10);
      if (x.get_den() == 0) throw std::invalid_argument("zero denominator");
      x.canonicalize();
      c(i) = x;
    } catch (const std::invalid_argument&) {
      fail(ErrorCode::InvalidOperand, "not a rational number: \"" + coeffs[i] + "\"");
    }
  }
  return NFElt(std::move(K), c);
}

bool NFElt::is_zero() const {
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    if (c_(i) != 0) return false;
  return true;
}

std::string NFElt::to_string() const {
  std::string s = "[";
  for (Eigen::Index i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_(i).get_str();
  }
  return s + "]";
}

namespace {

void same_field(const NFElt& a, const NFElt& b) {
  if (a.field() != b.field()) fail(ErrorCode::InvalidOperand, "elements of different number fields");
}

}  // namespace

NFElt operator+(const NFElt& a, const NFElt& b) {
  same_field(a, b);
  return NFElt(a.K_, a.c_ + b.c_);
}

NFElt operator-(const NFElt& a, const NFElt& b) {
  same_field(a, b);
  return NFElt(a.K_, a.c_ - b.c_);
}

NFElt operator*(const NFElt& a, const NFElt& b) {
  same_field(a, b);
  return NFElt(a.K_, poly_mulmod(a.c_, b.c_, a.K_->poly()));
}

bool operator==(const NFElt& a, const NFElt& b) {
  same_field(a, b);
  return a.c_ == b.c_;
}

QMatrix mult_matrix(const NFElt& a) {
  const int n = a.field()->degree();
  QMatrix M(n, n);
  QVector col = a.coeffs();
  for (int j = 0; j < n; ++j) {
    M.col(j) = col;
    QVector x = QVector::Zero(n);
    if (n > 1) {
      x(1) = 1;
      col = poly_mulmod(col, x, a.field()->poly());
    }
  }
  return M;
}

NFElt inverse(const NFElt& a) {
  if (a.is_zero()) fail(ErrorCode::NotInvertible, "zero has no inverse in K");
  QVector e = QVector::Zero(a.field()->degree());
  e(0) = 1;
  return NFElt(a.field(), solve_rational(mult_matrix(a), e));
}

NFElt pow(const NFElt& a, long e) {
  NFElt base = e < 0 ? inverse(a) : a;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  NFElt r = NFElt::from_integer(a.field(), 1);
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

mpq_class norm(const NFElt& a) { return determinant(mult_matrix(a)); }

std::vector<mpq_class> charpoly(const NFElt& a) {
  QVector c = charpoly(mult_matrix(a));
  return std::vector<mpq_class>(c.data(), c.data() + c.size());
}

bool is_integral(const NFElt& a) {
  for (auto& c : charpoly(a))
    if (c.get_den() != 1) return false;
  return true;
}

ScaledLocal complete_at_scaled(const PlaceAboveP& v, const NFElt& a) {
  const LocalFieldPtr& F = v.completion;
  const mpz_class d = lcm_denominator(a.coeffs());
  mpz_class u = d;
  int s = 0;
  while (mpz_divisible_ui_p(u.get_mpz_t(), v.q)) {
    u /= v.q;
    ++s;
  }
  LocalElt theta(F, v.theta, F->precision);
  LocalElt acc = zero(F);
  const QVector& c = a.coeffs();
  for (Eigen::Index i = c.size(); i-- > 0;) {
    mpz_class A = c(i).get_num() * (d / c(i).get_den());
    acc = acc * theta + from_integer(F, A);
  }
  if (u != 1) acc = acc * inverse(from_integer(F, u));
  return {acc, s};
}

LocalElt complete_at(const PlaceAboveP& v, const NFElt& a) {
  ScaledLocal s = complete_at_scaled(v, a);
  if (s.shift == 0) return s.value;
  if (valuation(s.value) < s.shift * v.e)
    fail(ErrorCode::DomainError, "element is not integral at this place");
  return divide_by_p_power(s.value, s.shift);
}

int place_valuation(const PlaceAboveP& v, const NFElt& a) {
  if (a.is_zero()) fail(ErrorCode::InvalidOperand, "valuation of zero");
  ScaledLocal s = complete_at_scaled(v, a);
  int val = valuation(s.value);
  if (val == kInfiniteValuation) fail(ErrorCode::PrecisionExhausted, "valuation exceeds working precision");
  return val - v.e * s.shift;
}

namespace {

// Trial division; a surviving cofactor below bound^2 is prime.
std::map<mpz_class, int> trial_factor(mpz_class n, long bound) {
  std::map<mpz_class, int> out;
  n = abs(n);
  for (long d = 2; d <= bound && mpz_class(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      out[d]++;
      n /= d;
    }
  }
  if (n > 1) {
    if (n > mpz_class(bound) * bound)
      fail(ErrorCode::IncompleteFactorization, "cofactor " + n.get_str() + " survives trial division");
    out[n]++;
  }
  return out;
}

}  // namespace

IdealFactorization principal_ideal_factorization(const NFElt& a, long trial_bound) {
  if (a.is_zero()) fail(ErrorCode::InvalidOperand, "the zero ideal has no factorization");
  const int n = a.field()->degree();
  std::map<mpz_class, int> primes;
  if (is_integral(a)) {
    primes = trial_factor(norm(a).get_num(), trial_bound);
  } else {
    const mpz_class d = lcm_denominator(a.coeffs());
    mpq_class Nd = norm(a * NFElt::from_integer(a.field(), d));
    primes = trial_factor(Nd.get_num(), trial_bound);
    for (auto& [q, k] : trial_factor(d, trial_bound)) primes[q] += k * n;
  }
  IdealFactorization out;
  for (auto& [q, k] : primes) {
    if (!q.fits_slong_p()) fail(ErrorCode::IncompleteFactorization, "prime too large: " + q.get_str());
    const int N = 2 * k + 20;
    for (const PlaceAboveP& v : a.field()->places_above(q.get_si(), N)) {
      int e = place_valuation(v, a);
      if (e != 0) out.factors.push_back({v, e});
    }
  }
  return out;
}

const char* kummer_ramification_name(KummerRamification r) {
  switch (r) {
    case KummerRamification::PRamifiedUnitIdealAtP: return "p-ramified (unit ideal at p)";
    case KummerRamification::PRamifiedWithPPart: return "p-ramified (with p-part)";
    case KummerRamification::NotPRamified: return "not p-ramified";
  }
  return "?";
}

KummerRamification is_p_ramified_kummer(const NFElt& a, long p, long trial_bound) {
  IdealFactorization fz = principal_ideal_factorization(a, trial_bound);
  bool p_part = false;
  for (auto& f : fz.factors) {
    if (f.place.q == p)
      p_part = true;
    else if (f.exponent % p != 0)
      return KummerRamification::NotPRamified;
  }
  return p_part ? KummerRamification::PRamifiedWithPPart : KummerRamification::PRamifiedUnitIdealAtP;
}

}  // namespace bp
