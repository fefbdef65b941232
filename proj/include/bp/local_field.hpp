#ifndef BP_LOCAL_FIELD_HPP
#define BP_LOCAL_FIELD_HPP

// Finite extensions of Q_p stored on an integral basis beta(i,j) = z^j * pi^i
// (0 <= i < e, 0 <= j < f), where z reduces to a generator of the residue field
// and pi is a uniformizer. Coordinates live in Z/p^N.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "bp/fp_poly.hpp"
#include "bp/padic.hpp"

namespace bp {

class ResidueField {
 public:
  ResidueField() = default;
  ResidueField(long p, FpPoly modulus);

  long prime() const { return long(F_.q); }
  int degree() const { return f_; }
  u64 size() const;
  const FpPoly& modulus() const { return modulus_; }
  const PrimeField& prime_field() const { return F_; }

  FpPoly reduce(const FpPoly& a) const { return fp_mod(F_, a, modulus_); }
  FpPoly add(const FpPoly& a, const FpPoly& b) const { return fp_add(F_, a, b); }
  FpPoly sub(const FpPoly& a, const FpPoly& b) const { return fp_sub(F_, a, b); }
  FpPoly mul(const FpPoly& a, const FpPoly& b) const { return fp_mulmod(F_, a, b, modulus_); }
  FpPoly inv(const FpPoly& a) const { return fp_invmod(F_, a, modulus_); }
  FpPoly pow(const FpPoly& a, const mpz_class& e) const { return fp_powmod(F_, a, e, modulus_); }
  FpPoly pth_root(const FpPoly& a) const;
  // The element with base-p digits of idx as coordinates.
  FpPoly element(u64 idx) const;
  // Coordinates padded to length f.
  std::vector<u64> coords(const FpPoly& a) const;

 private:
  PrimeField F_{2};
  FpPoly modulus_;
  int f_ = 0;
};

enum class FieldLevel { Base, Tower };

class LocalField;
using LocalFieldPtr = std::shared_ptr<const LocalField>;

struct TowerData {
  LocalFieldPtr base;
  ZVector alpha;        // base coordinates; y^p = alpha
  int e_rel = 1, f_rel = 1;
  ZMatrix embed;        // tower coords of the base basis, n x n_base
  ZVector y;            // tower coords of the Kummer root
  ZMatrix to_radical;   // radical coords = to_radical * x / p^radical_shift
  int radical_shift = 0;
  ZMatrix from_radical; // tower coords = from_radical * r (integral)
};

struct FiltrationData;

class LocalField {
 public:
  long p = 0;
  int precision = 0;
  int n = 0, e = 0, f = 0;
  FieldLevel level = FieldLevel::Base;
  ResidueField residue;
  std::vector<ZMatrix> mult;   // mult[a](:, b) = coords of beta_a * beta_b
  ZVector epsilon;             // pi^e = p * epsilon
  ZVector epsilon_inv;
  std::vector<mpz_class> poly; // base level: defining polynomial over Z/p^N, low to high
  ZVector generator;           // base level: coords of the root of poly
  std::optional<TowerData> tower;

  int index(int level_i, int j) const { return level_i * f + j; }
  mpz_class modulus() const { return pow_ui(p, precision); }

  const FiltrationData& filtration(const LocalFieldPtr& self) const;

 private:
  mutable std::once_flag filtration_once_;
  mutable std::shared_ptr<const FiltrationData> filtration_;
};

class LocalElt {
 public:
  LocalElt() = default;
  LocalElt(LocalFieldPtr field, ZVector coeffs, int precision);

  const LocalFieldPtr& field() const { return field_; }
  const LocalField& parent() const { return *field_; }
  const ZVector& coeffs() const { return c_; }
  int precision() const { return prec_; }
  long prime() const { return field_->p; }

  LocalElt operator-() const;
  friend LocalElt operator+(const LocalElt& a, const LocalElt& b);
  friend LocalElt operator-(const LocalElt& a, const LocalElt& b);
  friend LocalElt operator*(const LocalElt& a, const LocalElt& b);
  friend bool operator==(const LocalElt& a, const LocalElt& b);

 private:
  LocalFieldPtr field_;
  ZVector c_;
  int prec_ = 0;
};

LocalElt zero(const LocalFieldPtr& F);
LocalElt one(const LocalFieldPtr& F);
LocalElt from_integer(const LocalFieldPtr& F, const mpz_class& a);
LocalElt basis_element(const LocalFieldPtr& F, int level_i, int j);
LocalElt uniformizer(const LocalFieldPtr& F);
LocalElt lift_residue(const LocalFieldPtr& F, const FpPoly& r);

LocalElt with_precision(const LocalElt& x, int n);
LocalElt scale(const LocalElt& x, const mpz_class& c);
bool is_zero(const LocalElt& x);
// Normalized valuation (v(pi) = 1); kInfiniteValuation when zero at precision.
int valuation(const LocalElt& x);
// Reduction modulo the maximal ideal; needs valuation >= 0.
FpPoly residue(const LocalElt& x);
LocalElt inverse(const LocalElt& x);
LocalElt pow(const LocalElt& x, const mpz_class& e);
// x / pi^k for v(x) >= k; costs ceil(k/e) digits.
LocalElt divide_by_pi_power(const LocalElt& x, int k);
// x / p^s for v(x) >= s*e; costs s digits.
LocalElt divide_by_p_power(const LocalElt& x, int s);
LocalElt teichmuller(const LocalElt& x);
ZMatrix mult_matrix(const LocalElt& x);
// v_p of the norm to Q_p.
int norm_valuation(const LocalElt& x);

// Coordinates of products in a field's basis, reduced mod p^m (no precision bookkeeping).
ZVector raw_mul(const LocalField& F, const ZVector& a, const ZVector& b, const mpz_class& m);

// Absolute field Z_p[x]/(g). Requires a p-maximal presentation.
LocalFieldPtr make_base_field(long p, int precision, const std::vector<mpz_class>& poly);

}  // namespace bp

#endif
