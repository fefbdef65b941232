#ifndef BP_NUMBER_FIELD_HPP
#define BP_NUMBER_FIELD_HPP
// K = Q[x]/(f) for monic integral irreducible f of degree <= 8, elements on the power basis.
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bp/local_units.hpp"
#include "bp/zpoly.hpp"

namespace bp {

struct PlaceAboveP {
  long q = 0;
  int index = 0;          // position among the places above q
  ZPoly factor;           // local factor of f over Z_q, mod q^N
  int e = 1, f = 1;
  LocalFieldPtr completion;
  ZVector theta;          // image of the generator in the completion
};

class NumberField;
using NumberFieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  // Verifies irreducibility; raises NotAField otherwise.
  static NumberFieldPtr create(const ZPoly& f);
  const ZPoly& poly() const { return f_; }
  int degree() const { return n_; }
  const mpz_class& discriminant() const { return disc_; }
  // Places above q at precision N (cached).
  std::vector<PlaceAboveP> places_above(long q, int N) const;

 private:
  ZPoly f_;
  int n_ = 0;
  mpz_class disc_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<long, int>, std::vector<PlaceAboveP>> places_;
};

class NFElt {
 public:
  NFElt() = default;
  NFElt(NumberFieldPtr K, QVector coeffs);
  static NFElt from_integer(NumberFieldPtr K, const mpz_class& a);
  // Power-basis coordinates given as rational strings such as "-5269/178".
  static NFElt parse(NumberFieldPtr K, const std::vector<std::string>& coeffs);
  const NumberFieldPtr& field() const { return K_; }
  const QVector& coeffs() const { return c_; }
  bool is_zero() const;
  std::string to_string() const;

  friend NFElt operator+(const NFElt& a, const NFElt& b);
  friend NFElt operator-(const NFElt& a, const NFElt& b);
  friend NFElt operator*(const NFElt& a, const NFElt& b);
  friend bool operator==(const NFElt& a, const NFElt& b);

 private:
  NumberFieldPtr K_;
  QVector c_;
};

NFElt inverse(const NFElt& a);
NFElt pow(const NFElt& a, long e);
QMatrix mult_matrix(const NFElt& a);
mpq_class norm(const NFElt& a);
// Characteristic polynomial over Q, low to high.
std::vector<mpq_class> charpoly(const NFElt& a);
bool is_integral(const NFElt& a);

struct ScaledLocal {
  LocalElt value;  // image = value / q^shift
  int shift = 0;
};
ScaledLocal complete_at_scaled(const PlaceAboveP& v, const NFElt& a);
// Image of an element integral at the place.
LocalElt complete_at(const PlaceAboveP& v, const NFElt& a);
// Normalized valuation at the place.
int place_valuation(const PlaceAboveP& v, const NFElt& a);

struct IdealFactor {
  PlaceAboveP place;
  int exponent = 0;
};
struct IdealFactorization {
  std::vector<IdealFactor> factors;
};
constexpr long kDefaultTrialBound = 1000000;
IdealFactorization principal_ideal_factorization(const NFElt& a, long trial_bound = kDefaultTrialBound);

enum class KummerRamification { PRamifiedUnitIdealAtP, PRamifiedWithPPart, NotPRamified };
const char* kummer_ramification_name(KummerRamification r);
KummerRamification is_p_ramified_kummer(const NFElt& a, long p, long trial_bound = kDefaultTrialBound);

struct GlobalMu {
  int k = 0;
  std::optional<NFElt> zeta;  // generator of order p^k
};
GlobalMu global_mu_p(const NumberFieldPtr& K, long p);

enum class PowerAnswer { Yes, No, Undetermined };
const char* power_answer_name(PowerAnswer a);
struct PthPowerCertificate {
  long q = 0;        // auxiliary prime
  FpPoly factor;     // residue factor of f mod q where a is not a p-th power
};
struct GlobalPthPower {
  PowerAnswer answer = PowerAnswer::Undetermined;
  std::optional<NFElt> witness;
  std::optional<PthPowerCertificate> certificate;
};
GlobalPthPower is_global_pth_power(const NFElt& a, long p);

struct MuOfL {
  int k_K = 0, k_L = 0;      // exponents of the p-parts
  bool globally_cyclotomic = false;
  bool undetermined = false;
};
MuOfL mu_of_L(const NumberFieldPtr& K, long p, const NFElt& alpha);

}  // namespace bp

#endif
