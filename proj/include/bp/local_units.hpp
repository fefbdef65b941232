#ifndef BP_LOCAL_UNITS_HPP
#define BP_LOCAL_UNITS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bp/linalg.hpp"
#include "bp/local_field.hpp"

namespace bp {

// The finite group A = U^(1)/U^(m), m = floor(p e/(p-1)) + 1, presented by the
// generators 1 + beta(i,j) for 1 <= i < m and the relations p*g - digits(g^p).
struct FiltrationData {
  int m = 0;
  std::vector<std::pair<int, int>> labels;  // (level, residue index) per generator
  std::vector<LocalElt> gens, gens_inv;
  SmithForm snf;
  int nontrivial = 0;  // dim over F_p of A / A^p
};

// Minimal precision accepted by the p-th power test.
int pth_power_precision_floor(const LocalField& F);

// Digit vector of a principal unit with respect to FiltrationData::gens.
ZVector filtration_digits(const FiltrationData& fd, const LocalElt& u);

struct PthPowerResult {
  bool is_power = false;
  std::optional<LocalElt> witness;  // witness^p = u at the witness precision
};

PthPowerResult is_pth_power(const LocalElt& u);

struct MuGroup {
  LocalFieldPtr field;
  int k = 0;
  std::optional<LocalElt> zeta;
  long order() const;
};

MuGroup mu_p_part(const LocalFieldPtr& F);

// log(u) = value / p^shift.
struct LocalLog {
  LocalElt value;
  int shift = 0;
};

int local_log_loss(const LocalField& F, int precision);
// Series on v(u - 1) > e/(p-1), where log is an isometry.
LocalElt log_isometric(const LocalElt& u);
LocalLog log_principal(const LocalElt& u);
// Iwasawa log of a unit: log(u^(q-1)) / (q-1).
LocalLog log_unit(const LocalElt& u);
// Inverse of log_isometric, for v(x) > e/(p-1).
LocalElt exp_isometric(const LocalElt& x);

// Roots in the valuation ring of a polynomial with integral coefficients (low to high).
// Residue candidates are enumerated; simple residue roots are refined by Newton.
std::vector<LocalElt> integral_roots(const std::vector<LocalElt>& poly);

LocalElt evaluate(const std::vector<LocalElt>& poly, const LocalElt& x);

}  // namespace bp

#endif
