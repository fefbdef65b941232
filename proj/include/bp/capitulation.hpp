#ifndef BP_CAPITULATION_HPP
#define BP_CAPITULATION_HPP
// Injectivity of the capitulation map for a degree-p Kummer layer L = K(alpha^(1/p)).
#include <optional>
#include <string>
#include <vector>

#include "bp/kummer.hpp"
#include "bp/number_field.hpp"

namespace bp {

enum class PlaceKind { Split, NonSplitLocCyclotomic, NonSplitNotLocCyclotomic };
const char* place_kind_name(PlaceKind k);

struct PlaceClassification {
  PlaceKind kind = PlaceKind::Split;
  int mu_Kv = 0, mu_Lw = 0;          // exponents of the p-parts of the local roots of unity
  int e_rel = 1, f_rel = 1;          // of L_w / K_v
  std::optional<LocalElt> split_root; // root of alpha * q^(p*shift) when Split
  int shift = 0;
  std::optional<int> w_one_minus_s;  // order of W^(1-s) when the layer is Galois over K_v
  // alpha = zeta^xi_exponent * u^p locally; set when verified
  std::optional<int> xi_exponent;
};

PlaceClassification classify_place(const PlaceAboveP& v, const NFElt& alpha, long p);
long h1_order(const PlaceClassification& c, long p);

enum class Verdict { Injective, NonInjective, Undetermined };
const char* verdict_name(Verdict v);

struct PlaceReport {
  long q = 0;
  int index = 0, e = 1, f = 1;
  PlaceClassification c;
  long h1 = 1;
};

struct CapitulationReport {
  long p = 0;
  ZPoly field_poly;
  std::string alpha;
  int precision = 0;
  long mu_K = 1, mu_L = 1;  // orders of the p-parts
  bool globally_cyclotomic = false;
  bool mu_undetermined = false;
  std::optional<KummerRamification> ramification;
  std::vector<PlaceReport> places;
  long kernel_lo = 1, kernel_hi = 1;  // kernel order, or the interval it lies in
  Verdict verdict = Verdict::Undetermined;
  std::vector<std::string> caveats;
};

inline constexpr const char* kLeopoldtCaveat = "Leopoldt conjecture assumed for K and L at p";

struct KernelInputs {
  long p = 0;
  long mu_K = 1;
  bool globally_cyclotomic = false;
  bool mu_undetermined = false;
  std::optional<KummerRamification> ramification;
  std::vector<PlaceKind> kinds;
};
// Returns {lo, hi}; lo == hi when decided.
std::pair<long, long> kernel_order(const KernelInputs& in, std::vector<std::string>* caveats = nullptr);

// Single run at precision N.
CapitulationReport diagnose_at(const NumberFieldPtr& K, long p, const NFElt& alpha, int N);
// Runs at N and N + 20 and fails loudly if the verdicts differ.
CapitulationReport diagnose(const NumberFieldPtr& K, long p, const NFElt& alpha, int N);

}  // namespace bp

#endif
