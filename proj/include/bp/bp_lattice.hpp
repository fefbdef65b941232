#ifndef BP_BP_LATTICE_HPP
#define BP_BP_LATTICE_HPP
// Iwasawa logarithm on the p-adic completions of K, Z_p-lattices in sum_{v|p} K_v and their
// indices, and the orders entering the fixed-point formula for the Bertrandias-Payan module.
#include <optional>
#include <string>
#include <vector>

#include "bp/capitulation.hpp"
#include "bp/linalg.hpp"

namespace bp {

// Z_p-span of the columns of gens / p^shift; entries of gens are known modulo p^precision.
struct PLattice {
  long p = 0;
  ZMatrix gens;
  int shift = 0;
  int precision = 0;
  int dim() const { return int(gens.rows()); }
};

// Same lattice with gens rescaled to the given shift (>= current shift).
PLattice rescale(const PLattice& a, int shift);
// Columns of both, at a common shift.
PLattice concat(const PLattice& a, const PLattice& b);
// Reduced basis of the span; rank = number of columns.
PLattice lattice_basis(const PLattice& a);

// Per-place Iwasawa log, as one vector in the concatenated completion coordinates.
struct LogVector {
  std::vector<LocalElt> parts;
  int shift = 0;
  int precision() const;
  PLattice column(long p) const;
};
LogVector log_embedding(const std::vector<PlaceAboveP>& places, const NFElt& a);

// log(U_K), U_K the product of the local unit groups at p: an n x n basis.
PLattice log_unit_lattice(const std::vector<PlaceAboveP>& places);

struct LatticeIndexResult {
  int exponent = 0;  // index = p^exponent
  mpz_class index;
  bool stable = true;
};
// (A : B) for B contained in A of the same rank.
LatticeIndexResult lattice_index(const PLattice& A, const PLattice& B);

// Coordinates on sum K_v modulo the Q_p-span of the given unit logs.
struct QuotientFrame {
  long p = 0;
  ZMatrix projection;  // (n - r) x n
  int rank_units = 0;
  int precision = 0;
};
QuotientFrame quotient_frame(const PLattice& unit_logs);
PLattice project(const QuotientFrame& fr, const PLattice& a);

// Prime ideal of K given as the place above q with the given index.
struct IdealRef {
  long q = 0;
  int place_index = 0;
  int exponent = 1;
};
struct ClassGenerator {
  std::string name;
  std::vector<IdealRef> ideal;  // b_i
  int order = 1;                // m_i
  NFElt generator;              // b_i^m_i = (generator)
};
using ClassGroupData = std::vector<ClassGenerator>;
using UnitData = std::vector<NFElt>;

// An ideal prime to p written as prod b_i^k_i * (principal).
struct IdealDesc {
  std::vector<int> class_exponents;
  std::optional<NFElt> principal;
};

struct Signature {
  int r1 = 0, r2 = 0;
  int unit_rank() const { return r1 + r2 - 1; }
};
Signature signature(const ZPoly& f);

void verify_class_data(const ClassGroupData& cls, long p);
void verify_unit_data(const NumberFieldPtr& K, const UnitData& units);

// Unit logs as an n x r lattice.
PLattice unit_log_lattice(const std::vector<PlaceAboveP>& places, const UnitData& units);
// Log of an ideal, reduced into the quotient frame.
PLattice log_ideal(const std::vector<PlaceAboveP>& places, const QuotientFrame& fr, const IdealDesc& a,
                   const ClassGroupData& cls);

struct TamePrime {
  int e_q = 1;  // ramification index in L/K
  IdealDesc ideal;
};
struct FixedPointFactor {
  int numerator_exponent = 0;  // v_p(prod e_q)
  int index_exponent = 0;
  int exponent = 0;            // factor = p^exponent
};
FixedPointFactor fixed_point_factor(const NumberFieldPtr& K, long p, int N, const std::vector<TamePrime>& tame,
                                    const ClassGroupData& cls, const UnitData& units);

// |Im psi| from the report's fields; nullopt when the report leaves it undecided.
std::optional<long> im_psi_order(const CapitulationReport& r);

struct PPowerInterval {
  int lo = 0, hi = 0;  // exponents; exact when lo == hi
};
PPowerInterval bp_fixed_points_bounds(int factor_exp, int bp_K_exp, long im_psi, long p, bool h1_quotient_trivial);

// Exponent of the torsion of log(U_K) / Z_p log(E_K) (trivial class group case).
int bp_order_trivial_class(const NumberFieldPtr& K, long p, const UnitData& units, int N);

}  // namespace bp

#endif
