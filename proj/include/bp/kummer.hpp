#ifndef BP_KUMMER_HPP
#define BP_KUMMER_HPP

// Degree-p Kummer layers T = B(y), y^p = alpha, over a base local field B.
// Radical coordinates: vectors of length p*n_B, block j holding the base
// coefficient of y^j.

#include <optional>
#include <variant>

#include "bp/local_units.hpp"

namespace bp {

// alpha is a p-th power in the base; the extension is split.
struct SplitMarker {
  LocalElt root;
};

using KummerResult = std::variant<LocalFieldPtr, SplitMarker>;

// alpha must be integral and nonzero.
KummerResult make_kummer_tower(const LocalElt& alpha);

LocalElt embed(const LocalFieldPtr& tower, const LocalElt& x);
LocalElt kummer_root(const LocalFieldPtr& tower);
// Base element equal to x, or nullopt if x is not in the base.
std::optional<LocalElt> descend(const LocalElt& x);

// s(y) = zeta_p * y, identity on the base.
struct GaloisGenerator {
  LocalFieldPtr tower;
  LocalElt zeta_p;  // in the base
  ZMatrix action;   // on tower coordinates
  LocalElt operator()(const LocalElt& x) const;
};

GaloisGenerator galois_generator(const LocalFieldPtr& tower);

LocalElt relative_norm(const GaloisGenerator& s, const LocalElt& x);

// The cyclic group generated by zeta / s(zeta) for zeta generating mu(T).
struct CyclicSubgroup {
  long order = 1;
  std::optional<LocalElt> generator;
};

CyclicSubgroup w_one_minus_s(const GaloisGenerator& s);

}  // namespace bp

#endif
