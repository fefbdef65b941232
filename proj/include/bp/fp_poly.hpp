#ifndef BP_FP_POLY_HPP
#define BP_FP_POLY_HPP

// Dense polynomials over a prime field F_q with q < 2^63.

#include <cstdint>
#include <utility>
#include <vector>

#include "bp/scalar.hpp"

namespace bp {

using u64 = std::uint64_t;

struct PrimeField {
  u64 q;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= q ? s - q : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q - b; }
  u64 neg(u64 a) const { return a ? q - a : 0; }
  u64 mul(u64 a, u64 b) const { return u64((unsigned __int128)a * b % q); }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  u64 reduce(const mpz_class& x) const;
};

// Coefficients low to high; the zero polynomial is empty.
using FpPoly = std::vector<u64>;

void trim(FpPoly& f);
inline int degree(const FpPoly& f) { return int(f.size()) - 1; }
FpPoly fp_add(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_scale(const PrimeField& F, const FpPoly& a, u64 c);
void fp_divmod(const PrimeField& F, const FpPoly& a, const FpPoly& b, FpPoly& quo, FpPoly& rem);
FpPoly fp_mod(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_div(const PrimeField& F, const FpPoly& a, const FpPoly& b);
FpPoly fp_monic(const PrimeField& F, const FpPoly& a);
FpPoly fp_gcd(const PrimeField& F, FpPoly a, FpPoly b);
// s, t with s*a + t*b = gcd (monic).
FpPoly fp_xgcd(const PrimeField& F, const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t);
FpPoly fp_derivative(const PrimeField& F, const FpPoly& a);
FpPoly fp_mulmod(const PrimeField& F, const FpPoly& a, const FpPoly& b, const FpPoly& m);
FpPoly fp_powmod(const PrimeField& F, const FpPoly& a, const mpz_class& e, const FpPoly& m);
// Inverse modulo m; throws NotInvertible if gcd != 1.
FpPoly fp_invmod(const PrimeField& F, const FpPoly& a, const FpPoly& m);
u64 fp_eval(const PrimeField& F, const FpPoly& a, u64 x);

// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<FpPoly, int>> fp_factor(const PrimeField& F, const FpPoly& f);
bool fp_is_irreducible(const PrimeField& F, const FpPoly& f);

// Reduction of an integer polynomial.
FpPoly fp_from_z(const PrimeField& F, const std::vector<mpz_class>& f);

}  // namespace bp

#endif
