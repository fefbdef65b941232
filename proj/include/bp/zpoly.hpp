#ifndef BP_ZPOLY_HPP
#define BP_ZPOLY_HPP
// Integer polynomials, low to high. A modulus of 0 means exact arithmetic over Z.
#include <vector>

#include "bp/fp_poly.hpp"
#include "bp/scalar.hpp"

namespace bp {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a);
int zdegree(const ZPoly& a);
ZPoly zp_reduce(const ZPoly& a, const mpz_class& m);
// Coefficients in (-m/2, m/2].
ZPoly zp_symmetric(const ZPoly& a, const mpz_class& m);
ZPoly zp_add(const ZPoly& a, const ZPoly& b, const mpz_class& m);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const mpz_class& m);
ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const mpz_class& m);
ZPoly zp_scale(const ZPoly& a, const mpz_class& c, const mpz_class& m);
// Division by a monic polynomial.
void zp_divmod(const ZPoly& a, const ZPoly& b, const mpz_class& m, ZPoly& quo, ZPoly& rem);
ZPoly zp_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m);
ZPoly zp_derivative(const ZPoly& a);
mpz_class zp_eval(const ZPoly& a, const mpz_class& x, const mpz_class& m);
ZPoly zp_from_fp(const FpPoly& a);

// Lifts a factorization f = prod g_i (mod q), g_i monic and pairwise coprime, to mod q^n.
std::vector<ZPoly> hensel_factor(const ZPoly& f, const std::vector<FpPoly>& factors, long q, int n);

// Residue ring (Z/m)[x]/(g) for monic g.
struct ZQuotient {
  ZPoly g;
  mpz_class m;
  ZPoly reduce(const ZPoly& a) const { return zp_mod(a, g, m); }
  ZPoly mul(const ZPoly& a, const ZPoly& b) const { return zp_mod(zp_mul(a, b, m), g, m); }
  ZPoly pow(ZPoly a, mpz_class e) const;
  // Newton inversion from the inverse modulo (q, g); m must be a power of q.
  ZPoly inverse(const ZPoly& a, long q) const;
};

}  // namespace bp

#endif
