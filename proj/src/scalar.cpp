#include "bp/scalar.hpp"

#include "bp/error.hpp"

namespace bp {

int vp(const mpz_class& x, long p, int cap) {
  if (x == 0) return cap;
  mpz_class t = x;
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

mpz_class pow_ui(long p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k < 0 ? 0 : k);
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    fail(ErrorCode::NotInvertible, "element is not invertible");
  return r;
}

bool is_prime(const mpz_class& n) {
  return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

}  // namespace bp
