#ifndef BP_PADIC_HPP
#define BP_PADIC_HPP

#include <climits>
#include <vector>

#include "bp/error.hpp"
#include "bp/scalar.hpp"

namespace bp {

// Marker returned by valuation() for values that are zero at the known precision.
inline constexpr int kInfiniteValuation = INT_MAX;

// An element of Z_p known modulo p^N.
class PAdic {
 public:
  PAdic(long p, int precision, const mpz_class& value);
  PAdic(long p, int precision, long value) : PAdic(p, precision, mpz_class(value)) {}

  // Rational with denominator prime to p.
  static PAdic from_rational(long p, int precision, const mpq_class& q);

  long prime() const { return p_; }
  int precision() const { return n_; }
  const mpz_class& value() const { return value_; }
  mpz_class modulus() const { return pow_ui(p_, n_); }

  bool is_zero() const { return value_ == 0; }
  PAdic with_precision(int n) const;

  PAdic operator-() const;
  PAdic& operator+=(const PAdic& b);
  PAdic& operator-=(const PAdic& b);
  PAdic& operator*=(const PAdic& b);

  friend PAdic operator+(PAdic a, const PAdic& b) { return a += b; }
  friend PAdic operator-(PAdic a, const PAdic& b) { return a -= b; }
  friend PAdic operator*(PAdic a, const PAdic& b) { return a *= b; }

  // Equality at the smaller of the two precisions.
  friend bool operator==(const PAdic& a, const PAdic& b);

 private:
  void coerce(const PAdic& b);

  long p_;
  int n_;
  mpz_class value_;
};

int valuation(const PAdic& a);
PAdic invert(const PAdic& a);
PAdic pow(const PAdic& a, const mpz_class& e);
PAdic teichmuller(const PAdic& a);

// Pessimistic digit loss charged to log/exp: floor(log_p N) + 1.
int log_precision_loss(long p, int n);

// Iwasawa logarithm on 1 + pZ_p. Result carries precision N - delta.
PAdic log_principal(const PAdic& u);
// Exponential on pZ_p. Result carries precision N - delta.
PAdic exp_principal(const PAdic& x);

// Coefficients low to high.
using PAdicPoly = std::vector<PAdic>;

PAdic evaluate(const PAdicPoly& f, const PAdic& x);
PAdicPoly derivative(const PAdicPoly& f);

// Newton iteration from x0; needs v(f(x0)) > 2 v(f'(x0)).
// The root is returned at precision N - v(f'(x0)).
PAdic hensel_lift(const PAdicPoly& f, const PAdic& x0);

}  // namespace bp

#endif
