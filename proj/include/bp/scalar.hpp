#ifndef BP_SCALAR_HPP
#define BP_SCALAR_HPP

// GMP scalars inside Eigen dense containers.

#include <gmpxx.h>

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
    IsSigned = 1,
    RequireInitialization = 1
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    ReadCost = 6,
    AddCost = 300,
    MulCost = 300,
    IsSigned = 1,
    RequireInitialization = 1
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace bp {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ZMatrix = Matrix<mpz_class>;
using ZVector = Vector<mpz_class>;
using QMatrix = Matrix<mpq_class>;
using QVector = Vector<mpq_class>;

// p-adic valuation of an integer, capped at `cap` (also returned for 0).
int vp(const mpz_class& x, long p, int cap);

mpz_class pow_ui(long p, int k);

// Nonnegative representative of x mod m.
inline mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m);

bool is_prime(const mpz_class& n);

}  // namespace bp

#endif
