#ifndef BP_LINALG_HPP
#define BP_LINALG_HPP

#include <optional>
#include <vector>

#include "bp/error.hpp"
#include "bp/scalar.hpp"

namespace bp {

// Smith form over Z/p^m: u * a * v = diag(p^d_0, p^d_1, ...), d_i = m meaning zero.
struct SmithForm {
  long p = 0;
  int m = 0;
  ZMatrix u, u_inv, v, v_inv;
  std::vector<int> diag;
  int rank = 0;
  int max_valuation() const;  // largest finite d_i, 0 if none
};

SmithForm smith_form(const ZMatrix& a, long p, int m);
std::vector<int> elementary_divisor_valuations(const ZMatrix& a, long p, int m);

// x with a * x = b for square nonsingular a. Returns nullopt when the solution is
// not p-integral. `prec` receives the number of trusted digits of x.
std::optional<ZMatrix> solve_integral(const ZMatrix& a, const ZMatrix& b, long p, int m,
                                      int* prec = nullptr);

// p^shift * a^{-1}, valid modulo p^(m - shift).
ZMatrix inverse_scaled(const ZMatrix& a, long p, int m, int* shift);

// Reduce entries modulo p^m.
ZMatrix reduce(const ZMatrix& a, const mpz_class& modulus);

// Exact determinant over a field scalar (mpq_class).
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& a_in) {
  using S = typename Derived::Scalar;
  Matrix<S> a = a_in;
  const Eigen::Index n = a.rows();
  S det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return S(0);
    if (piv != c) {
      a.row(piv).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      S f = a(r, c) / a(c, c);
      for (Eigen::Index k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return det;
}

// Characteristic polynomial det(xI - a), coefficients low to high (Faddeev-LeVerrier).
template <typename Derived>
Vector<typename Derived::Scalar> charpoly(const Eigen::MatrixBase<Derived>& a) {
  using S = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  Vector<S> c(n + 1);
  c(n) = 1;
  Matrix<S> m = Matrix<S>::Zero(n, n);
  Matrix<S> id = Matrix<S>::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = (a * m).eval() + c(n - k + 1) * id;
    S tr = (a * m).trace();
    c(n - k) = -tr / S(k);
  }
  return c;
}

}  // namespace bp

#endif
