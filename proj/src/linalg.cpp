#include "bp/linalg.hpp"

#include <algorithm>

namespace bp {

int SmithForm::max_valuation() const {
  int r = 0;
  for (int d : diag)
    if (d < m) r = std::max(r, d);
  return r;
}

ZMatrix reduce(const ZMatrix& a, const mpz_class& modulus) {
  ZMatrix r(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r(i, j) = mod(a(i, j), modulus);
  return r;
}

SmithForm smith_form(const ZMatrix& a, long p, int m) {
  const mpz_class pm = pow_ui(p, m);
  const Eigen::Index rows = a.rows(), cols = a.cols();
  SmithForm s;
  s.p = p;
  s.m = m;
  ZMatrix b = reduce(a, pm);
  s.u = ZMatrix::Identity(rows, rows);
  s.u_inv = ZMatrix::Identity(rows, rows);
  s.v = ZMatrix::Identity(cols, cols);
  s.v_inv = ZMatrix::Identity(cols, cols);
  const Eigen::Index k = std::min(rows, cols);
  for (Eigen::Index t = 0; t < k; ++t) {
    int best = m;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = t; i < rows && best > 0; ++i)
      for (Eigen::Index j = t; j < cols; ++j) {
        if (b(i, j) == 0) continue;
        int v = vp(b(i, j), p, m);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) {
      for (Eigen::Index r = t; r < k; ++r) s.diag.push_back(m);
      break;
    }
    if (bi != t) {
      b.row(bi).swap(b.row(t));
      s.u.row(bi).swap(s.u.row(t));
      s.u_inv.col(bi).swap(s.u_inv.col(t));
    }
    if (bj != t) {
      b.col(bj).swap(b.col(t));
      s.v.col(bj).swap(s.v.col(t));
      s.v_inv.row(bj).swap(s.v_inv.row(t));
    }
    const mpz_class pv = pow_ui(p, best);
    mpz_class unit;
    mpz_divexact(unit.get_mpz_t(), b(t, t).get_mpz_t(), pv.get_mpz_t());
    mpz_class uinv = inverse_mod(unit, pm);
    for (Eigen::Index j = 0; j < cols; ++j) b(t, j) = mod(b(t, j) * uinv, pm);
    for (Eigen::Index j = 0; j < rows; ++j) {
      s.u(t, j) = mod(s.u(t, j) * uinv, pm);
      s.u_inv(j, t) = mod(s.u_inv(j, t) * unit, pm);
    }
    for (Eigen::Index i = t + 1; i < rows; ++i) {
      if (b(i, t) == 0) continue;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), b(i, t).get_mpz_t(), pv.get_mpz_t());
      for (Eigen::Index j = t; j < cols; ++j) b(i, j) = mod(b(i, j) - c * b(t, j), pm);
      for (Eigen::Index j = 0; j < rows; ++j) {
        s.u(i, j) = mod(s.u(i, j) - c * s.u(t, j), pm);
        s.u_inv(j, t) = mod(s.u_inv(j, t) + c * s.u_inv(j, i), pm);
      }
    }
    for (Eigen::Index j = t + 1; j < cols; ++j) {
      if (b(t, j) == 0) continue;
      mpz_class c;
      mpz_divexact(c.get_mpz_t(), b(t, j).get_mpz_t(), pv.get_mpz_t());
      b(t, j) = 0;
      for (Eigen::Index i = 0; i < cols; ++i) {
        s.v(i, j) = mod(s.v(i, j) - c * s.v(i, t), pm);
        s.v_inv(t, i) = mod(s.v_inv(t, i) + c * s.v_inv(j, i), pm);
      }
    }
    s.diag.push_back(best);
  }
  s.rank = int(std::count_if(s.diag.begin(), s.diag.end(), [m](int d) { return d < m; }));
  return s;
}

std::vector<int> elementary_divisor_valuations(const ZMatrix& a, long p, int m) {
  return smith_form(a, p, m).diag;
}

std::optional<ZMatrix> solve_integral(const ZMatrix& a, const ZMatrix& b, long p, int m,
                                      int* prec) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    fail(ErrorCode::InvalidOperand, "solve: shape mismatch");
  SmithForm s = smith_form(a, p, m);
  if (s.rank < a.rows()) fail(ErrorCode::PrecisionExhausted, "solve: singular at working precision");
  const int vmax = s.max_valuation();
  const mpz_class pm = pow_ui(p, m);
  ZMatrix ub = reduce(s.u * b, pm);
  for (Eigen::Index i = 0; i < ub.rows(); ++i) {
    const mpz_class pv = pow_ui(p, s.diag[i]);
    for (Eigen::Index j = 0; j < ub.cols(); ++j) {
      if (!mpz_divisible_p(ub(i, j).get_mpz_t(), pv.get_mpz_t())) return std::nullopt;
      mpz_divexact(ub(i, j).get_mpz_t(), ub(i, j).get_mpz_t(), pv.get_mpz_t());
    }
  }
  if (prec) *prec = m - vmax;
  return reduce(s.v * ub, pow_ui(p, m - vmax));
}

ZMatrix inverse_scaled(const ZMatrix& a, long p, int m, int* shift) {
  SmithForm s = smith_form(a, p, m);
  if (s.rank < a.rows()) fail(ErrorCode::PrecisionExhausted, "inverse: singular at working precision");
  const int vmax = s.max_valuation();
  ZMatrix d = ZMatrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) d(i, i) = pow_ui(p, vmax - s.diag[i]);
  *shift = vmax;
  return reduce(s.v * d * s.u, pow_ui(p, m - vmax));
}

}  // namespace bp
