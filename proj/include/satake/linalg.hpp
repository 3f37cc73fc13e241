#pragma once
// Exact linear algebra over Q (boost::multiprecision rationals).
// Everything here is small and dense; fraction-free tricks are not worth it
// at the matrix sizes we see (weight-space blocks are rarely larger than ~200).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

#include "satake/errors.hpp"

namespace satake {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major, rectangular

inline QMat qmat_zero(std::size_t rows, std::size_t cols) {
  return QMat(rows, QVec(cols, Rat(0)));
}

inline QMat qmat_identity(std::size_t n) {
  QMat m = qmat_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t qmat_rows(const QMat& a) { return a.size(); }
inline std::size_t qmat_cols(const QMat& a) { return a.empty() ? 0 : a[0].size(); }

inline QMat qmat_mul(const QMat& a, const QMat& b) {
  const std::size_t n = qmat_rows(a), k = qmat_cols(a), m = qmat_cols(b);
  if (qmat_rows(b) != k) throw MathError("qmat_mul: shape mismatch");
  QMat c = qmat_zero(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

inline QVec qmat_apply(const QMat& a, const QVec& v) {
  const std::size_t n = qmat_rows(a), k = qmat_cols(a);
  if (v.size() != k) throw MathError("qmat_apply: shape mismatch");
  QVec out(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0 && v[l] != 0) out[i] += a[i][l] * v[l];
  return out;
}

inline QMat qmat_transpose(const QMat& a) {
  QMat t = qmat_zero(qmat_cols(a), qmat_rows(a));
  for (std::size_t i = 0; i < qmat_rows(a); ++i)
    for (std::size_t j = 0; j < qmat_cols(a); ++j) t[j][i] = a[i][j];
  return t;
}

inline QMat qmat_add(const QMat& a, const QMat& b) {
  if (qmat_rows(a) != qmat_rows(b) || qmat_cols(a) != qmat_cols(b))
    throw MathError("qmat_add: shape mismatch");
  QMat c = a;
  for (std::size_t i = 0; i < qmat_rows(a); ++i)
    for (std::size_t j = 0; j < qmat_cols(a); ++j) c[i][j] += b[i][j];
  return c;
}

inline QMat qmat_sub(const QMat& a, const QMat& b) {
  if (qmat_rows(a) != qmat_rows(b) || qmat_cols(a) != qmat_cols(b))
    throw MathError("qmat_sub: shape mismatch");
  QMat c = a;
  for (std::size_t i = 0; i < qmat_rows(a); ++i)
    for (std::size_t j = 0; j < qmat_cols(a); ++j) c[i][j] -= b[i][j];
  return c;
}

inline bool qmat_is_zero(const QMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

// Row echelon via exact Gaussian elimination; returns rank and leaves the
// pivot column list in *pivots (if non-null).  Destroys `m`.
inline std::size_t rref_in_place(QMat& m, std::vector<std::size_t>* pivots = nullptr) {
  const std::size_t rows = qmat_rows(m), cols = qmat_cols(m);
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c] != 0) { pivot = i; break; }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    const Rat inv = Rat(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline std::size_t qmat_rank(QMat m) { return rref_in_place(m); }

// Basis of the null space {x : Ax = 0}, one vector per non-pivot column.
inline std::vector<QVec> qmat_kernel(QMat m) {
  const std::size_t cols = qmat_cols(m);
  std::vector<std::size_t> pivots;
  rref_in_place(m, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    QVec v(cols, Rat(0));
    v[free_c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve Ax = b exactly; throws MathError when inconsistent.  When the system
// is underdetermined, free variables are set to 0.
inline QVec qmat_solve(const QMat& a, const QVec& b) {
  const std::size_t rows = qmat_rows(a), cols = qmat_cols(a);
  if (b.size() != rows) throw MathError("qmat_solve: shape mismatch");
  QMat aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i]);
  std::vector<std::size_t> pivots;
  rref_in_place(aug, &pivots);
  if (!pivots.empty() && pivots.back() == cols)
    throw MathError("qmat_solve: inconsistent system");
  QVec x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

// Multi-RHS variant: solve A X = B column by column.
inline QMat qmat_solve_mat(const QMat& a, const QMat& b) {
  const std::size_t rows = qmat_rows(a);
  if (qmat_rows(b) != rows) throw MathError("qmat_solve_mat: shape mismatch");
  const std::size_t nrhs = qmat_cols(b);
  QMat x = qmat_zero(qmat_cols(a), nrhs);
  for (std::size_t j = 0; j < nrhs; ++j) {
    QVec col(rows);
    for (std::size_t i = 0; i < rows; ++i) col[i] = b[i][j];
    QVec sol = qmat_solve(a, col);
    for (std::size_t i = 0; i < sol.size(); ++i) x[i][j] = sol[i];
  }
  return x;
}

// k-th matrix power (k >= 0) of a square matrix.
inline QMat qmat_pow(QMat a, unsigned k) {
  const std::size_t n = qmat_rows(a);
  if (n != qmat_cols(a)) throw MathError("qmat_pow: not square");
  QMat result = qmat_identity(n);
  while (k) {
    if (k & 1u) result = qmat_mul(result, a);
    k >>= 1u;
    if (k) a = qmat_mul(a, a);
  }
  return result;
}

}  // namespace satake
