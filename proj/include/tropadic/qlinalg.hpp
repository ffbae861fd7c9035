#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "tropadic/field_scalar.hpp"

namespace tropadic {

using QVec = std::vector<mpq_class>;
using QMat = std::vector<QVec>;  // row major

// In-place reduced row echelon form. Returns the pivot column of each
// surviving nonzero row, in order.
inline std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    mpq_class inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

inline size_t rank(QMat m) { return rref(m).size(); }

// Basis of the right kernel {x : Ax = 0}, one vector per row of the result.
inline QMat kernel_basis(QMat a) {
  if (a.empty()) return {};
  size_t cols = a[0].size();
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  QMat basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec x(cols, 0);
    x[f] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      x[static_cast<size_t>(pivots[i])] = -a[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

// One solution of Ax = b (free variables set to 0), or nullopt.
inline std::optional<QVec> solve(QMat a, const QVec& b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::vector<int> pivots = rref(a);
  if (!pivots.empty() && pivots.back() == static_cast<int>(cols))
    return std::nullopt;
  QVec x(cols, 0);
  for (size_t i = 0; i < pivots.size(); ++i)
    x[static_cast<size_t>(pivots[i])] = a[i][cols];
  return x;
}

// Scale a nonzero rational vector to integer entries with content 1, keeping
// the sign of the first nonzero entry.
inline std::vector<mpz_class> primitive(const QVec& v) {
  mpz_class lcm_den = 1;
  for (const mpq_class& q : v)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
            q.get_den().get_mpz_t());
  std::vector<mpz_class> w;
  w.reserve(v.size());
  mpz_class g = 0;
  for (const mpq_class& q : v) {
    mpq_class s = q * lcm_den;
    w.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
  }
  if (g != 0)
    for (mpz_class& z : w) z /= g;
  return w;
}

// Z-basis of the kernel lattice {x in Z^n : Ax = 0} of an integer matrix,
// by unimodular column reduction. Each 2x2 column move [s t; -bk/g bj/g]
// has determinant 1, so the transform tracks an honest lattice basis, not
// merely a spanning set of the rational kernel.
inline std::vector<std::vector<mpz_class>> integer_kernel_lattice(
    const std::vector<std::vector<mpz_class>>& a, size_t n) {
  size_t m = a.size();
  std::vector<std::vector<mpz_class>> b(m, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) b[i][j] = a[i][j];
  std::vector<std::vector<mpz_class>> u(n, std::vector<mpz_class>(n, 0));
  for (size_t j = 0; j < n; ++j) u[j][j] = 1;
  std::vector<bool> active(n, true);

  auto col_combine = [&](size_t r, size_t j, size_t k) {
    // Zero b[r][k] against b[r][j] with a unimodular move on columns j, k.
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
               b[r][j].get_mpz_t(), b[r][k].get_mpz_t());
    mpz_class pj = b[r][j] / g, pk = b[r][k] / g;
    for (size_t i = 0; i < m; ++i) {
      mpz_class nj = s * b[i][j] + t * b[i][k];
      mpz_class nk = -pk * b[i][j] + pj * b[i][k];
      b[i][j] = nj;
      b[i][k] = nk;
    }
    for (size_t i = 0; i < n; ++i) {
      mpz_class nj = s * u[i][j] + t * u[i][k];
      mpz_class nk = -pk * u[i][j] + pj * u[i][k];
      u[i][j] = nj;
      u[i][k] = nk;
    }
  };

  for (size_t r = 0; r < m; ++r) {
    size_t lead = n;
    for (size_t j = 0; j < n; ++j) {
      if (!active[j] || b[r][j] == 0) continue;
      if (lead == n) {
        lead = j;
      } else {
        col_combine(r, lead, j);
      }
    }
    if (lead != n) active[lead] = false;
  }

  std::vector<std::vector<mpz_class>> basis;
  for (size_t j = 0; j < n; ++j) {
    if (!active[j]) continue;
    std::vector<mpz_class> col(n);
    for (size_t i = 0; i < n; ++i) col[i] = u[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

// Coordinates of a field vector over Q: each entry contributes its four
// rational coordinates, so rank and kernel questions about vectors of
// FieldScalar reduce to plain rational linear algebra.
inline QVec flatten(const std::vector<FieldScalar>& v) {
  QVec out;
  out.reserve(4 * v.size());
  for (const FieldScalar& x : v)
    for (int j = 0; j < 4; ++j) out.push_back(x.coord(j));
  return out;
}

}  // namespace tropadic
