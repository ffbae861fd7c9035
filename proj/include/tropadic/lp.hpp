#pragma once

#include <cstddef>
#include <vector>

#include "tropadic/qlinalg.hpp"

namespace tropadic {

// Feasibility of {x >= 0 : Ax = b} by an exact phase-1 simplex. Bland's rule
// on both the entering and leaving choice rules out cycling, so termination
// is unconditional. This is the only solver the geometry layer needs; free
// variables and inequalities are encoded by the callers (variable splitting
// and slack columns).
inline bool lp_feasible(QMat a, QVec b) {
  size_t m = a.size();
  if (m == 0) return true;
  size_t n = a[0].size();

  for (size_t i = 0; i < m; ++i) {
    if (b[i] < 0) {
      b[i] = -b[i];
      for (mpq_class& v : a[i]) v = -v;
    }
  }

  // Tableau over original columns plus one artificial per row; artificials
  // start basic, and the phase-1 objective minimizes their sum.
  size_t cols = n + m;
  QMat t(m, QVec(cols + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced cost row for minimizing the artificial sum: start from the sum
  // of all constraint rows restricted to non-artificial columns.
  QVec z(cols + 1, 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) z[j] += t[i][j];

  while (true) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j) {
      if (z[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      mpq_class lhs = t[i][cols] * t[leave][enter];
      mpq_class rhs = t[leave][cols] * t[i][enter];
      if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase 1

    mpq_class piv = t[leave][enter];
    for (size_t j = 0; j <= cols; ++j) t[leave][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      mpq_class f = t[i][enter];
      for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    mpq_class fz = z[enter];
    for (size_t j = 0; j <= cols; ++j) z[j] -= fz * t[leave][j];
    basis[leave] = enter;
  }

  return z[cols] == 0;
}

}  // namespace tropadic
