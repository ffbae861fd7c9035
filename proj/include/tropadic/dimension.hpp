#pragma once

#include <utility>
#include <vector>

#include "tropadic/containment.hpp"

namespace tropadic {
namespace detail {

// Q^4k coordinates of the vector with x in lex coordinate i and 0 elsewhere.
inline QVec axis_vector(size_t k, size_t i, const FieldScalar& x) {
  std::vector<FieldScalar> v(k, FieldScalar(0));
  v[i] = x;
  return flatten(v);
}

// The subspace of first-coordinate vectors with entries in Gamma, the image
// of the coefficient semifield under any normalized matrix.
inline QMat gamma_axis_space(const CoefficientGroup& gamma, size_t k) {
  QMat w;
  for (const FieldScalar& g : gamma.basis()) w.push_back(axis_vector(k, 0, g));
  return w;
}

inline void require_cont_interior(const PrimeCongruence& q,
                                  const char* what) {
  require(q.matrix().at(0, 0).value().sign() > 0, errc::not_in_cont_interior,
          what);
  require(q.ideal_kernel_face().trivial(), errc::not_in_cont_interior, what);
}

}  // namespace detail

// rk of the residue value group modulo coefficients: dim (V + W)/W where V
// is spanned by the non-coefficient columns of the normalized matrix and W
// is the Gamma axis space. Normalization matters: W is pinned to the first
// coordinate axis, which represents the coefficient image only once the
// coefficient column is e1.
inline int quotient_rank(const PrimeCongruence& p) {
  PrimeCongruence q = normalize(p);
  detail::require_cont_interior(
      q, "quotient rank needs a prime interior to Cont");
  size_t k = q.height();
  QMat w = detail::gamma_axis_space(q.gamma(), k);
  QMat vw = w;
  for (size_t j = 1; j < q.matrix().width(); ++j) {
    std::vector<FieldScalar> col;
    for (size_t i = 0; i < k; ++i) col.push_back(q.matrix().at(i, j).value());
    vw.push_back(flatten(col));
  }
  return static_cast<int>(rank(std::move(vw)) - rank(std::move(w)));
}

inline int dim_base(const ToricMonoid& m) { return static_cast<int>(m.rank()); }

inline int height(const PrimeCongruence& p) {
  return static_cast<int>(p.rank()) - quotient_rank(p);
}

enum class DimExactness { kTCoeffs, kFullDimCone, kBoundsOnly };

struct DimReport {
  int dim_base = 0;
  int q_rank = 0;
  int height = 0;
  int dim_top_lower = 0;
  int dim_top_upper = 0;
  bool exact = false;
  DimExactness reason = DimExactness::kBoundsOnly;
};

namespace detail {

inline bool sigma_full_dimensional(const ToricMonoid& m) {
  if (m.kind() == MonoidKind::kAffine) return true;
  if (m.kind() == MonoidKind::kLattice) return m.rank() == 0;
  QMat rays;
  for (const ZVec& r : m.sigma().rays()) {
    QVec row;
    for (const mpz_class& x : r) row.push_back(mpq_class(x));
    rays.push_back(std::move(row));
  }
  return rank(std::move(rays)) == m.rank();
}

}  // namespace detail

// Topological dimension of Cnvg_P: exactly dim_base with full coefficients
// or a full-dimensional cone, otherwise the sandwich
// dim_base - q_rank <= dim_top <= dim_base.
inline DimReport dim_top_report(const PrimeCongruence& p) {
  DimReport r;
  r.q_rank = quotient_rank(p);
  r.dim_base = static_cast<int>(p.rank());
  r.height = r.dim_base - r.q_rank;
  if (p.gamma().is_full()) {
    r.exact = true;
    r.reason = DimExactness::kTCoeffs;
  } else if (detail::sigma_full_dimensional(p.monoid())) {
    r.exact = true;
    r.reason = DimExactness::kFullDimCone;
  }
  if (r.exact) {
    r.dim_top_lower = r.dim_top_upper = r.dim_base;
  } else {
    r.dim_top_lower = r.dim_base - r.q_rank;
    r.dim_top_upper = r.dim_base;
  }
  return r;
}

// Spanning set (rows) of the exponent part of ker pi_P: rational u admitting
// some a in Gamma with C (a;u)^T = 0. The coefficient unknown ranges over
// all of Gamma, not just 0: a term t^a chi^u is killed whenever the columns
// cancel against a legal coefficient.
inline QMat kernel_exponent_basis(const PrimeCongruence& p) {
  size_t k = p.height();
  size_t n = p.rank();
  const std::vector<FieldScalar>& gb = p.gamma().basis();
  size_t g = gb.size();
  QMat a(4 * k, QVec(g + n, 0));
  for (size_t i = 0; i < k; ++i) {
    for (size_t l = 0; l < g; ++l) {
      FieldScalar c = gb[l] * p.matrix().at(i, 0).value();
      for (int t = 0; t < 4; ++t) a[4 * i + t][l] = c.coord(t);
    }
    for (size_t j = 0; j < n; ++j) {
      const FieldScalar& c = p.matrix().at(i, j + 1).value();
      for (int t = 0; t < 4; ++t) a[4 * i + t][g + j] = c.coord(t);
    }
  }
  QMat out;
  for (const QVec& v : kernel_basis(std::move(a)))
    out.emplace_back(v.begin() + g, v.end());
  return out;
}

// The chain step: refine ties of P by the covector w, realized as the
// appended matrix row (0 | w). Strictly finer than P exactly when w does not
// vanish on the exponent kernel, and then the kernel rank drops by one.
inline PrimeCongruence extend_chain(const PrimeCongruence& p, const QVec& w) {
  require(p.monoid().kind() == MonoidKind::kLattice, errc::monoid_mismatch,
          "chain construction works over lattice monoids");
  detail::require_cont_interior(normalize(p),
                                "chain construction needs a prime interior "
                                "to Cont");
  require(w.size() == p.rank(), errc::dimension_mismatch,
          "covector size must match the monoid rank");
  bool admissible = false;
  for (const QVec& u : kernel_exponent_basis(p)) {
    mpq_class dot = 0;
    for (size_t i = 0; i < w.size(); ++i) dot += w[i] * u[i];
    if (dot != 0) {
      admissible = true;
      break;
    }
  }
  require(admissible, errc::w_perpendicular,
          "the covector vanishes on the exponent kernel");
  std::vector<std::vector<ExtScalar>> rows = p.matrix().rows();
  std::vector<ExtScalar> extra{ExtScalar(FieldScalar(0))};
  for (const mpq_class& x : w) extra.push_back(ExtScalar(FieldScalar(x)));
  rows.push_back(std::move(extra));
  return PrimeCongruence(p.monoid(), p.gamma(), DefiningMatrix(std::move(rows)));
}

// P = P0 > P1 > ... > P_height(P), each step refining by a coordinate
// covector that still sees the shrinking kernel.
inline std::vector<PrimeCongruence> build_maximal_chain(
    const PrimeCongruence& p) {
  require(p.monoid().kind() == MonoidKind::kLattice, errc::monoid_mismatch,
          "chain construction works over lattice monoids");
  detail::require_cont_interior(normalize(p),
                                "chain construction needs a prime interior "
                                "to Cont");
  std::vector<PrimeCongruence> chain{p};
  for (;;) {
    QMat kb = kernel_exponent_basis(chain.back());
    size_t pick = p.rank();
    for (size_t i = 0; i < p.rank() && pick == p.rank(); ++i)
      for (const QVec& u : kb)
        if (u[i] != 0) {
          pick = i;
          break;
        }
    if (pick == p.rank()) break;
    QVec w(p.rank(), 0);
    w[pick] = 1;
    chain.push_back(extend_chain(chain.back(), w));
  }
  return chain;
}

}  // namespace tropadic
