#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropadic/coefficient_group.hpp"
#include "tropadic/cone.hpp"
#include "tropadic/error.hpp"
#include "tropadic/lex_tuple.hpp"
#include "tropadic/monoid.hpp"
#include "tropadic/qlinalg.hpp"

namespace tropadic {

// The matrix C presenting a prime congruence: k rows by n+1 columns of
// ExtScalar, column 0 acting on the coefficient exponent and column j >= 1
// on the j-th monomial exponent. BOTTOM is a column-wide phenomenon: a
// partially-BOTTOM column would make Psi images incomparable across rows.
class DefiningMatrix {
 public:
  explicit DefiningMatrix(std::vector<std::vector<ExtScalar>> rows)
      : rows_(std::move(rows)) {
    require(!rows_.empty(), errc::invalid_matrix, "matrix needs rows");
    width_ = rows_[0].size();
    require(width_ >= 1, errc::invalid_matrix, "matrix needs columns");
    for (const auto& r : rows_)
      require(r.size() == width_, errc::invalid_matrix, "ragged matrix");

    for (size_t j = 0; j < width_; ++j) {
      bool any = false, all = true;
      for (const auto& r : rows_) {
        if (r[j].is_bottom())
          any = true;
        else
          all = false;
      }
      require(!any || all, errc::invalid_matrix,
              "BOTTOM must fill its whole column");
      require(!(any && j == 0), errc::invalid_matrix,
              "coefficient column cannot be BOTTOM");
      if (any && all) bottom_cols_.push_back(static_cast<int>(j) - 1);
    }

    int lead = 0;
    for (const auto& r : rows_) {
      lead = r[0].value().sign();
      if (lead != 0) break;
    }
    require(lead >= 0, errc::invalid_matrix,
            "coefficient column must be lexicographically nonnegative");
  }

  size_t height() const { return rows_.size(); }
  size_t width() const { return width_; }
  const ExtScalar& at(size_t i, size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<ExtScalar>>& rows() const { return rows_; }

  // Exponent indices (0-based) of the BOTTOM columns.
  const std::vector<int>& bottom_exponents() const { return bottom_cols_; }

  std::string str() const {
    std::string out = "[";
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (i) out += ",";
      out += "[";
      for (size_t j = 0; j < width_; ++j) {
        if (j) out += ",";
        out += rows_[i][j].str();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  std::vector<std::vector<ExtScalar>> rows_;
  size_t width_ = 0;
  std::vector<int> bottom_cols_;
};

// The ideal-kernel face: which exponent directions the prime sends to
// BOTTOM, and the face tau of sigma it corresponds to (indices into
// effective_sigma().rays()). Trivial kernel means tau = {0}.
struct KernelFace {
  std::vector<int> cols;      // 0-based exponent indices of BOTTOM columns
  std::vector<int> tau_rays;  // rays of effective sigma spanning tau

  bool trivial() const { return cols.empty(); }

  friend bool operator==(const KernelFace& a, const KernelFace& b) {
    return a.cols == b.cols;
  }
};

// A prime congruence P on S[M] given by its defining matrix. Construction
// checks the matrix invariants against the monoid: BOTTOM columns make
// sense only when the monoid has non-invertible directions, and for CONE
// monoids the BOTTOM pattern must carve out an actual face of sigma.
class PrimeCongruence {
 public:
  PrimeCongruence(ToricMonoid monoid, CoefficientGroup gamma,
                  DefiningMatrix matrix)
      : monoid_(std::move(monoid)),
        gamma_(std::move(gamma)),
        matrix_(std::move(matrix)) {
    require(matrix_.width() == monoid_.rank() + 1, errc::invalid_matrix,
            "matrix width " + std::to_string(matrix_.width()) +
                " does not fit rank " + std::to_string(monoid_.rank()));
    const std::vector<int>& J = matrix_.bottom_exponents();
    if (!J.empty()) {
      require(monoid_.kind() != MonoidKind::kLattice, errc::invalid_matrix,
              "BOTTOM columns on an invertible monoid");
      if (monoid_.kind() == MonoidKind::kCone) tau_rays_ = match_face(J);
    }
    if (monoid_.kind() == MonoidKind::kAffine)
      tau_rays_.assign(J.begin(), J.end());
  }

  const ToricMonoid& monoid() const { return monoid_; }
  const CoefficientGroup& gamma() const { return gamma_; }
  const DefiningMatrix& matrix() const { return matrix_; }
  size_t height() const { return matrix_.height(); }
  size_t rank() const { return monoid_.rank(); }

  KernelFace ideal_kernel_face() const {
    return KernelFace{matrix_.bottom_exponents(), tau_rays_};
  }

  std::string str() const {
    return "prime { monoid: " + monoid_.str() + "; gamma: " + gamma_.str() +
           "; matrix: " + matrix_.str() + " }";
  }

 private:
  // The BOTTOM pattern J is legal for a CONE monoid exactly when the
  // monomials it spares, sigma-dual meet L_J, are the perp section of some
  // face tau; the kernel is then everything outside tau-perp.
  std::vector<int> match_face(const std::vector<int>& J) const {
    const Cone& sigma = monoid_.sigma();
    ZMat section = sigma.dual_coordinate_section(J);
    for (const std::vector<int>& face : sigma.faces()) {
      ZMat perp = sigma.dual_face_generators(face);
      bool same = true;
      for (const ZVec& g : section) same = same && cone_member(perp, g);
      for (const ZVec& g : perp) same = same && cone_member(section, g);
      if (same) return face;
    }
    fail(errc::invalid_matrix,
         "BOTTOM columns do not describe a face of the cone");
  }

  ToricMonoid monoid_;
  CoefficientGroup gamma_;
  DefiningMatrix matrix_;
  std::vector<int> tau_rays_;
};

// Psi: the Hahn-embedding evaluation of a monomial, C times the log-term
// vector (a; u), with 0 * BOTTOM = 0 and nonzero * BOTTOM = BOTTOM. The
// column invariant guarantees rows go BOTTOM all together, so the image
// stays inside LexTuple's all-or-nothing representation.
inline LexTuple psi_eval(const PrimeCongruence& p, const Term& m) {
  require(p.monoid().contains(m.exp), errc::invalid_argument,
          "term exponent outside the monoid: " + m.str());
  size_t k = p.height(), n = p.rank();
  std::vector<FieldScalar> out;
  out.reserve(k);
  for (size_t i = 0; i < k; ++i) {
    FieldScalar acc = p.matrix().at(i, 0).value() * m.coeff;
    for (size_t j = 0; j < n; ++j) {
      const mpz_class& mult = m.exp[j];
      if (mult == 0) continue;
      const ExtScalar& c = p.matrix().at(i, j + 1);
      if (c.is_bottom()) return LexTuple::bottom(static_cast<int>(k));
      acc += c.value() * FieldScalar(mpq_class(mult));
    }
    out.push_back(std::move(acc));
  }
  return LexTuple(std::move(out));
}

// Three-way order of terms under P: the lex order of their Psi images.
inline int compare_terms(const PrimeCongruence& p, const Term& m1,
                         const Term& m2) {
  return LexTuple::compare(psi_eval(p, m1), psi_eval(p, m2));
}

// The P-leading value of f and every term attaining it. The zero
// polynomial reports the BOTTOM value with no terms; a polynomial entirely
// inside the ideal-kernel reports BOTTOM with all its terms.
inline std::pair<LexTuple, std::vector<Term>> poly_leading_terms(
    const PrimeCongruence& p, const Polynomial& f) {
  LexTuple best = LexTuple::bottom(static_cast<int>(p.height()));
  std::vector<Term> terms;
  for (const auto& [u, a] : f.terms()) {
    Term m{a, u};
    LexTuple v = psi_eval(p, m);
    int c = LexTuple::compare(v, best);
    if (c > 0) {
      best = v;
      terms.clear();
    }
    if (c >= 0) terms.push_back(std::move(m));
  }
  return {best, terms};
}

// Row reduction by the moves that do not change the prime: positive row
// scalings and additions of upper rows to strictly lower ones. Rows are
// scanned top to bottom, each pivot normalized so the row's leading value
// is as close to 1 as positive scaling allows, entries below the pivot
// eliminated, and zero rows dropped at the end. In Cont the coefficient
// pivot is genuinely positive, so its exact field inverse is a legal
// scaling and the first column lands on e1.
inline PrimeCongruence normalize(const PrimeCongruence& p) {
  std::vector<std::vector<ExtScalar>> rows = p.matrix().rows();
  size_t k = rows.size(), w = p.matrix().width();

  auto leading = [&](size_t r) -> size_t {
    for (size_t j = 0; j < w; ++j)
      if (!rows[r][j].is_bottom() && !rows[r][j].value().is_zero()) return j;
    return w;
  };

  for (size_t r = 0; r < k; ++r) {
    size_t lead = leading(r);
    if (lead == w) continue;
    FieldScalar pivot = rows[r][lead].value();

    FieldScalar scale;
    if (lead == 0 && pivot.sign() > 0) {
      scale = pivot.inverse();
    } else {
      int t = 0;
      while (pivot.coord(t) == 0) ++t;
      mpq_class c = abs(pivot.coord(t));
      scale = FieldScalar(mpq_class(1) / c);
    }
    for (size_t j = 0; j < w; ++j)
      if (!rows[r][j].is_bottom())
        rows[r][j] = ExtScalar(rows[r][j].value() * scale);

    pivot = rows[r][lead].value();
    for (size_t s = r + 1; s < k; ++s) {
      if (rows[s][lead].is_bottom()) continue;
      FieldScalar f = rows[s][lead].value() / pivot;
      if (f.is_zero()) continue;
      for (size_t j = 0; j < w; ++j)
        if (!rows[s][j].is_bottom())
          rows[s][j] = ExtScalar(rows[s][j].value() - f * rows[r][j].value());
    }
  }

  std::vector<std::vector<ExtScalar>> kept;
  for (size_t r = 0; r < k; ++r)
    if (leading(r) != w) kept.push_back(std::move(rows[r]));
  if (kept.empty()) {
    // Fully degenerate input; keep one zero row so the matrix type holds.
    kept.push_back(std::vector<ExtScalar>(w, ExtScalar(0)));
  }
  return PrimeCongruence(p.monoid(), p.gamma(), DefiningMatrix(std::move(kept)));
}

// P lies in Cont_S S[M] exactly when the normalized matrix has a positive
// (1,1) entry; normalizing first lets deletable zero top rows not obscure
// the criterion.
inline bool in_cont(const PrimeCongruence& p) {
  PrimeCongruence q = normalize(p);
  return q.matrix().at(0, 0).value().sign() > 0;
}

// The unique maximal element of Cont_S above P: the prime of the first row
// of the normalized matrix.
inline PrimeCongruence maximal_above(const PrimeCongruence& p) {
  PrimeCongruence q = normalize(p);
  require(q.matrix().at(0, 0).value().sign() > 0, errc::not_in_cont,
          "maximal_above needs P in Cont");
  return PrimeCongruence(p.monoid(), p.gamma(),
                         DefiningMatrix({q.matrix().rows()[0]}));
}

// Pullback of P along a sublattice: the coefficient column is kept and each
// basis vector contributes the column C * b. The basis must avoid the
// BOTTOM columns, which is exactly the condition for the products to stay
// finite; the result lives on the lattice of basis coordinates.
inline PrimeCongruence restrict_prime(const PrimeCongruence& p,
                                      const ZMat& basis) {
  size_t n = p.rank(), k = p.height();
  for (const ZVec& b : basis) {
    require(b.size() == n, errc::dimension_mismatch,
            "basis vector of wrong length");
    for (int j : p.matrix().bottom_exponents())
      require(b[static_cast<size_t>(j)] == 0, errc::bottom_column_hit,
              "basis vector meets a BOTTOM column");
  }
  std::vector<std::vector<ExtScalar>> rows(
      k, std::vector<ExtScalar>(basis.size() + 1));
  for (size_t i = 0; i < k; ++i) {
    rows[i][0] = p.matrix().at(i, 0);
    for (size_t l = 0; l < basis.size(); ++l) {
      FieldScalar acc(0);
      for (size_t j = 0; j < n; ++j) {
        if (basis[l][j] == 0) continue;
        acc += p.matrix().at(i, j + 1).value() *
               FieldScalar(mpq_class(basis[l][j]));
      }
      rows[i][l + 1] = ExtScalar(std::move(acc));
    }
  }
  return PrimeCongruence(ToricMonoid::lattice(basis.size()), p.gamma(),
                         DefiningMatrix(std::move(rows)));
}

// Z-basis of the lattice spanned by the kernel-free exponent directions,
// Lambda meet tau-perp. For lattice and affine monoids this is the
// coordinate sublattice off the BOTTOM columns; for cones it is computed
// from the span of the dual's L_J section.
inline ZMat kernel_perp_lattice(const PrimeCongruence& p) {
  size_t n = p.rank();
  const std::vector<int>& J = p.matrix().bottom_exponents();
  if (p.monoid().kind() != MonoidKind::kCone || J.empty()) {
    std::vector<bool> dead(n, false);
    for (int j : J) dead[static_cast<size_t>(j)] = true;
    ZMat basis;
    for (size_t j = 0; j < n; ++j) {
      if (dead[j]) continue;
      ZVec e(n, 0);
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  ZMat gens = p.monoid().sigma().dual_coordinate_section(J);
  if (gens.empty()) return {};
  QMat grows;
  for (const ZVec& g : gens) {
    QVec row;
    for (const mpz_class& x : g) row.push_back(mpq_class(x));
    grows.push_back(std::move(row));
  }
  // Equations cutting out span(gens): a basis of its orthogonal complement.
  QMat normals = kernel_basis(std::move(grows));
  std::vector<std::vector<mpz_class>> eqs;
  for (const QVec& nrm : normals) eqs.push_back(primitive(nrm));
  return integer_kernel_lattice(eqs, n);
}

// The stratification data of P: its kernel face tau and the restriction of
// P to S[Lambda meet tau-perp], which always has trivial ideal-kernel.
inline PrimeCongruence stratum_restrict(const PrimeCongruence& p) {
  require(p.monoid().kind() != MonoidKind::kCone || p.rank() <= 4,
          errc::rank_too_large, "stratum restriction needs rank <= 4");
  return restrict_prime(p, kernel_perp_lattice(p));
}

// The real matrix of the Psi action on log-term vectors (Gamma-coordinates
// then lattice coordinates), defined for kernel-free primes. Row i reads
// (c_i0 gamma_1, ..., c_i0 gamma_g, c_i1, ..., c_in).
inline std::vector<std::vector<FieldScalar>> effective_rows(
    const PrimeCongruence& p) {
  require(p.matrix().bottom_exponents().empty(), errc::bottom_column_hit,
          "effective matrix of a prime with nontrivial kernel");
  size_t k = p.height(), n = p.rank();
  const std::vector<FieldScalar>& basis = p.gamma().basis();
  std::vector<std::vector<FieldScalar>> out(k);
  for (size_t i = 0; i < k; ++i) {
    for (const FieldScalar& g : basis)
      out[i].push_back(p.matrix().at(i, 0).value() * g);
    for (size_t j = 0; j < n; ++j)
      out[i].push_back(p.matrix().at(i, j + 1).value());
  }
  return out;
}

// Basis vectors (as rows) of the rational subspace where a list of
// field-valued forms all vanish; the forms' four rational components are
// stacked so everything stays exact over Q.
inline QMat vanishing_subspace(const std::vector<std::vector<FieldScalar>>& forms,
                               const QMat& space) {
  if (forms.empty()) return space;
  QMat sys;
  for (const auto& f : forms) {
    for (int t = 0; t < 4; ++t) {
      QVec row;
      for (const QVec& w : space) {
        FieldScalar v(0);
        for (size_t j = 0; j < f.size(); ++j) v += f[j] * FieldScalar(w[j]);
        row.push_back(v.coord(t));
      }
      sys.push_back(std::move(row));
    }
  }
  QMat combos = kernel_basis(std::move(sys));
  QMat out;
  for (const QVec& c : combos) {
    QVec v(space.empty() ? 0 : space[0].size(), 0);
    for (size_t b = 0; b < space.size(); ++b)
      for (size_t j = 0; j < v.size(); ++j) v[j] += c[b] * space[b][j];
    out.push_back(std::move(v));
  }
  return out;
}

inline FieldScalar apply_form(const std::vector<FieldScalar>& form,
                              const QVec& v) {
  FieldScalar out(0);
  for (size_t j = 0; j < form.size(); ++j) out += form[j] * FieldScalar(v[j]);
  return out;
}

// Occupied archimedean classes of the residue semifield: 1-based indices i
// of normalized matrix rows that act nontrivially on the iterated kernel of
// the rows above them, i.e. some term's image has its first nonzero entry
// in position i. Computed on the kernel-free restriction so BOTTOM columns
// do not enter the linear algebra.
inline std::vector<int> arch_classes(const PrimeCongruence& p) {
  require(in_cont(p), errc::not_in_cont, "arch classes need P in Cont");
  PrimeCongruence q = stratum_restrict(normalize(p));
  std::vector<std::vector<FieldScalar>> rows = effective_rows(q);
  size_t dim = rows.empty() ? 0 : rows[0].size();
  QMat space;
  for (size_t j = 0; j < dim; ++j) {
    QVec e(dim, 0);
    e[j] = 1;
    space.push_back(std::move(e));
  }
  std::vector<int> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    bool acts = false;
    for (const QVec& w : space) acts = acts || !apply_form(rows[i], w).is_zero();
    if (acts) {
      out.push_back(static_cast<int>(i) + 1);
      space = vanishing_subspace({rows[i]}, space);
    }
    if (space.empty()) break;
  }
  return out;
}

// Archimedean class of a single residue value: the 1-based position of its
// first nonzero entry. The identity (the zero tuple) and BOTTOM lie in no
// class.
inline int class_of(const LexTuple& x) {
  require(!x.is_bottom(), errc::identity_has_no_class,
          "BOTTOM has no archimedean class");
  for (int i = 0; i < x.width(); ++i)
    if (x[i].sign() != 0) return i + 1;
  fail(errc::identity_has_no_class, "the identity has no archimedean class");
}

}  // namespace tropadic
