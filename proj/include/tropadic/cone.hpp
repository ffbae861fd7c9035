#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <queue>
#include <set>
#include <vector>

#include "tropadic/error.hpp"
#include "tropadic/lp.hpp"
#include "tropadic/qlinalg.hpp"

namespace tropadic {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

inline ZVec primitive_z(ZVec v) {
  mpz_class g = 0;
  for (const mpz_class& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (mpz_class& x : v) x /= g;
  return v;
}

inline mpz_class dot_z(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Is v a nonnegative real combination of the generators? Exact simplex on
// {lambda >= 0 : G lambda = v}.
inline bool cone_member(const ZMat& gens, const ZVec& v) {
  size_t n = v.size();
  QMat a(n, QVec(gens.size()));
  QVec b(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < gens.size(); ++j) a[i][j] = mpq_class(gens[j][i]);
    b[i] = mpq_class(v[i]);
  }
  return lp_feasible(std::move(a), std::move(b));
}

// Drop generators that are nonnegative combinations of the others. The scan
// restarts after each removal so the surviving set is independent of how
// much redundancy the double description step produced.
inline void prune_generators(ZMat& gens) {
  bool removed = true;
  while (removed) {
    removed = false;
    for (size_t i = 0; i < gens.size(); ++i) {
      ZMat others;
      for (size_t j = 0; j < gens.size(); ++j)
        if (j != i) others.push_back(gens[j]);
      if (cone_member(others, gens[i])) {
        gens.erase(gens.begin() + static_cast<long>(i));
        removed = true;
        break;
      }
    }
  }
}

// Generators of {u : <a,u> <= 0 for a in ineqs, <e,u> = 0 for e in eqs} by
// the double description method, starting from the generators +-e_i of R^n
// and inserting one constraint at a time.
inline ZMat dd_generators(size_t n, const ZMat& ineqs, const ZMat& eqs) {
  ZMat gens;
  for (size_t i = 0; i < n; ++i) {
    ZVec e(n, 0);
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }

  ZMat constraints = ineqs;
  for (const ZVec& e : eqs) {
    constraints.push_back(e);
    ZVec neg(e);
    for (mpz_class& x : neg) x = -x;
    constraints.push_back(neg);
  }

  for (const ZVec& c : constraints) {
    ZMat keep, plus, minus;
    for (const ZVec& g : gens) {
      int s = sgn(dot_z(c, g));
      if (s <= 0) keep.push_back(g);
      if (s > 0) plus.push_back(g);
      if (s < 0) minus.push_back(g);
    }
    std::set<ZVec> seen(keep.begin(), keep.end());
    for (const ZVec& p : plus) {
      for (const ZVec& q : minus) {
        mpz_class cp = dot_z(c, p), cq = dot_z(c, q);
        ZVec w(n);
        for (size_t i = 0; i < n; ++i) w[i] = cp * q[i] - cq * p[i];
        w = primitive_z(std::move(w));
        bool zero = true;
        for (const mpz_class& x : w) zero = zero && x == 0;
        if (!zero && seen.insert(w).second) keep.push_back(w);
      }
    }
    gens = std::move(keep);
    prune_generators(gens);
  }
  return gens;
}

// A strongly convex rational polyhedral cone sigma in N = Z^n, the defining
// datum of a toric monoid M = sigma-dual intersected with the lattice. Rays
// are stored primitive and deduplicated; strong convexity is an invariant,
// not a precondition the caller must remember.
class Cone {
 public:
  Cone(size_t ambient, ZMat rays) : n_(ambient) {
    std::set<ZVec> seen;
    for (ZVec& r : rays) {
      require(r.size() == n_, errc::invalid_cone, "ray dimension mismatch");
      bool zero = true;
      for (const mpz_class& x : r) zero = zero && x == 0;
      require(!zero, errc::invalid_cone, "zero ray");
      ZVec p = primitive_z(std::move(r));
      if (seen.insert(p).second) rays_.push_back(std::move(p));
    }
    // Pointedness: no nontrivial nonnegative dependency among the rays,
    // i.e. {lambda >= 0 : R lambda = 0, sum lambda = 1} is empty.
    if (!rays_.empty()) {
      QMat a(n_ + 1, QVec(rays_.size()));
      QVec b(n_ + 1, 0);
      for (size_t j = 0; j < rays_.size(); ++j) {
        for (size_t i = 0; i < n_; ++i) a[i][j] = mpq_class(rays_[j][i]);
        a[n_][j] = 1;
      }
      b[n_] = 1;
      require(!lp_feasible(std::move(a), std::move(b)), errc::invalid_cone,
              "cone is not strongly convex");
    }
  }

  size_t ambient() const { return n_; }
  const ZMat& rays() const { return rays_; }
  bool is_origin() const { return rays_.empty(); }

  // Membership in the dual cone: all ray inequalities <r,u> <= 0.
  bool dual_contains_z(const ZVec& u) const {
    for (const ZVec& r : rays_)
      if (dot_z(r, u) > 0) return false;
    return true;
  }

  ZMat dual_generators() const {
    require(n_ <= 4, errc::rank_too_large, "dual generators need rank <= 4");
    return dd_generators(n_, rays_, {});
  }

  // Generators of sigma-dual intersected with the orthogonal complement of
  // the face spanned by the given rays.
  ZMat dual_face_generators(const std::vector<int>& face) const {
    require(n_ <= 4, errc::rank_too_large, "face sections need rank <= 4");
    ZMat eqs;
    for (int i : face) eqs.push_back(rays_[static_cast<size_t>(i)]);
    return dd_generators(n_, rays_, eqs);
  }

  // Generators of sigma-dual intersected with {u : u_j = 0, j in zeroed}.
  ZMat dual_coordinate_section(const std::vector<int>& zeroed) const {
    require(n_ <= 4, errc::rank_too_large, "coordinate sections need rank <= 4");
    ZMat eqs;
    for (int j : zeroed) {
      ZVec e(n_, 0);
      e[static_cast<size_t>(j)] = 1;
      eqs.push_back(e);
    }
    return dd_generators(n_, rays_, eqs);
  }

  // All faces, each as the sorted list of ray indices it contains; ordered
  // by dimension proxy (subset size) and then lexicographically. A subset S
  // names a face exactly when some u in the dual vanishes on S and is
  // strictly negative on the remaining rays.
  std::vector<std::vector<int>> faces() const {
    require(n_ <= 4, errc::rank_too_large, "face enumeration needs rank <= 4");
    size_t m = rays_.size();
    std::vector<std::vector<int>> out;
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
      std::vector<int> sub;
      for (size_t i = 0; i < m; ++i)
        if (mask & (size_t{1} << i)) sub.push_back(static_cast<int>(i));
      if (face_subset_feasible(sub)) out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
    return out;
  }

  Cone face_cone(const std::vector<int>& face) const {
    ZMat sub;
    for (int i : face) sub.push_back(rays_[static_cast<size_t>(i)]);
    return Cone(n_, std::move(sub));
  }

 private:
  bool face_subset_feasible(const std::vector<int>& sub) const {
    size_t m = rays_.size();
    std::vector<bool> in(m, false);
    for (int i : sub) in[static_cast<size_t>(i)] = true;
    // Variables: u split as p - q (2n), then one slack per strict row.
    size_t strict = m - sub.size();
    QMat a;
    QVec b;
    size_t slack = 0;
    for (size_t i = 0; i < m; ++i) {
      QVec row(2 * n_ + strict, 0);
      for (size_t j = 0; j < n_; ++j) {
        row[j] = mpq_class(rays_[i][j]);
        row[n_ + j] = -row[j];
      }
      if (in[i]) {
        b.push_back(0);
      } else {
        row[2 * n_ + slack++] = 1;
        b.push_back(-1);
      }
      a.push_back(std::move(row));
    }
    return lp_feasible(std::move(a), std::move(b));
  }

  size_t n_;
  ZMat rays_;
};

// Can u be written as a nonnegative integer combination of basis elements?
// Breadth-first search on remainders, bounded by a coordinate box wide
// enough (by the Steinitz rearrangement bound) that some subtraction order
// of any true decomposition stays inside it. A "yes" always carries an
// explicit decomposition; the box only caps the search for "no".
inline bool monoid_decomposes(const ZVec& u, const ZMat& basis) {
  size_t n = u.size();
  ZVec box(n);
  for (size_t j = 0; j < n; ++j) {
    mpz_class s = 0;
    for (const ZVec& b : basis) s += abs(b[j]);
    box[j] = 2 * abs(u[j]) + static_cast<long>(n) * s;
  }
  std::set<ZVec> visited;
  std::queue<ZVec> work;
  work.push(u);
  visited.insert(u);
  while (!work.empty()) {
    ZVec v = work.front();
    work.pop();
    bool zero = true;
    for (const mpz_class& x : v) zero = zero && x == 0;
    if (zero) return true;
    for (const ZVec& b : basis) {
      ZVec w(n);
      bool ok = true;
      for (size_t j = 0; j < n; ++j) {
        w[j] = v[j] - b[j];
        ok = ok && abs(w[j]) <= box[j];
      }
      if (ok && visited.insert(w).second) work.push(w);
    }
  }
  return false;
}

// Generating set of the monoid (sigma-dual) intersect Z^n: enumerate lattice
// points of the dual inside the certification box, then keep, in ascending
// (L1 norm, lex) order, each point that the already-kept ones do not reach.
// With lineality present the result is the deterministic greedy set rather
// than a provably unique minimum; it is certified generating either way.
inline ZMat hilbert_basis(const Cone& sigma) {
  require(sigma.ambient() <= 3, errc::rank_too_large,
          "hilbert basis needs rank <= 3");
  size_t n = sigma.ambient();
  if (n == 0) return {};
  ZMat dual = dd_generators(n, sigma.rays(), {});
  ZVec box(n, 0);
  for (size_t j = 0; j < n; ++j) {
    for (const ZVec& g : dual) box[j] += abs(g[j]);
    box[j] *= static_cast<long>(n);
  }

  std::vector<ZVec> candidates;
  ZVec cur(n);
  auto enumerate = [&](auto&& self, size_t j) -> void {
    if (j == n) {
      bool zero = true;
      for (const mpz_class& x : cur) zero = zero && x == 0;
      if (!zero && sigma.dual_contains_z(cur)) candidates.push_back(cur);
      return;
    }
    for (mpz_class v = -box[j]; v <= box[j]; ++v) {
      cur[j] = v;
      self(self, j + 1);
    }
  };
  enumerate(enumerate, 0);

  std::sort(candidates.begin(), candidates.end(),
            [](const ZVec& a, const ZVec& b) {
              mpz_class la = 0, lb = 0;
              for (const mpz_class& x : a) la += abs(x);
              for (const mpz_class& x : b) lb += abs(x);
              if (la != lb) return la < lb;
              return a < b;
            });

  ZMat basis;
  for (const ZVec& u : candidates)
    if (!monoid_decomposes(u, basis)) basis.push_back(u);
  return basis;
}

}  // namespace tropadic
