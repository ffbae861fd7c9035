#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropadic/dimension.hpp"
#include "tropadic/lex_tuple.hpp"

namespace tropadic {

// A finitely generated extension L/S of totally ordered semifields, written
// additively: S^x sits on the first lex coordinate as the Gamma axis and L^x
// is generated over it by the listed tuples.
class ExtensionSpec {
 public:
  ExtensionSpec(CoefficientGroup base, std::vector<LexTuple> generators)
      : base_(std::move(base)), generators_(std::move(generators)) {
    for (const LexTuple& a : generators_) {
      require(!a.is_bottom() && a.sgn() != 0, errc::invalid_argument,
              "extension generators must be nonzero group elements");
      require(a.width() == generators_[0].width(), errc::width_mismatch,
              "extension generators of mixed widths");
    }
  }

  const CoefficientGroup& base() const { return base_; }
  const std::vector<LexTuple>& generators() const { return generators_; }
  int width() const {
    return generators_.empty() ? 1 : generators_[0].width();
  }

 private:
  CoefficientGroup base_;
  std::vector<LexTuple> generators_;
};

// A multiplicative relation a_1^{u_1} ... a_s^{u_s} = t^rhs with rhs in
// Gamma, witnessing algebraic dependence.
struct DependenceWitness {
  std::vector<long> powers;
  FieldScalar rhs;
};

struct IndependenceResult {
  bool independent = true;
  std::optional<DependenceWitness> witness;
};

namespace detail {

inline QVec flatten_tuple(const LexTuple& a) {
  return flatten(a.entries());
}

}  // namespace detail

// The subset is dependent iff some nonzero integer combination of its
// members lands in the Gamma axis. A rational dependence scales to an
// integer one (the group is torsion-free), so plain rational kernel
// computation decides it and yields the witness.
inline IndependenceResult is_alg_independent(const ExtensionSpec& ext,
                                             const std::vector<int>& subset) {
  for (int i : subset)
    require(i >= 0 && i < static_cast<int>(ext.generators().size()),
            errc::invalid_argument, "generator index out of range");
  if (subset.empty()) return {};

  size_t k = ext.width();
  const std::vector<FieldScalar>& gb = ext.base().basis();
  size_t g = gb.size();
  size_t s = subset.size();
  QMat a(4 * k, QVec(s + g, 0));
  for (size_t c = 0; c < s; ++c) {
    QVec col = detail::flatten_tuple(ext.generators()[subset[c]]);
    for (size_t r = 0; r < 4 * k; ++r) a[r][c] = col[r];
  }
  for (size_t l = 0; l < g; ++l)
    for (int t = 0; t < 4; ++t) a[t][s + l] = -gb[l].coord(t);

  for (const QVec& v : kernel_basis(std::move(a))) {
    bool hit = false;
    for (size_t c = 0; c < s; ++c) hit = hit || v[c] != 0;
    if (!hit) continue;
    mpz_class scale = 1;
    for (size_t c = 0; c < s; ++c)
      scale = scale / gcd(scale, v[c].get_den()) * v[c].get_den();
    DependenceWitness w;
    for (size_t c = 0; c < s; ++c)
      w.powers.push_back(
          static_cast<long>(mpq_class(v[c] * scale).get_num().get_si()));
    FieldScalar rhs(0);
    for (size_t l = 0; l < g; ++l)
      rhs = rhs + FieldScalar(v[s + l] * scale) * gb[l];
    w.rhs = rhs;
    return {false, std::move(w)};
  }
  return {};
}

// rk(L^x / S^x): the generators' span modulo the Gamma axis.
inline int trdeg(const ExtensionSpec& ext) {
  size_t k = ext.width();
  QMat w = detail::gamma_axis_space(ext.base(), k);
  QMat vw = w;
  for (const LexTuple& a : ext.generators())
    vw.push_back(detail::flatten_tuple(a));
  return static_cast<int>(rank(std::move(vw)) - rank(std::move(w)));
}

// Greedy transcendence basis: scan in index order, keep a generator iff it
// is independent from Gamma together with everything already kept.
inline std::vector<int> transcendence_basis(const ExtensionSpec& ext) {
  size_t k = ext.width();
  QMat span = detail::gamma_axis_space(ext.base(), k);
  size_t base_rank = rank(span);
  std::vector<int> kept;
  for (size_t i = 0; i < ext.generators().size(); ++i) {
    QMat probe = span;
    probe.push_back(detail::flatten_tuple(ext.generators()[i]));
    if (rank(probe) > base_rank) {
      span = std::move(probe);
      ++base_rank;
      kept.push_back(static_cast<int>(i));
    }
  }
  return kept;
}

}  // namespace tropadic
