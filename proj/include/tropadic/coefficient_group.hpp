#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropadic/error.hpp"
#include "tropadic/field_scalar.hpp"
#include "tropadic/qlinalg.hpp"

namespace tropadic {

// The value group Gamma of the coefficient sub-semifield S: the set of
// admissible exponents a in t^a. Gamma is a Q-subspace of Q(sqrt2, sqrt3)
// containing the rationals, described by a Q-basis whose first element is
// always 1. The three supported forms are QQ (basis {1}), an explicit
// span, and the full field (basis {1, sqrt2, sqrt3, sqrt6}).
class CoefficientGroup {
 public:
  static CoefficientGroup rationals() {
    return CoefficientGroup(Kind::kRational, {FieldScalar(1)});
  }

  static CoefficientGroup full() {
    return CoefficientGroup(Kind::kFull,
                            {FieldScalar(1), FieldScalar::sqrt2(),
                             FieldScalar::sqrt3(), FieldScalar::sqrt6()});
  }

  // The span form requires a Q-linearly independent list containing 1 in
  // its span; anything else is rejected rather than silently completed.
  static CoefficientGroup span(std::vector<FieldScalar> gens) {
    require(!gens.empty(), errc::invalid_argument, "empty gamma span");
    QMat m;
    for (const FieldScalar& g : gens) m.push_back(flatten({g}));
    require(rank(m) == gens.size(), errc::invalid_argument,
            "gamma span generators are linearly dependent");
    CoefficientGroup out(Kind::kSpan, std::move(gens));
    require(out.contains(FieldScalar(1)), errc::invalid_argument,
            "gamma span does not contain 1");
    return out;
  }

  const std::vector<FieldScalar>& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  bool is_full() const { return kind_ == Kind::kFull; }
  bool is_rational() const { return kind_ == Kind::kRational; }

  // Rational coordinates of x over basis(), if x lies in the group.
  std::optional<QVec> coordinates(const FieldScalar& x) const {
    if (kind_ == Kind::kFull)
      return QVec{x.coord(0), x.coord(1), x.coord(2), x.coord(3)};
    if (kind_ == Kind::kRational) {
      if (!x.is_rational()) return std::nullopt;
      return QVec{x.coord(0)};
    }
    // Columns are basis vectors in Q^4, right side is x.
    QMat a(4, QVec(basis_.size()));
    for (size_t j = 0; j < basis_.size(); ++j)
      for (int i = 0; i < 4; ++i) a[static_cast<size_t>(i)][j] = basis_[j].coord(i);
    QVec b{x.coord(0), x.coord(1), x.coord(2), x.coord(3)};
    return solve(std::move(a), b);
  }

  bool contains(const FieldScalar& x) const {
    return coordinates(x).has_value();
  }

  // Groups are compared by content, not by presentation.
  friend bool operator==(const CoefficientGroup& a, const CoefficientGroup& b) {
    if (a.dimension() != b.dimension()) return false;
    for (const FieldScalar& g : a.basis_)
      if (!b.contains(g)) return false;
    return true;
  }
  friend bool operator!=(const CoefficientGroup& a, const CoefficientGroup& b) {
    return !(a == b);
  }

  std::string str() const {
    if (kind_ == Kind::kRational) return "QQ";
    if (kind_ == Kind::kFull) return "full";
    std::string out = "span[";
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (i) out += ", ";
      out += basis_[i].str();
    }
    return out + "]";
  }

 private:
  enum class Kind { kRational, kSpan, kFull };

  CoefficientGroup(Kind kind, std::vector<FieldScalar> basis)
      : kind_(kind), basis_(std::move(basis)) {}

  Kind kind_;
  std::vector<FieldScalar> basis_;
};

}  // namespace tropadic
