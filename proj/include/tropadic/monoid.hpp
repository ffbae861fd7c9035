#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropadic/cone.hpp"
#include "tropadic/error.hpp"
#include "tropadic/field_scalar.hpp"

namespace tropadic {

enum class MonoidKind { kLattice, kAffine, kCone };

// The exponent monoid M of the monoid algebra S[M]: the lattice Z^n, the
// free monoid N^n, or sigma-dual intersect Z^n for a strongly convex cone
// sigma. The first two are the sigma = {0} and sigma = negative orthant
// cases, and effective_sigma() exposes that uniform view where face
// machinery wants it; membership stays a direct inequality test.
class ToricMonoid {
 public:
  static ToricMonoid lattice(size_t n) {
    return ToricMonoid(MonoidKind::kLattice, n, std::nullopt);
  }
  static ToricMonoid affine(size_t n) {
    return ToricMonoid(MonoidKind::kAffine, n, std::nullopt);
  }
  static ToricMonoid cone_monoid(Cone sigma) {
    size_t n = sigma.ambient();
    return ToricMonoid(MonoidKind::kCone, n, std::move(sigma));
  }

  MonoidKind kind() const { return kind_; }
  size_t rank() const { return n_; }

  const Cone& sigma() const {
    require(sigma_.has_value(), errc::invalid_argument,
            "monoid has no stored cone");
    return *sigma_;
  }

  Cone effective_sigma() const {
    if (kind_ == MonoidKind::kCone) return *sigma_;
    ZMat rays;
    if (kind_ == MonoidKind::kAffine) {
      for (size_t i = 0; i < n_; ++i) {
        ZVec e(n_, 0);
        e[i] = -1;
        rays.push_back(std::move(e));
      }
    }
    return Cone(n_, std::move(rays));
  }

  bool contains(const ZVec& u) const {
    require(u.size() == n_, errc::dimension_mismatch,
            "exponent length " + std::to_string(u.size()) + " in rank " +
                std::to_string(n_) + " monoid");
    switch (kind_) {
      case MonoidKind::kLattice:
        return true;
      case MonoidKind::kAffine:
        for (const mpz_class& x : u)
          if (x < 0) return false;
        return true;
      case MonoidKind::kCone:
        return sigma_->dual_contains_z(u);
    }
    return false;
  }

  // Finite monoid generating set: standard generators for the lattice and
  // affine cases, the Hilbert basis otherwise (rank-capped, see geometry).
  ZMat generating_set() const {
    ZMat gens;
    switch (kind_) {
      case MonoidKind::kLattice:
        for (size_t i = 0; i < n_; ++i) {
          ZVec e(n_, 0);
          e[i] = 1;
          gens.push_back(e);
          e[i] = -1;
          gens.push_back(e);
        }
        return gens;
      case MonoidKind::kAffine:
        for (size_t i = 0; i < n_; ++i) {
          ZVec e(n_, 0);
          e[i] = 1;
          gens.push_back(std::move(e));
        }
        return gens;
      case MonoidKind::kCone:
        if (!hilbert_) hilbert_ = hilbert_basis(*sigma_);
        return *hilbert_;
    }
    return gens;
  }

  friend bool operator==(const ToricMonoid& a, const ToricMonoid& b) {
    if (a.kind_ != b.kind_ || a.n_ != b.n_) return false;
    if (a.kind_ != MonoidKind::kCone) return true;
    ZMat ra = a.sigma_->rays(), rb = b.sigma_->rays();
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    return ra == rb;
  }
  friend bool operator!=(const ToricMonoid& a, const ToricMonoid& b) {
    return !(a == b);
  }

  std::string str() const {
    switch (kind_) {
      case MonoidKind::kLattice:
        return "ZZ^" + std::to_string(n_);
      case MonoidKind::kAffine:
        return "NN^" + std::to_string(n_);
      case MonoidKind::kCone: {
        std::string out = "cone{rays=[";
        const ZMat& rays = sigma_->rays();
        for (size_t i = 0; i < rays.size(); ++i) {
          if (i) out += ",";
          out += "[";
          for (size_t j = 0; j < n_; ++j) {
            if (j) out += ",";
            out += rays[i][j].get_str();
          }
          out += "]";
        }
        return out + "]}";
      }
    }
    return "";
  }

 private:
  ToricMonoid(MonoidKind kind, size_t n, std::optional<Cone> sigma)
      : kind_(kind), n_(n), sigma_(std::move(sigma)) {}

  MonoidKind kind_;
  size_t n_;
  std::optional<Cone> sigma_;
  mutable std::optional<ZMat> hilbert_;
};

// A monomial t^a chi^u written log-side: coeff holds a (an element of
// Gamma), exp holds u. Coefficient arithmetic is therefore additive.
struct Term {
  FieldScalar coeff;
  ZVec exp;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.exp == b.exp;
  }

  std::string str() const {
    std::string out = "t^" + coeff.str();
    for (size_t i = 0; i < exp.size(); ++i) {
      if (exp[i] == 0) continue;
      out += "*x" + std::to_string(i + 1) + "^" + exp[i].get_str();
    }
    return out;
  }
};

inline Term term_mul(const Term& a, const Term& b) {
  require(a.exp.size() == b.exp.size(), errc::dimension_mismatch,
          "term product across ranks");
  ZVec e(a.exp.size());
  for (size_t i = 0; i < e.size(); ++i) e[i] = a.exp[i] + b.exp[i];
  return Term{a.coeff + b.coeff, std::move(e)};
}

// An element of S[M] in canonical form: at most one coefficient per
// exponent, realized as the larger one whenever a sum would collide (the
// coefficient semifield is totally ordered, so a two-term sum with equal
// exponent IS the bigger term). The zero polynomial is the empty map.
class Polynomial {
 public:
  explicit Polynomial(ToricMonoid monoid) : monoid_(std::move(monoid)) {}

  static Polynomial zero(ToricMonoid monoid) {
    return Polynomial(std::move(monoid));
  }

  static Polynomial term(ToricMonoid monoid, const Term& t) {
    Polynomial f(std::move(monoid));
    f.add_term(t);
    return f;
  }

  const ToricMonoid& monoid() const { return monoid_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<ZVec, FieldScalar>& terms() const { return terms_; }

  void add_term(const Term& t) {
    require(monoid_.contains(t.exp), errc::invalid_argument,
            "exponent outside the monoid: " + t.str());
    auto it = terms_.find(t.exp);
    if (it == terms_.end()) {
      terms_.emplace(t.exp, t.coeff);
    } else if (it->second < t.coeff) {
      it->second = t.coeff;
    }
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.monoid_ == b.monoid_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [u, a] : terms_) {
      if (!out.empty()) out += " + ";
      out += Term{a, u}.str();
    }
    return out;
  }

 private:
  ToricMonoid monoid_;
  std::map<ZVec, FieldScalar> terms_;
};

inline Polynomial poly_add(const Polynomial& f, const Polynomial& g) {
  require(f.monoid() == g.monoid(), errc::monoid_mismatch,
          "sum across different monoids");
  Polynomial out = f;
  for (const auto& [u, a] : g.terms()) out.add_term(Term{a, u});
  return out;
}

inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
  require(f.monoid() == g.monoid(), errc::monoid_mismatch,
          "product across different monoids");
  Polynomial out(f.monoid());
  for (const auto& [u, a] : f.terms())
    for (const auto& [v, b] : g.terms())
      out.add_term(term_mul(Term{a, u}, Term{b, v}));
  return out;
}

}  // namespace tropadic
