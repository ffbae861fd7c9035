#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropadic/containment.hpp"
#include "tropadic/prime.hpp"

namespace tropadic {

// A point of N_R(sigma) = Hom(M, T): finite values on the sublattice
// perpendicular to a face tau, BOTTOM off it. The values vector is read
// against the stored Z-basis of Lambda meet tau-perp.
struct TropicalPoint {
  KernelFace face;
  ZMat basis;
  std::vector<FieldScalar> values;

  ExtScalar eval(const ZVec& u) const {
    bool zero = true;
    for (const mpz_class& x : u) zero = zero && x == 0;
    if (zero) return ExtScalar(FieldScalar(0));
    if (basis.empty()) return ExtScalar::bottom();
    size_t n = u.size();
    QMat a(n, QVec(basis.size()));
    for (size_t l = 0; l < basis.size(); ++l)
      for (size_t i = 0; i < n; ++i) a[i][l] = mpq_class(basis[l][i]);
    QVec rhs;
    for (const mpz_class& x : u) rhs.push_back(mpq_class(x));
    std::optional<QVec> c = solve(std::move(a), rhs);
    if (!c) return ExtScalar::bottom();
    FieldScalar acc(0);
    for (size_t l = 0; l < values.size(); ++l)
      acc += values[l] * FieldScalar((*c)[l]);
    return ExtScalar(std::move(acc));
  }
};

// Phi: the residue point of P, the exponent part of the first row of the
// normalized matrix restricted to the kernel-free sublattice.
inline TropicalPoint phi(const PrimeCongruence& p) {
  PrimeCongruence q = normalize(p);
  require(q.matrix().at(0, 0).value().sign() > 0, errc::not_in_cont,
          "phi needs P in Cont");
  ZMat basis = kernel_perp_lattice(q);
  std::vector<FieldScalar> values;
  for (const ZVec& b : basis) {
    FieldScalar acc(0);
    for (size_t j = 0; j < q.rank(); ++j) {
      if (b[j] == 0) continue;
      acc += q.matrix().at(0, j + 1).value() * FieldScalar(mpq_class(b[j]));
    }
    values.push_back(std::move(acc));
  }
  return TropicalPoint{q.ideal_kernel_face(), std::move(basis),
                       std::move(values)};
}

// Verdict of property (*) with the separating monomial on failure: a term m
// with |m|_P < 1 < |m|_{P'}.
struct PropStarResult {
  bool value = false;
  std::optional<Term> witness;
};

// Property (*) of P' over P, decided on a monoid generating set: (*) holds
// exactly when Phi(P') <= Phi(P) pointwise, with BOTTOM counting as low.
// A violating generator u gives the witness t^alpha chi^u where -alpha is a
// rational strictly between the two pairings; beta = 1 suffices since Gamma
// always contains the rationals.
inline PropStarResult prop_star(const PrimeCongruence& pprime,
                                const PrimeCongruence& p) {
  require(pprime.monoid() == p.monoid(), errc::monoid_mismatch,
          "(*) needs a common monoid");
  require(pprime.gamma() == p.gamma(), errc::gamma_mismatch,
          "(*) needs a common coefficient group");
  require(in_cont(p), errc::not_in_cont, "(*) needs P in Cont");
  require(p.ideal_kernel_face().trivial(), errc::not_in_cont,
          "(*) needs P with trivial ideal-kernel");
  require(in_cont(pprime), errc::not_in_cont, "(*) needs P' in Cont");

  ZMat gens;
  try {
    gens = p.monoid().generating_set();
  } catch (const tropadic_error& e) {
    if (e.code() == errc::rank_too_large)
      fail(errc::no_generators,
           "no monoid generating set available at this rank");
    throw;
  }

  TropicalPoint w = phi(p), wp = phi(pprime);
  for (const ZVec& u : gens) {
    ExtScalar hi = wp.eval(u), lo = w.eval(u);
    if (ExtScalar::compare(hi, lo) <= 0) continue;
    mpq_class alpha = -rational_between(lo.value(), hi.value());
    return {false, Term{FieldScalar(alpha), u}};
  }
  return {true, std::nullopt};
}

// P' extends to a prime of Cnvg_P exactly when (*) holds (the crown
// bijection); the extension itself is evaluated through series eval_at.
inline bool extends_to_cnvg(const PrimeCongruence& pprime,
                            const PrimeCongruence& p) {
  return prop_star(pprime, p).value;
}

// P2 is a specialization of P1 inside Cont exactly when P2 contains P1 as
// a congruence.
inline bool specializes(const PrimeCongruence& p1, const PrimeCongruence& p2) {
  return contains(p2, p1).value;
}

// Membership of P0 in the basic open R(f|g): |f| <= |g| and g outside the
// ideal-kernel.
inline bool basic_open_member(const PrimeCongruence& p0, const Polynomial& f,
                              const Polynomial& g) {
  require(in_cont(p0), errc::not_in_cont, "basic opens live in Cont");
  LexTuple vf = poly_leading_terms(p0, f).first;
  LexTuple vg = poly_leading_terms(p0, g).first;
  return !vg.is_bottom() && LexTuple::compare(vf, vg) <= 0;
}

}  // namespace tropadic
