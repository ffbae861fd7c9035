#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tropadic/prime.hpp"
#include "tropadic/spectrum.hpp"

namespace tropadic {

// Element of Cnvg_P at desk scale: a stored polynomial part plus a precision
// radius, the ball model of a complete ultrametric space. Every stored term
// sits strictly above the radius; terms at or below it are indistinguishable
// from tail noise and are dropped on construction. An exact series (equal to
// its polynomial part) is encoded with radius BOTTOM.
//
// The base is stored in normal form, so all reported values are independent
// of the presented defining matrix and project onto the values at
// maximal_above(P) coordinatewise.
class TruncatedSeries {
 public:
  TruncatedSeries(const PrimeCongruence& base, const Polynomial& terms,
                  LexTuple eps)
      : base_(normalize(base)), terms_(base_.monoid()), eps_(std::move(eps)) {
    require(base_.matrix().at(0, 0).value().sign() > 0,
            errc::not_in_cont_interior,
            "series base must lie in the interior of Cont");
    require(base_.ideal_kernel_face().trivial(), errc::not_in_cont_interior,
            "series base must have trivial ideal-kernel");
    require(terms.monoid() == base_.monoid(), errc::monoid_mismatch,
            "series terms over a foreign monoid");
    if (eps_.is_bottom())
      eps_ = LexTuple::bottom(static_cast<int>(base_.height()));
    require(eps_.width() == static_cast<int>(base_.height()),
            errc::width_mismatch, "precision width must match the base");
    for (const auto& [u, c] : terms.terms()) {
      Term t{c, u};
      if (LexTuple::compare(psi_eval(base_, t), eps_) > 0) terms_.add_term(t);
    }
  }

  static TruncatedSeries exact(const PrimeCongruence& base,
                               const Polynomial& terms) {
    return TruncatedSeries(base, terms, LexTuple::bottom(1));
  }

  const PrimeCongruence& base() const { return base_; }
  const Polynomial& terms() const { return terms_; }
  const LexTuple& precision() const { return eps_; }
  bool is_exact() const { return eps_.is_bottom(); }

 private:
  PrimeCongruence base_;
  Polynomial terms_;
  LexTuple eps_;
};

inline bool same_base(const TruncatedSeries& f, const TruncatedSeries& g) {
  const PrimeCongruence& p = f.base();
  const PrimeCongruence& q = g.base();
  if (!(p.monoid() == q.monoid()) || !(p.gamma() == q.gamma())) return false;
  if (p.height() != q.height()) return false;
  for (size_t i = 0; i < p.height(); ++i)
    for (size_t j = 0; j < p.matrix().width(); ++j)
      if (!(p.matrix().at(i, j) == q.matrix().at(i, j))) return false;
  return true;
}

// Norm of the stored polynomial part: max of psi over stored terms, BOTTOM
// for the zero polynomial.
inline LexTuple stored_norm(const TruncatedSeries& f) {
  LexTuple m = LexTuple::bottom(static_cast<int>(f.base().height()));
  for (const auto& [u, c] : f.terms().terms())
    m = trop_add(m, psi_eval(f.base(), Term{c, u}));
  return m;
}

// |f|_{Q_P}, the norm under the canonical extension. Well defined only when
// the stored part dominates the radius (or nothing hides below it).
inline LexTuple norm_at(const TruncatedSeries& f) {
  LexTuple m = stored_norm(f);
  if (!f.is_exact())
    require(LexTuple::compare(m, f.precision()) > 0,
            errc::insufficient_precision,
            "norm is not determined at this precision");
  return m;
}

inline TruncatedSeries series_add(const TruncatedSeries& f,
                                  const TruncatedSeries& g) {
  require(same_base(f, g), errc::base_mismatch,
          "sum of series over different bases");
  return TruncatedSeries(f.base(), poly_add(f.terms(), g.terms()),
                         trop_add(f.precision(), g.precision()));
}

// Product radius from the symmetric form of the estimate
// d(fh, gh) <= d(f, g) |h|: each factor's radius is scaled by the other
// factor's full norm (stored part joined with its own radius).
inline TruncatedSeries series_mul(const TruncatedSeries& f,
                                  const TruncatedSeries& g) {
  require(same_base(f, g), errc::base_mismatch,
          "product of series over different bases");
  LexTuple nf = trop_add(stored_norm(f), f.precision());
  LexTuple ng = trop_add(stored_norm(g), g.precision());
  LexTuple eps = trop_add(trop_mul(f.precision(), ng),
                          trop_mul(g.precision(), nf));
  return TruncatedSeries(f.base(), poly_mul(f.terms(), g.terms()), eps);
}

enum class DistanceKind { kExact, kBelowPrecision };

// Either the exact value of d_P(f, g), or only the upper bound max(eps_f,
// eps_g) when the stored parts agree down to the radius.
struct DistanceResult {
  DistanceKind kind = DistanceKind::kExact;
  LexTuple value = LexTuple::bottom(1);
};

inline DistanceResult distance(const TruncatedSeries& f,
                               const TruncatedSeries& g) {
  require(same_base(f, g), errc::base_mismatch,
          "distance of series over different bases");
  const PrimeCongruence& p = f.base();
  const auto& ft = f.terms().terms();
  const auto& gt = g.terms().terms();
  LexTuple d = LexTuple::bottom(static_cast<int>(p.height()));
  for (const auto& [u, c] : ft) {
    auto it = gt.find(u);
    FieldScalar top = c;
    if (it != gt.end()) {
      if ((c - it->second).sign() == 0) continue;
      if ((it->second - c).sign() > 0) top = it->second;
    }
    d = trop_add(d, psi_eval(p, Term{top, u}));
  }
  for (const auto& [u, c] : gt)
    if (ft.find(u) == ft.end()) d = trop_add(d, psi_eval(p, Term{c, u}));

  if (f.is_exact() && g.is_exact()) return {DistanceKind::kExact, d};
  LexTuple bound = trop_add(f.precision(), g.precision());
  if (LexTuple::compare(d, bound) > 0) return {DistanceKind::kExact, d};
  return {DistanceKind::kBelowPrecision, bound};
}

// Value and leading terms of f at a prime P' that extends to Cnvg_P. The
// stored part decides both exactly when its P'-leading value is pi-separated
// from the radius: any tail term m has pi(|m|_{P'}) <= pi(|m|_P) <= pi(eps)
// by property (*), so separation means the tail cannot overturn the report.
// Exact series have no tail and skip the gate.
struct EvalResult {
  LexTuple value = LexTuple::bottom(1);
  std::vector<Term> leading;
};

inline EvalResult eval_at(const TruncatedSeries& f,
                          const PrimeCongruence& pprime) {
  require(extends_to_cnvg(pprime, f.base()), errc::not_in_image,
          "the evaluation prime does not extend to Cnvg over this base");
  auto [value, leading] = poly_leading_terms(normalize(pprime), f.terms());
  if (!f.is_exact())
    require(ExtScalar::compare(pi_truncate(value),
                               pi_truncate(f.precision())) > 0,
            errc::insufficient_precision,
            "leading value not separated from the precision radius");
  return {std::move(value), std::move(leading)};
}

// Membership of the pair (f, g) in the closure prime over P': equality of
// the two evaluations.
inline bool closure_member(const TruncatedSeries& f, const TruncatedSeries& g,
                           const PrimeCongruence& pprime) {
  require(same_base(f, g), errc::base_mismatch,
          "closure membership needs a pair over one base");
  return eval_at(f, pprime).value == eval_at(g, pprime).value;
}

// An affine family of terms m_n = t^(c0 + n step) chi^(e0 + n w) with an
// optional decay certificate: from index start on, the term ratio is bounded
// by a fixed ratio term of negative value. A stream may also declare itself
// finite (count terms), in which case it is a polynomial in disguise.
struct StreamCertificate {
  long start = 0;
  Term ratio;
};

class SeriesStream {
 public:
  SeriesStream(FieldScalar coeff0, FieldScalar coeff_step, ZVec exp0,
               ZVec exp_step, std::optional<StreamCertificate> cert = {},
               std::optional<long> count = {})
      : c0_(std::move(coeff0)),
        cstep_(std::move(coeff_step)),
        e0_(std::move(exp0)),
        estep_(std::move(exp_step)),
        cert_(std::move(cert)),
        count_(count) {
    require(e0_.size() == estep_.size(), errc::dimension_mismatch,
            "stream seed and step exponents of different ranks");
    if (cert_)
      require(cert_->start >= 0, errc::invalid_argument,
              "certificate start index must be nonnegative");
    if (count_)
      require(*count_ >= 0, errc::invalid_argument,
              "stream term count must be nonnegative");
  }

  Term term(long n) const {
    FieldScalar c = c0_ + FieldScalar(mpq_class(n)) * cstep_;
    ZVec e(e0_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = e0_[i] + n * estep_[i];
    return Term{std::move(c), std::move(e)};
  }

  const FieldScalar& coeff0() const { return c0_; }
  const FieldScalar& coeff_step() const { return cstep_; }
  const ZVec& exp0() const { return e0_; }
  const ZVec& exp_step() const { return estep_; }
  const std::optional<StreamCertificate>& cert() const { return cert_; }
  const std::optional<long>& count() const { return count_; }

 private:
  FieldScalar c0_, cstep_;
  ZVec e0_, estep_;
  std::optional<StreamCertificate> cert_;
  std::optional<long> count_;
};

enum class ConvergesKind { kCertified, kVerifiedToHorizon, kDiverges };

struct ConvergesVerdict {
  ConvergesKind kind = ConvergesKind::kVerifiedToHorizon;
  std::optional<mpq_class> threshold;
  std::vector<long> exceeding;
};

// Convergence of the stream at P. The affine structure makes the psi image
// walk by a fixed step R per index, so the archimedean reading is decisive:
// a nonnegative pi(R) pins infinitely many terms above some threshold
// (DIVERGES, with a witness threshold and the exceeding indices up to the
// horizon), and a negative one decays past every threshold. A presented
// certificate is checked on [start, start + horizon] and upgrades the
// verdict to CERTIFIED; otherwise the defining finiteness condition is
// spot-checked for sampled thresholds and reported as VERIFIED_TO_HORIZON.
inline ConvergesVerdict converges(const SeriesStream& s,
                                  const PrimeCongruence& p,
                                  long horizon = 64) {
  require(in_cont(p), errc::not_in_cont_interior,
          "convergence base must lie in the interior of Cont");
  require(p.ideal_kernel_face().trivial(), errc::not_in_cont_interior,
          "convergence base must have trivial ideal-kernel");
  require(horizon >= 1, errc::invalid_argument, "horizon must be positive");
  PrimeCongruence q = normalize(p);
  require(q.monoid().contains(s.exp0()), errc::invalid_argument,
          "stream seed exponent outside the monoid");
  require(q.monoid().contains(s.exp_step()), errc::invalid_argument,
          "stream step exponent outside the monoid");

  if (s.count()) {
    // A finite stream exceeds any threshold at most count times.
    ConvergesVerdict v;
    v.kind = ConvergesKind::kCertified;
    return v;
  }

  int k = static_cast<int>(q.height());
  LexTuple a0 = psi_eval(q, s.term(0));
  LexTuple a1 = psi_eval(q, s.term(1));
  std::vector<FieldScalar> diff;
  for (int i = 0; i < k; ++i) diff.push_back(a1[i] - a0[i]);
  LexTuple r{std::move(diff)};

  ZVec zero_exp(q.rank(), 0);
  if (r[0].sign() >= 0) {
    ConvergesVerdict v;
    v.kind = ConvergesKind::kDiverges;
    mpq_class g = rational_between(a0[0] - FieldScalar(1), a0[0]);
    v.threshold = g;
    LexTuple b = psi_eval(q, Term{FieldScalar(g), zero_exp});
    for (long n = 0; n <= horizon; ++n)
      if (LexTuple::compare(psi_eval(q, s.term(n)), b) >= 0)
        v.exceeding.push_back(n);
    return v;
  }

  if (s.cert()) {
    const StreamCertificate& cert = *s.cert();
    bool valid = q.monoid().contains(cert.ratio.exp);
    if (valid) {
      LexTuple rstar = psi_eval(q, cert.ratio);
      valid = rstar.sgn() < 0;
      for (long n = cert.start; valid && n <= cert.start + horizon; ++n) {
        LexTuple lhs = psi_eval(q, s.term(n + 1));
        LexTuple rhs = trop_mul(psi_eval(q, s.term(n)), rstar);
        valid = LexTuple::compare(lhs, rhs) <= 0;
      }
    }
    if (valid) {
      ConvergesVerdict v;
      v.kind = ConvergesKind::kCertified;
      return v;
    }
  }

  // No usable certificate: check that sampled thresholds along the decay are
  // each exceeded only finitely often inside a doubled window.
  for (int j = 1; j <= 3; ++j) {
    FieldScalar target = a0[0] + FieldScalar(mpq_class(horizon * j, 4)) * r[0];
    mpq_class g = rational_between(target + r[0], target);
    LexTuple b = psi_eval(q, Term{FieldScalar(g), zero_exp});
    std::vector<long> exceeding;
    for (long n = 0; n <= 2 * horizon; ++n)
      if (LexTuple::compare(psi_eval(q, s.term(n)), b) >= 0)
        exceeding.push_back(n);
    if (exceeding.size() == static_cast<size_t>(2 * horizon + 1)) {
      ConvergesVerdict v;
      v.kind = ConvergesKind::kDiverges;
      v.threshold = g;
      v.exceeding = std::move(exceeding);
      return v;
    }
  }
  ConvergesVerdict v;
  v.kind = ConvergesKind::kVerifiedToHorizon;
  return v;
}

// The finite sum of the stream terms with psi value at least Psi(b); the
// remaining tail sits strictly below b, so the partial sum is within b of
// the full series.
inline Polynomial partial_sum(const SeriesStream& s, const PrimeCongruence& p,
                              const Term& b, long horizon = 64) {
  ConvergesVerdict v = converges(s, p, horizon);
  require(v.kind == ConvergesKind::kCertified, errc::not_certified,
          "partial sums need a certified stream");
  PrimeCongruence q = normalize(p);
  LexTuple vb = psi_eval(q, b);
  Polynomial out(p.monoid());
  if (s.count()) {
    for (long n = 0; n < *s.count(); ++n)
      if (LexTuple::compare(psi_eval(q, s.term(n)), vb) >= 0)
        out.add_term(s.term(n));
    return out;
  }
  // Certified infinite streams step by a fixed negative lex amount, so the
  // kept terms form a prefix.
  for (long n = 0;; ++n) {
    if (LexTuple::compare(psi_eval(q, s.term(n)), vb) < 0) break;
    out.add_term(s.term(n));
  }
  return out;
}

}  // namespace tropadic
