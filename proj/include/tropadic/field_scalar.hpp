#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "tropadic/error.hpp"

namespace tropadic {

// Exact elements of the real field Q(sqrt2, sqrt3), stored as rational
// coordinates over the basis {1, sqrt2, sqrt3, sqrt6}. Every matrix entry,
// coefficient exponent and lex-tuple entry in the library is one of these.
//
// The only operation that is not plain coordinate bookkeeping is sign():
// a nonzero value is separated from 0 by refining dyadic enclosures of the
// three radicals, and the all-coordinates-zero case is the exact zero test
// (the basis is linearly independent over Q), so refinement always halts.
class FieldScalar {
 public:
  FieldScalar() = default;
  FieldScalar(long v) { q_[0] = v; }
  FieldScalar(int v) { q_[0] = v; }
  explicit FieldScalar(mpq_class a) { q_[0] = std::move(a); }
  FieldScalar(mpq_class a, mpq_class b, mpq_class c, mpq_class d)
      : q_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

  static FieldScalar sqrt2() { return FieldScalar(0, 1, 0, 0); }
  static FieldScalar sqrt3() { return FieldScalar(0, 0, 1, 0); }
  static FieldScalar sqrt6() { return FieldScalar(0, 0, 0, 1); }

  const mpq_class& coord(int i) const { return q_[static_cast<size_t>(i)]; }

  bool is_zero() const {
    return q_[0] == 0 && q_[1] == 0 && q_[2] == 0 && q_[3] == 0;
  }
  bool is_rational() const { return q_[1] == 0 && q_[2] == 0 && q_[3] == 0; }

  FieldScalar operator-() const {
    return FieldScalar(-q_[0], -q_[1], -q_[2], -q_[3]);
  }

  FieldScalar& operator+=(const FieldScalar& o) {
    for (int i = 0; i < 4; ++i) q_[i] += o.q_[i];
    return *this;
  }
  FieldScalar& operator-=(const FieldScalar& o) {
    for (int i = 0; i < 4; ++i) q_[i] -= o.q_[i];
    return *this;
  }

  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) {
    a += b;
    return a;
  }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) {
    a -= b;
    return a;
  }

  friend FieldScalar operator*(const FieldScalar& x, const FieldScalar& y) {
    const mpq_class &a1 = x.q_[0], &b1 = x.q_[1], &c1 = x.q_[2], &d1 = x.q_[3];
    const mpq_class &a2 = y.q_[0], &b2 = y.q_[1], &c2 = y.q_[2], &d2 = y.q_[3];
    return FieldScalar(
        a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
        a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
        a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
        a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2);
  }

  FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

  // Exact reciprocal by two conjugation steps: first over Q(sqrt2) to clear
  // sqrt3, then over Q to clear sqrt2. Each denominator is nonzero for
  // nonzero input because sqrt3 is not in Q(sqrt2) and sqrt2 is not in Q.
  FieldScalar inverse() const {
    require(!is_zero(), errc::division_by_zero, "inverse of zero");
    // x = u + v*sqrt3 with u = (a, b), v = (c, d) in Q(sqrt2)
    const mpq_class &a = q_[0], &b = q_[1], &c = q_[2], &d = q_[3];
    // denom0 = u^2 - 3 v^2 = (p, q) in Q(sqrt2)
    mpq_class p = a * a + 2 * b * b - 3 * (c * c + 2 * d * d);
    mpq_class q = 2 * a * b - 6 * c * d;
    // 1/denom0 = (p - q*sqrt2) / (p^2 - 2 q^2)
    mpq_class D = p * p - 2 * q * q;
    mpq_class g = p / D, h = -q / D;
    // 1/x = (u - v*sqrt3) * (g, h)
    return FieldScalar(a * g + 2 * b * h, a * h + b * g, -(c * g + 2 * d * h),
                       -(c * h + d * g));
  }

  friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) {
    return a * b.inverse();
  }

  friend bool operator==(const FieldScalar& a, const FieldScalar& b) {
    return a.q_ == b.q_;
  }
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) {
    return !(a == b);
  }

  int sign() const {
    if (q_[1] == 0 && q_[2] == 0 && q_[3] == 0) return sgn(q_[0]);
    for (unsigned prec = 16;; prec *= 2) {
      auto [lo, hi] = enclosure(prec);
      if (lo > 0) return 1;
      if (hi < 0) return -1;
    }
  }

  friend bool operator<(const FieldScalar& a, const FieldScalar& b) {
    return (a - b).sign() < 0;
  }
  friend bool operator>(const FieldScalar& a, const FieldScalar& b) {
    return (a - b).sign() > 0;
  }
  friend bool operator<=(const FieldScalar& a, const FieldScalar& b) {
    return (a - b).sign() <= 0;
  }
  friend bool operator>=(const FieldScalar& a, const FieldScalar& b) {
    return (a - b).sign() >= 0;
  }

  // Exact dyadic enclosure [lo, hi] of the real value, endpoints on the grid
  // 2^-prec. Shared by sign() and the rational-in-interval search.
  std::pair<mpq_class, mpq_class> enclosure(unsigned prec) const {
    mpz_class denom = 1;
    denom <<= prec;
    mpq_class lo = q_[0], hi = q_[0];
    static const long radicand[3] = {2, 3, 6};
    for (int i = 0; i < 3; ++i) {
      const mpq_class& coef = q_[static_cast<size_t>(i + 1)];
      if (coef == 0) continue;
      mpz_class shifted = radicand[i];
      shifted <<= 2 * prec;
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), shifted.get_mpz_t());
      mpq_class rlo(root, denom), rhi(root + 1, denom);
      rlo.canonicalize();
      rhi.canonicalize();
      if (coef > 0) {
        lo += coef * rlo;
        hi += coef * rhi;
      } else {
        lo += coef * rhi;
        hi += coef * rlo;
      }
    }
    return {lo, hi};
  }

  double to_double() const {
    static const double r[4] = {1.0, 1.4142135623730951, 1.7320508075688772,
                                2.449489742783178};
    double s = 0;
    for (int i = 0; i < 4; ++i) s += q_[static_cast<size_t>(i)].get_d() * r[i];
    return s;
  }

  // Text form matching the input grammar, e.g. "-5/2", "1+1r2", "3r3-1r6".
  std::string str() const {
    static const char* suffix[4] = {"", "r2", "r3", "r6"};
    std::string out;
    for (int i = 0; i < 4; ++i) {
      const mpq_class& c = q_[static_cast<size_t>(i)];
      if (c == 0) continue;
      if (out.empty()) {
        out = c.get_str();
      } else {
        out += (c > 0) ? "+" : "-";
        out += mpq_class(abs(c)).get_str();
      }
      out += suffix[i];
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::array<mpq_class, 4> q_{};
};

// A value of the tropical semifield T = R u {-inf}: either a FieldScalar or
// BOTTOM (the tropical zero, -inf). Addition is max, multiplication is real
// addition with BOTTOM absorbing.
class ExtScalar {
 public:
  ExtScalar() : bottom_(true) {}
  ExtScalar(FieldScalar v) : bottom_(false), v_(std::move(v)) {}
  ExtScalar(long v) : bottom_(false), v_(v) {}
  ExtScalar(int v) : bottom_(false), v_(v) {}

  static ExtScalar bottom() { return ExtScalar(); }

  bool is_bottom() const { return bottom_; }
  const FieldScalar& value() const {
    require(!bottom_, errc::invalid_argument, "value() on BOTTOM");
    return v_;
  }

  friend bool operator==(const ExtScalar& a, const ExtScalar& b) {
    if (a.bottom_ || b.bottom_) return a.bottom_ == b.bottom_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ExtScalar& a, const ExtScalar& b) {
    return !(a == b);
  }

  // -1, 0, +1 with BOTTOM strictly least.
  static int compare(const ExtScalar& a, const ExtScalar& b) {
    if (a.bottom_ && b.bottom_) return 0;
    if (a.bottom_) return -1;
    if (b.bottom_) return 1;
    return (a.v_ - b.v_).sign();
  }

  std::string str() const { return bottom_ ? "-inf" : v_.str(); }

 private:
  bool bottom_;
  FieldScalar v_;
};

// Tropical sum (max) and product (real +) on T.
inline ExtScalar trop_add(const ExtScalar& a, const ExtScalar& b) {
  return ExtScalar::compare(a, b) >= 0 ? a : b;
}

inline ExtScalar trop_mul(const ExtScalar& a, const ExtScalar& b) {
  if (a.is_bottom() || b.is_bottom()) return ExtScalar::bottom();
  return ExtScalar(a.value() + b.value());
}

// Smallest-effort rational strictly inside the open interval (lo, hi).
// Used by witness constructions; callers guarantee lo < hi.
inline mpq_class rational_between(const FieldScalar& lo, const FieldScalar& hi) {
  for (unsigned j = 0;; ++j) {
    // floor(lo * 2^j) from an enclosure, then exact fix-up
    auto [l, u] = lo.enclosure(j + 8);
    mpz_class denom = 1;
    denom <<= j;
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), mpq_class(l * denom).get_num().get_mpz_t(),
               mpq_class(l * denom).get_den().get_mpz_t());
    k += 1;
    mpq_class cand(k, denom);
    cand.canonicalize();
    while (FieldScalar(cand) <= lo) {
      k += 1;
      cand = mpq_class(k, denom);
      cand.canonicalize();
    }
    if (FieldScalar(cand) < hi) return cand;
  }
}

}  // namespace tropadic
