#pragma once

#include <string>
#include <vector>

#include "tropadic/error.hpp"
#include "tropadic/field_scalar.hpp"

namespace tropadic {

// Element of the k-fold lexicographic product R^k_lex u {bottom}. The BOTTOM
// of the product is a single absorbing element, not a tuple of -inf entries,
// so a LexTuple is either bottom (carrying only its width) or a full vector
// of finite FieldScalar entries. An all-or-nothing representation keeps the
// lex order total: partial -inf patterns never arise from the operations we
// perform (a monomial maps to bottom exactly when it hits a bottom column).
class LexTuple {
 public:
  static LexTuple bottom(int width) { return LexTuple(width, true, {}); }
  static LexTuple zero(int width) {
    return LexTuple(width, false,
                    std::vector<FieldScalar>(static_cast<size_t>(width)));
  }
  explicit LexTuple(std::vector<FieldScalar> entries)
      : width_(static_cast<int>(entries.size())),
        bottom_(false),
        v_(std::move(entries)) {}

  int width() const { return width_; }
  bool is_bottom() const { return bottom_; }

  const FieldScalar& operator[](int i) const {
    require(!bottom_, errc::invalid_argument, "entry of BOTTOM tuple");
    return v_[static_cast<size_t>(i)];
  }

  const std::vector<FieldScalar>& entries() const {
    require(!bottom_, errc::invalid_argument, "entries of BOTTOM tuple");
    return v_;
  }

  // Lexicographic three-way comparison; BOTTOM is strictly least. Widths
  // must agree unless one side is BOTTOM (bottom compares across widths,
  // which lets k-row and k'-row congruences share the BOTTOM monomial).
  static int compare(const LexTuple& a, const LexTuple& b) {
    if (a.bottom_ && b.bottom_) return 0;
    if (a.bottom_) return -1;
    if (b.bottom_) return 1;
    require(a.width_ == b.width_, errc::width_mismatch,
            "lex comparison of widths " + std::to_string(a.width_) + " and " +
                std::to_string(b.width_));
    for (int i = 0; i < a.width_; ++i) {
      int s = (a.v_[static_cast<size_t>(i)] - b.v_[static_cast<size_t>(i)]).sign();
      if (s != 0) return s;
    }
    return 0;
  }

  // Sign against the zero tuple of the same width.
  int sgn() const {
    if (bottom_) return -1;
    for (const FieldScalar& x : v_) {
      int s = x.sign();
      if (s != 0) return s;
    }
    return 0;
  }

  friend bool operator==(const LexTuple& a, const LexTuple& b) {
    if (a.bottom_ || b.bottom_) return a.bottom_ && b.bottom_;
    return a.width_ == b.width_ && a.v_ == b.v_;
  }
  friend bool operator!=(const LexTuple& a, const LexTuple& b) {
    return !(a == b);
  }

  std::string str() const {
    if (bottom_) return "-inf";
    std::string out = "(";
    for (int i = 0; i < width_; ++i) {
      if (i) out += ", ";
      out += v_[static_cast<size_t>(i)].str();
    }
    return out + ")";
  }

 private:
  LexTuple(int width, bool bottom, std::vector<FieldScalar> v)
      : width_(width), bottom_(bottom), v_(std::move(v)) {}

  int width_;
  bool bottom_;
  std::vector<FieldScalar> v_;
};

// Semiring operations on R^k_lex u {bottom}: sum is lex max, product is
// entrywise real addition with BOTTOM absorbing.
inline LexTuple trop_add(const LexTuple& a, const LexTuple& b) {
  return LexTuple::compare(a, b) >= 0 ? a : b;
}

inline LexTuple trop_mul(const LexTuple& a, const LexTuple& b) {
  if (a.is_bottom()) return a;
  if (b.is_bottom()) return b;
  require(a.width() == b.width(), errc::width_mismatch,
          "lex product of widths " + std::to_string(a.width()) + " and " +
              std::to_string(b.width()));
  std::vector<FieldScalar> out;
  out.reserve(static_cast<size_t>(a.width()));
  for (int i = 0; i < a.width(); ++i) out.push_back(a[i] + b[i]);
  return LexTuple(std::move(out));
}

// First coordinate of the image, the coarsest archimedean reading of a
// lex value. BOTTOM maps to BOTTOM.
inline ExtScalar pi_truncate(const LexTuple& a) {
  if (a.is_bottom()) return ExtScalar::bottom();
  return ExtScalar(a[0]);
}

// Embed a scalar as (a, 0, ..., 0); the section of pi_truncate.
inline LexTuple j_include(const ExtScalar& a, int width) {
  if (a.is_bottom()) return LexTuple::bottom(width);
  std::vector<FieldScalar> v(static_cast<size_t>(width));
  v[0] = a.value();
  return LexTuple(std::move(v));
}

}  // namespace tropadic
