#pragma once

#include <stdexcept>
#include <string>

namespace tropadic {

enum class errc {
  division_by_zero,
  width_mismatch,
  dimension_mismatch,
  monoid_mismatch,
  base_mismatch,
  gamma_mismatch,
  not_in_cont,
  not_in_cont_interior,
  bottom_column_hit,
  identity_has_no_class,
  insufficient_precision,
  not_in_image,
  not_certified,
  rank_too_large,
  w_perpendicular,
  no_generators,
  parse_error,
  invalid_matrix,
  invalid_cone,
  invalid_argument,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "DivisionByZero";
    case errc::width_mismatch: return "WidthMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::monoid_mismatch: return "MonoidMismatch";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::gamma_mismatch: return "GammaMismatch";
    case errc::not_in_cont: return "NotInCont";
    case errc::not_in_cont_interior: return "NotInContInterior";
    case errc::bottom_column_hit: return "BottomColumnHit";
    case errc::identity_has_no_class: return "IdentityHasNoClass";
    case errc::insufficient_precision: return "InsufficientPrecision";
    case errc::not_in_image: return "NotInImage";
    case errc::not_certified: return "NotCertified";
    case errc::rank_too_large: return "RankTooLarge";
    case errc::w_perpendicular: return "WPerpendicular";
    case errc::no_generators: return "NoGenerators";
    case errc::parse_error: return "ParseError";
    case errc::invalid_matrix: return "InvalidMatrix";
    case errc::invalid_cone: return "InvalidCone";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

class tropadic_error : public std::runtime_error {
 public:
  tropadic_error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw tropadic_error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace tropadic
