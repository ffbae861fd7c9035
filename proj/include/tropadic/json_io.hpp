#pragma once

#include <string>

#include "json.hpp"
#include "tropadic/dimension.hpp"
#include "tropadic/series.hpp"
#include "tropadic/spectrum.hpp"

namespace tropadic {

using Json = nlohmann::json;

// JSON rendering of every value the CLI emits. All scalars stay exact: a
// field element is its four rational coordinates as strings, the tropical
// zero is the string "-inf", and a width-1 tuple collapses to its single
// scalar so decisions over height-1 primes read plainly.

inline Json scalar_json(const FieldScalar& x) {
  Json q = Json::array();
  for (int i = 0; i < 4; ++i) q.push_back(x.coord(i).get_str());
  return Json{{"q", std::move(q)}};
}

inline Json ext_json(const ExtScalar& x) {
  if (x.is_bottom()) return Json("-inf");
  return scalar_json(x.value());
}

inline Json lex_json(const LexTuple& v) {
  if (v.is_bottom()) return Json("-inf");
  if (v.width() == 1) return scalar_json(v.entries()[0]);
  Json entries = Json::array();
  for (const FieldScalar& x : v.entries()) entries.push_back(scalar_json(x));
  return Json{{"lex", std::move(entries)}};
}

inline Json zvec_json(const ZVec& u) {
  Json out = Json::array();
  for (const mpz_class& x : u) out.push_back(static_cast<long>(x.get_si()));
  return out;
}

inline Json zmat_json(const ZMat& m) {
  Json out = Json::array();
  for (const ZVec& row : m) out.push_back(zvec_json(row));
  return out;
}

inline Json term_json(const Term& t) {
  return Json{{"coeff", scalar_json(t.coeff)}, {"exp", zvec_json(t.exp)}};
}

inline Json poly_json(const Polynomial& f) {
  Json out = Json::array();
  for (const auto& [u, a] : f.terms()) out.push_back(term_json(Term{a, u}));
  return out;
}

inline Json matrix_json(const DefiningMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m.rows()) {
    Json r = Json::array();
    for (const ExtScalar& x : row) r.push_back(ext_json(x));
    out.push_back(std::move(r));
  }
  return out;
}

inline Json prime_json(const PrimeCongruence& p) {
  return Json{{"monoid", p.monoid().str()},
              {"gamma", p.gamma().str()},
              {"matrix", matrix_json(p.matrix())}};
}

inline Json face_json(const KernelFace& f) {
  return Json{{"cols", f.cols}, {"tau_rays", f.tau_rays}};
}

inline Json series_json(const TruncatedSeries& f) {
  Json precision =
      f.is_exact() ? Json("exact") : lex_json(f.precision());
  return Json{{"prime", prime_json(f.base())},
              {"terms", poly_json(f.terms())},
              {"precision", std::move(precision)}};
}

inline const char* exactness_json(DimExactness reason) {
  switch (reason) {
    case DimExactness::kTCoeffs:
      return "t-coeffs";
    case DimExactness::kFullDimCone:
      return "full-dim-cone";
    case DimExactness::kBoundsOnly:
      return "bounds-only";
  }
  return "bounds-only";
}

inline Json dim_report_json(const DimReport& r) {
  return Json{{"dim_base", r.dim_base},
              {"q_rank", r.q_rank},
              {"height", r.height},
              {"dim_top_lower", r.dim_top_lower},
              {"dim_top_upper", r.dim_top_upper},
              {"exact", r.exact},
              {"reason", exactness_json(r.reason)}};
}

}  // namespace tropadic
