#pragma once

#include <cctype>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropadic/series.hpp"

namespace tropadic {

namespace detail {

// Scanning state shared by all text grammars. Construction folds the UTF-8
// minus sign into '-' so inputs copied from typeset sources parse unchanged;
// everything else is byte-level.
class TextCursor {
 public:
  explicit TextCursor(const std::string& text) {
    text_.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
      if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
          static_cast<unsigned char>(text[i + 1]) == 0x88 &&
          static_cast<unsigned char>(text[i + 2]) == 0x92) {
        text_ += '-';
        i += 3;
      } else {
        text_ += text[i++];
      }
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return raw_peek();
  }

  char raw_peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance(size_t n = 1) { pos_ += n; }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  bool consume_word(const char* w) {
    skip_ws();
    size_t len = std::strlen(w);
    if (text_.compare(pos_, len, w) != 0) return false;
    pos_ += len;
    return true;
  }

  void expect_word(const char* w) {
    if (!consume_word(w)) fail("expected '" + std::string(w) + "'");
  }

  // Maximal run of decimal digits at the cursor; never empty.
  std::string digits() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected digits");
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& what) {
    std::string ctx = text_.substr(pos_, std::min<size_t>(24, text_.size() - pos_));
    tropadic::fail(errc::parse_error, "at offset " + std::to_string(pos_) +
                                          " near '" + ctx + "': " + what);
  }

 private:
  std::string text_;
  size_t pos_ = 0;
};

// rational ::= ['-'] digits ['/' digits]
inline mpq_class rational_at(TextCursor& cur) {
  cur.skip_ws();
  std::string s;
  if (cur.consume('-')) s += '-';
  s += cur.digits();
  mpz_class num(s), den(1);
  if (cur.raw_peek() == '/') {
    cur.advance();
    den = mpz_class(cur.digits());
    if (den == 0) cur.fail("zero denominator");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// atom ::= rational | rational 'r2' | rational 'r3' | rational 'r6';
// the radical suffix must hug the number.
inline FieldScalar atom_at(TextCursor& cur) {
  mpq_class q = rational_at(cur);
  if (cur.raw_peek() == 'r') {
    char d = cur.raw_peek(1);
    cur.advance(2);
    switch (d) {
      case '2':
        return FieldScalar(0, std::move(q), 0, 0);
      case '3':
        return FieldScalar(0, 0, std::move(q), 0);
      case '6':
        return FieldScalar(0, 0, 0, std::move(q));
      default:
        cur.fail("unknown radical suffix (use r2, r3 or r6)");
    }
  }
  return FieldScalar(std::move(q));
}

// scalar ::= atom {('+'|'-') atom}. A sign continues the scalar only when a
// digit follows it immediately; this keeps "t^1 + t^0" splitting at the
// polynomial level while "1+1r2" stays one value.
inline FieldScalar scalar_at(TextCursor& cur) {
  FieldScalar out = atom_at(cur);
  for (;;) {
    cur.skip_ws();
    char sign = cur.raw_peek();
    if (sign != '+' && sign != '-') break;
    if (!std::isdigit(static_cast<unsigned char>(cur.raw_peek(1)))) break;
    cur.advance();
    FieldScalar a = atom_at(cur);
    out = (sign == '+') ? out + a : out - a;
  }
  return out;
}

// ext ::= scalar | '-inf'
inline ExtScalar ext_at(TextCursor& cur) {
  cur.skip_ws();
  if (cur.raw_peek() == '-' && cur.raw_peek(1) == 'i') {
    cur.expect_word("-inf");
    return ExtScalar::bottom();
  }
  return ExtScalar(scalar_at(cur));
}

inline mpz_class int_at(TextCursor& cur) {
  cur.skip_ws();
  std::string s;
  if (cur.consume('-')) s += '-';
  s += cur.digits();
  return mpz_class(s);
}

inline long index_at(TextCursor& cur) {
  return static_cast<long>(int_at(cur).get_si());
}

// '[' [integer {',' integer}] ']'
inline ZVec zvec_at(TextCursor& cur) {
  cur.expect('[');
  ZVec out;
  if (cur.consume(']')) return out;
  do {
    out.push_back(int_at(cur));
  } while (cur.consume(','));
  cur.expect(']');
  return out;
}

// term ::= 't^' ext ['*' var]..., var ::= 'x' index '^' integer with 1-based
// indices. The coefficient is kept as an ExtScalar here so the polynomial
// grammar can treat a '-inf' coefficient as the absent (tropical zero) term.
struct ParsedTerm {
  ExtScalar coeff;
  ZVec exp;
};

inline ParsedTerm term_at(TextCursor& cur, size_t rank) {
  cur.expect('t');
  cur.expect('^');
  ExtScalar c = ext_at(cur);
  ZVec e(rank, 0);
  while (cur.consume('*')) {
    cur.expect('x');
    long i = index_at(cur);
    if (i < 1 || static_cast<size_t>(i) > rank)
      cur.fail("variable index x" + std::to_string(i) + " out of range for rank " +
               std::to_string(rank));
    cur.expect('^');
    e[static_cast<size_t>(i - 1)] += int_at(cur);
  }
  return {std::move(c), std::move(e)};
}

// poly ::= term {'+' term} | '0'
inline Polynomial poly_at(TextCursor& cur, const ToricMonoid& monoid) {
  Polynomial out(monoid);
  if (cur.peek() == '0') {
    cur.advance();
    return out;
  }
  do {
    ParsedTerm t = term_at(cur, monoid.rank());
    if (!t.coeff.is_bottom()) out.add_term(Term{t.coeff.value(), std::move(t.exp)});
  } while (cur.consume('+'));
  return out;
}

// monoid ::= 'ZZ^' n | 'NN^' n | 'cone{rays=[[...],...]}'
inline size_t rank_at(TextCursor& cur) {
  long n = index_at(cur);
  if (n < 0) cur.fail("monoid rank must be nonnegative");
  return static_cast<size_t>(n);
}

inline ToricMonoid monoid_at(TextCursor& cur) {
  if (cur.consume_word("ZZ^")) return ToricMonoid::lattice(rank_at(cur));
  if (cur.consume_word("NN^")) return ToricMonoid::affine(rank_at(cur));
  if (cur.consume_word("cone")) {
    cur.expect('{');
    cur.expect_word("rays");
    cur.expect('=');
    cur.expect('[');
    ZMat rays;
    do {
      rays.push_back(zvec_at(cur));
    } while (cur.consume(','));
    cur.expect(']');
    cur.expect('}');
    if (rays.empty() || rays[0].empty())
      cur.fail("cone monoids need at least one nonzero ray (use ZZ^n otherwise)");
    size_t n = rays[0].size();
    return ToricMonoid::cone_monoid(Cone(n, std::move(rays)));
  }
  cur.fail("expected a monoid spec (ZZ^n, NN^n or cone{rays=[...]})");
}

// gamma ::= 'QQ' | 'span[' scalar {',' scalar} ']' | 'full'
inline CoefficientGroup gamma_at(TextCursor& cur) {
  if (cur.consume_word("QQ")) return CoefficientGroup::rationals();
  if (cur.consume_word("full")) return CoefficientGroup::full();
  if (cur.consume_word("span")) {
    cur.expect('[');
    std::vector<FieldScalar> gens;
    do {
      gens.push_back(scalar_at(cur));
    } while (cur.consume(','));
    cur.expect(']');
    return CoefficientGroup::span(std::move(gens));
  }
  cur.fail("expected a gamma spec (QQ, span[...] or full)");
}

// prime { monoid: <monoid>; gamma: <gamma>; matrix: [[<ext>,...],...] }
inline PrimeCongruence prime_at(TextCursor& cur) {
  cur.expect_word("prime");
  cur.expect('{');
  cur.expect_word("monoid");
  cur.expect(':');
  ToricMonoid monoid = monoid_at(cur);
  cur.expect(';');
  cur.expect_word("gamma");
  cur.expect(':');
  CoefficientGroup gamma = gamma_at(cur);
  cur.expect(';');
  cur.expect_word("matrix");
  cur.expect(':');
  cur.expect('[');
  std::vector<std::vector<ExtScalar>> rows;
  do {
    cur.expect('[');
    std::vector<ExtScalar> row;
    do {
      row.push_back(ext_at(cur));
    } while (cur.consume(','));
    cur.expect(']');
    rows.push_back(std::move(row));
  } while (cur.consume(','));
  cur.expect(']');
  cur.consume(';');
  cur.expect('}');
  return PrimeCongruence(std::move(monoid), std::move(gamma),
                         DefiningMatrix(std::move(rows)));
}

// precision ::= 'exact' | <ext> | '(' scalar {',' scalar} ')'. The bare form
// covers height-1 bases; the tuple form is needed once the base has several
// rows, since the radius then lives in R^k_lex.
inline LexTuple precision_at(TextCursor& cur) {
  if (cur.consume_word("exact")) return LexTuple::bottom(1);
  if (cur.peek() == '(') {
    cur.advance();
    std::vector<FieldScalar> entries;
    do {
      entries.push_back(scalar_at(cur));
    } while (cur.consume(','));
    cur.expect(')');
    return LexTuple(std::move(entries));
  }
  ExtScalar e = ext_at(cur);
  if (e.is_bottom()) return LexTuple::bottom(1);
  return LexTuple({e.value()});
}

// A tuple of scalars, '(' scalar {',' scalar} ')', or a bare scalar read as
// width 1. Used by generator lists.
inline LexTuple tuple_at(TextCursor& cur) {
  if (cur.peek() == '(') {
    cur.advance();
    std::vector<FieldScalar> entries;
    do {
      entries.push_back(scalar_at(cur));
    } while (cur.consume(','));
    cur.expect(')');
    return LexTuple(std::move(entries));
  }
  return LexTuple({scalar_at(cur)});
}

inline void finish(TextCursor& cur) {
  if (!cur.eof()) cur.fail("trailing input");
}

}  // namespace detail

// Loader for prime references inside series files: maps the text after '@'
// to the referenced file's content.
using PrimeLoader = std::function<std::string(const std::string&)>;

inline FieldScalar parse_scalar(const std::string& text) {
  detail::TextCursor cur(text);
  FieldScalar out = detail::scalar_at(cur);
  detail::finish(cur);
  return out;
}

inline ExtScalar parse_ext(const std::string& text) {
  detail::TextCursor cur(text);
  ExtScalar out = detail::ext_at(cur);
  detail::finish(cur);
  return out;
}

inline Term parse_term(const std::string& text, size_t rank) {
  detail::TextCursor cur(text);
  detail::ParsedTerm t = detail::term_at(cur, rank);
  detail::finish(cur);
  if (t.coeff.is_bottom())
    fail(errc::parse_error, "a standalone term needs a finite coefficient");
  return Term{t.coeff.value(), std::move(t.exp)};
}

inline Polynomial parse_poly(const std::string& text, const ToricMonoid& monoid) {
  detail::TextCursor cur(text);
  Polynomial out = detail::poly_at(cur, monoid);
  detail::finish(cur);
  return out;
}

inline ToricMonoid parse_monoid(const std::string& text) {
  detail::TextCursor cur(text);
  ToricMonoid out = detail::monoid_at(cur);
  detail::finish(cur);
  return out;
}

inline CoefficientGroup parse_gamma(const std::string& text) {
  detail::TextCursor cur(text);
  CoefficientGroup out = detail::gamma_at(cur);
  detail::finish(cur);
  return out;
}

inline PrimeCongruence parse_prime(const std::string& text) {
  detail::TextCursor cur(text);
  PrimeCongruence out = detail::prime_at(cur);
  detail::finish(cur);
  return out;
}

inline LexTuple parse_tuple(const std::string& text) {
  detail::TextCursor cur(text);
  LexTuple out = detail::tuple_at(cur);
  detail::finish(cur);
  return out;
}

// series { prime: <prime or @ref>; terms: <poly>; precision: <precision> }.
// A reference '@path' (optionally quoted: @"path with spaces") is resolved
// through the loader; an inline prime block needs none.
inline TruncatedSeries parse_series(const std::string& text,
                                    const PrimeLoader& loader = {}) {
  detail::TextCursor cur(text);
  cur.expect_word("series");
  cur.expect('{');
  cur.expect_word("prime");
  cur.expect(':');
  std::optional<PrimeCongruence> base;
  if (cur.peek() == '@') {
    cur.advance();
    std::string ref;
    if (cur.raw_peek() == '"') {
      cur.advance();
      while (cur.raw_peek() != '"') {
        if (cur.raw_peek() == '\0') cur.fail("unterminated prime reference");
        ref += cur.raw_peek();
        cur.advance();
      }
      cur.advance();
    } else {
      while (cur.raw_peek() != ';' && cur.raw_peek() != '\0' &&
             !std::isspace(static_cast<unsigned char>(cur.raw_peek()))) {
        ref += cur.raw_peek();
        cur.advance();
      }
    }
    if (ref.empty()) cur.fail("empty prime reference");
    if (!loader) cur.fail("prime reference '@" + ref + "' needs a loader");
    base = parse_prime(loader(ref));
  } else {
    base = detail::prime_at(cur);
  }
  cur.expect(';');
  cur.expect_word("terms");
  cur.expect(':');
  Polynomial terms = detail::poly_at(cur, base->monoid());
  cur.expect(';');
  cur.expect_word("precision");
  cur.expect(':');
  LexTuple eps = detail::precision_at(cur);
  cur.consume(';');
  cur.expect('}');
  detail::finish(cur);
  return TruncatedSeries(*base, terms, std::move(eps));
}

// stream { coeff0: <ext>; coeff_step: <ext>; exp0: [..]; exp_step: [..];
//          cert: {N: <int>, ratio: <term>}? }
inline SeriesStream parse_stream(const std::string& text) {
  detail::TextCursor cur(text);
  cur.expect_word("stream");
  cur.expect('{');
  auto finite = [&cur](const char* field) {
    ExtScalar e = detail::ext_at(cur);
    if (e.is_bottom())
      cur.fail(std::string(field) + " must be finite (a stream of zero terms "
                                    "is the zero polynomial)");
    return e.value();
  };
  cur.expect_word("coeff0");
  cur.expect(':');
  FieldScalar c0 = finite("coeff0");
  cur.expect(';');
  cur.expect_word("coeff_step");
  cur.expect(':');
  FieldScalar cstep = finite("coeff_step");
  cur.expect(';');
  cur.expect_word("exp0");
  cur.expect(':');
  ZVec e0 = detail::zvec_at(cur);
  cur.expect(';');
  cur.expect_word("exp_step");
  cur.expect(':');
  ZVec estep = detail::zvec_at(cur);
  std::optional<StreamCertificate> cert;
  bool semi = cur.consume(';');
  if (semi && cur.consume_word("cert")) {
    cur.expect(':');
    cur.expect('{');
    cur.expect_word("N");
    cur.expect(':');
    long start = detail::index_at(cur);
    cur.expect(',');
    cur.expect_word("ratio");
    cur.expect(':');
    detail::ParsedTerm t = detail::term_at(cur, e0.size());
    if (t.coeff.is_bottom()) cur.fail("certificate ratio must be finite");
    cur.expect('}');
    cert = StreamCertificate{start, Term{t.coeff.value(), std::move(t.exp)}};
    cur.consume(';');
  }
  cur.expect('}');
  detail::finish(cur);
  return SeriesStream(std::move(c0), std::move(cstep), std::move(e0),
                      std::move(estep), std::move(cert));
}

inline std::string format_zvec(const ZVec& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + "]";
}

inline std::string format_precision(const LexTuple& eps) {
  if (eps.is_bottom()) return "exact";
  if (eps.width() == 1) return eps.entries()[0].str();
  return eps.str();
}

inline std::string format_series(const TruncatedSeries& f) {
  return "series { prime: " + f.base().str() + "; terms: " + f.terms().str() +
         "; precision: " + format_precision(f.precision()) + " }";
}

inline std::string format_stream(const SeriesStream& s) {
  std::string out = "stream { coeff0: " + s.coeff0().str() +
                    "; coeff_step: " + s.coeff_step().str() +
                    "; exp0: " + format_zvec(s.exp0()) +
                    "; exp_step: " + format_zvec(s.exp_step());
  if (s.cert())
    out += "; cert: {N: " + std::to_string(s.cert()->start) +
           ", ratio: " + s.cert()->ratio.str() + "}";
  return out + " }";
}

}  // namespace tropadic
