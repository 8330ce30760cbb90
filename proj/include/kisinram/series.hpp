#pragma once

#include <map>
#include <optional>
#include <vector>

#include "kisinram/finite_field.hpp"
#include "kisinram/rational.hpp"

namespace kisinram {

// Truncated series over F_{p^m} with non-negative rational exponents whose
// denominators divide D.  "prec" is a hard modulus: the value is known
// modulo u^prec and nothing beyond is stored or claimed.  Power series in
// k[[u]] are the special case D = 1 (see is_integral()).
struct Series {
  FieldPtr field;
  std::map<Rat, FFElem> terms; // nonzero coefficients, exponents < prec
  Rat prec{0};
  long long D = 1;   // bound on exponent denominators
  long long cap = 0; // configured maximum for D (0 = unlimited)

  std::optional<Rat> val() const {
    if (terms.empty()) return std::nullopt;
    return terms.begin()->first;
  }
  const FFElem& lc() const { return terms.begin()->second; }
  bool has_terms() const { return !terms.empty(); }
  bool is_integral() const {
    for (auto& [e, c] : terms) if (!e.is_integer()) return false;
    return true;
  }
};

Series series_zero(const FieldPtr& f, Rat prec, long long cap = 0);
Series series_make(const FieldPtr& f, std::vector<std::pair<Rat, FFElem>> term_list,
                   Rat prec, long long cap = 0);
Series series_const(const FieldPtr& f, const FFElem& c, Rat prec, long long cap = 0);
Series series_monomial(const FieldPtr& f, Rat exp, const FFElem& c, Rat prec,
                       long long cap = 0);

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_neg(const Series& a);
Series series_mul(const Series& a, const Series& b);
Series series_scale(const Series& a, const FFElem& c);
// Multiply by u^delta; throws if a stored exponent would become negative.
Series series_shift(const Series& a, const Rat& delta);
Series series_truncate(const Series& a, const Rat& new_prec);
Series series_to_field(const Series& a, const FieldPtr& target);

// Inverse of a unit (val = 0); error "non-unit" otherwise.
Series series_invert(const Series& a);

// f -> f^p (u -> u^p together with coefficient Frobenius); prec scales by p.
Series series_frobenius(const Series& a);

// Inverse of series_frobenius; prec divides by p, D multiplies by up to p
// (error "denominator-overflow" past the cap).
Series series_pth_root(const Series& a);

FFElem series_coeff(const Series& a, const Rat& exp);
bool series_equal_terms(const Series& a, const Series& b);

} // namespace kisinram
