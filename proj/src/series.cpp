#include "kisinram/series.hpp"

#include <algorithm>

#include "kisinram/error.hpp"

namespace kisinram {

namespace {

void check_denominator(Series& s) {
  // the cap governs stored exponents; the precision bound itself may be a
  // finer rational (e.g. the cut-off point of an accumulating expansion)
  long long D = 1;
  for (auto& [e, c] : s.terms) D = lcmll(D, e.d);
  s.D = D;
  if (s.cap > 0 && s.D > s.cap)
    throw MathError("denominator-overflow",
                    "exponent denominator " + std::to_string(s.D) +
                        " exceeds the cap " + std::to_string(s.cap));
}

void normalize(Series& s) {
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    if (it->second.is_zero() || it->first >= s.prec)
      it = s.terms.erase(it);
    else
      ++it;
  }
  check_denominator(s);
}

// effective valuation for the precision rule of products: the valuation if
// resolved, otherwise the precision itself (a rigorous lower bound)
Rat eff_val(const Series& s) {
  auto v = s.val();
  return v ? *v : s.prec;
}

std::pair<Series, Series> coerce(const Series& a, const Series& b) {
  FieldPtr f = join_field(a.field, b.field);
  return {series_to_field(a, f), series_to_field(b, f)};
}

} // namespace

Series series_zero(const FieldPtr& f, Rat prec, long long cap) {
  Series s;
  s.field = f;
  s.prec = prec;
  s.cap = cap;
  check_denominator(s);
  return s;
}

Series series_make(const FieldPtr& f, std::vector<std::pair<Rat, FFElem>> term_list,
                   Rat prec, long long cap) {
  Series s = series_zero(f, prec, cap);
  for (auto& [e, c] : term_list) {
    if (e < Rat(0)) throw InputError("negative exponent in series");
    FFElem cf = same_field(c.field, f) ? c : ff_embed(c, f);
    auto it = s.terms.find(e);
    if (it == s.terms.end())
      s.terms.emplace(e, cf);
    else
      it->second = it->second + cf;
  }
  normalize(s);
  return s;
}

Series series_const(const FieldPtr& f, const FFElem& c, Rat prec, long long cap) {
  return series_make(f, {{Rat(0), c}}, prec, cap);
}

Series series_monomial(const FieldPtr& f, Rat exp, const FFElem& c, Rat prec,
                       long long cap) {
  return series_make(f, {{exp, c}}, prec, cap);
}

Series series_add(const Series& a0, const Series& b0) {
  auto [a, b] = coerce(a0, b0);
  Series r = series_zero(a.field, std::min(a.prec, b.prec), std::max(a.cap, b.cap));
  r.terms = a.terms;
  for (auto& [e, c] : b.terms) {
    auto it = r.terms.find(e);
    if (it == r.terms.end())
      r.terms.emplace(e, c);
    else
      it->second = it->second + c;
  }
  normalize(r);
  return r;
}

Series series_neg(const Series& a) {
  Series r = a;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

Series series_sub(const Series& a, const Series& b) {
  return series_add(a, series_neg(b));
}

Series series_mul(const Series& a0, const Series& b0) {
  auto [a, b] = coerce(a0, b0);
  Rat prec = std::min(a.prec + eff_val(b), b.prec + eff_val(a));
  Series r = series_zero(a.field, prec, std::max(a.cap, b.cap));
  for (auto& [ea, ca] : a.terms)
    for (auto& [eb, cb] : b.terms) {
      Rat e = ea + eb;
      if (e >= prec) continue;
      FFElem prod = ca * cb;
      auto it = r.terms.find(e);
      if (it == r.terms.end())
        r.terms.emplace(e, prod);
      else
        it->second = it->second + prod;
    }
  normalize(r);
  return r;
}

Series series_scale(const Series& a, const FFElem& c) {
  FieldPtr f = join_field(a.field, c.field);
  Series r = series_to_field(a, f);
  FFElem cf = ff_embed(c, f);
  if (cf.is_zero()) {
    r.terms.clear();
    return r;
  }
  for (auto& [e, coef] : r.terms) coef = coef * cf;
  normalize(r);
  return r;
}

Series series_shift(const Series& a, const Rat& delta) {
  Series r = series_zero(a.field, a.prec + delta, a.cap);
  for (auto& [e, c] : a.terms) {
    Rat ne = e + delta;
    if (ne < Rat(0))
      throw MathError("precision-exhausted",
                      "shift produced a negative exponent (non-integral quotient)");
    r.terms.emplace(ne, c);
  }
  normalize(r);
  return r;
}

Series series_truncate(const Series& a, const Rat& new_prec) {
  Series r = a;
  r.prec = std::min(a.prec, new_prec);
  normalize(r);
  return r;
}

Series series_to_field(const Series& a, const FieldPtr& target) {
  if (same_field(a.field, target)) return a;
  Series r = series_zero(target, a.prec, a.cap);
  for (auto& [e, c] : a.terms) r.terms.emplace(e, ff_embed(c, target));
  normalize(r);
  return r;
}

Series series_invert(const Series& a) {
  auto v = a.val();
  if (!v || *v != Rat(0))
    throw MathError("non-unit", "series inversion requires valuation 0");
  if (a.prec <= Rat(0))
    throw MathError("precision-exhausted", "no digits available for inversion");
  // Newton iteration g <- g(2 - a g), doubling the number of correct digits
  Series two = series_const(a.field, ff_int(a.field, 2), a.prec, a.cap);
  Series g = series_const(a.field, ff_inv(a.lc()), a.prec, a.cap);
  // enough iterations to cover all lattice points below prec
  long long steps = 2;
  {
    long long digits = rat_ceil(a.prec * Rat(a.D)) + 1;
    while ((1LL << steps) < digits + 1) ++steps;
  }
  for (long long i = 0; i <= steps; ++i)
    g = series_mul(g, series_sub(two, series_mul(a, g)));
  return series_truncate(g, a.prec);
}

Series series_frobenius(const Series& a) {
  Series r = series_zero(a.field, a.prec * Rat(a.field->p), a.cap);
  for (auto& [e, c] : a.terms)
    r.terms.emplace(e * Rat(a.field->p), ff_frobenius(c));
  normalize(r);
  return r;
}

Series series_pth_root(const Series& a) {
  Rat pr(a.field->p);
  Series r = series_zero(a.field, a.prec / pr, a.cap);
  for (auto& [e, c] : a.terms)
    r.terms.emplace(e / pr, ff_pth_root(c));
  normalize(r);
  return r;
}

FFElem series_coeff(const Series& a, const Rat& exp) {
  auto it = a.terms.find(exp);
  if (it == a.terms.end()) return ff_zero(a.field);
  return it->second;
}

bool series_equal_terms(const Series& a, const Series& b) {
  if (a.terms.size() != b.terms.size()) return false;
  auto ita = a.terms.begin();
  auto itb = b.terms.begin();
  for (; ita != a.terms.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!same_field(ita->second.field, itb->second.field)) return false;
    if (ita->second.c != itb->second.c) return false;
  }
  return true;
}

} // namespace kisinram
