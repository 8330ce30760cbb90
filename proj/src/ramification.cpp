#include "kisinram/ramification.hpp"

#include <algorithm>

#include "kisinram/error.hpp"

namespace kisinram {

namespace {

// odometer over the nonzero tuples of F_p^d
bool next_tuple(std::vector<long long>& c, long long p) {
  for (size_t i = 0; i < c.size(); ++i) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

Rat canonical_valuation(const KisinModule& M) {
  return Rat(M.e * M.r, M.field->p - 1);
}

} // namespace

std::optional<Rat> point_valuation(const std::vector<Series>& x) {
  std::optional<Rat> best;
  for (auto& s : x) {
    auto v = s.val();
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

std::vector<Rat> lower_breaks_from(const SolutionSet& sols) {
  std::vector<Rat> out;
  std::vector<long long> c(sols.d, 0);
  while (next_tuple(c, sols.p)) {
    auto mu = point_valuation(solution_point(sols, c));
    if (!mu)
      throw MathError("precision-exhausted",
                      "a nonzero point has no resolved coordinate");
    out.push_back(*mu);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rat> lower_breaks(const KisinModule& M, Rat target_prec) {
  if (!(target_prec > Rat(0)))
    target_prec = default_target_prec(M.e, M.r, M.field->p);
  return lower_breaks_from(solve_for_module(M, target_prec));
}

FpMat lower_subgroup(const SolutionSet& sols, const Rat& lambda, bool strict) {
  std::vector<FpVec> members;
  std::vector<long long> c(sols.d, 0);
  while (next_tuple(c, sols.p)) {
    auto mu = point_valuation(solution_point(sols, c));
    // an unresolved-zero point sits above every finite depth
    bool in = !mu || (strict ? *mu > lambda : *mu >= lambda);
    if (in) members.push_back(c);
  }
  return fp_span_basis(members, sols.p);
}

Series tbar_series(const KisinModule& M, Rat target_prec) {
  long long p = M.field->p;
  FFElem lead = ff_pow(ff_inv(M.c0bar), (unsigned long long)M.r);
  Series g = series_monomial(M.field, Rat(M.e * M.r), lead, target_prec + Rat(M.e * M.r),
                             M.denom_cap);
  Series h = series_zero(M.field, target_prec + Rat(M.e * M.r), M.denom_cap);
  return solve_additive_scalar(g, h, p, target_prec).homogeneous;
}

GramData pairing_gram(const KisinModule& M, const SolutionSet& sols,
                      const SolutionSet& dual_sols) {
  long long p = M.field->p;
  Rat vstar = canonical_valuation(M);
  GramData out;
  out.tbar = tbar_series(M, vstar + Rat(M.e));
  FieldPtr W = join_field(join_field(sols.field, dual_sols.field), out.tbar.field);
  Series tb = series_to_field(out.tbar, W);
  FFElem tlc_inv = ff_inv(tb.lc());

  out.mat.assign(M.d, FpVec(M.d, 0));
  out.sharp.assign(M.d, std::vector<char>(M.d, 0));
  for (int k = 0; k < M.d; ++k)
    for (int l = 0; l < M.d; ++l) {
      std::optional<Series> hacc;
      for (int i = 0; i < M.d; ++i) {
        Series term = series_mul(series_to_field(sols.basis[k][i], W),
                                 series_to_field(dual_sols.basis[l][i], W));
        hacc = hacc ? series_add(*hacc, term) : term;
      }
      Series h = std::move(*hacc);
      auto v = h.val();
      if (v && *v < vstar)
        throw MathError("precision-exhausted",
                        "pairing value has a term below the canonical valuation");
      FFElem coeff = series_coeff(h, vstar) * tlc_inv;
      auto res = ff_as_prime(coeff);
      if (!res)
        throw MathError("precision-exhausted",
                        "pairing value is not a prime-field multiple of the "
                        "canonical line");
      // the value must be a scalar times the canonical line through its
      // whole resolved range, not just at the leading exponent
      Series diff = series_sub(h, series_scale(tb, coeff));
      if (diff.has_terms() && *diff.val() < std::min(h.prec, tb.prec))
        throw MathError("precision-exhausted",
                        "pairing value deviates from the canonical line");
      out.mat[k][l] = ((*res % p) + p) % p;
      out.sharp[k][l] = h.prec > vstar ? 1 : 0;
      if (!out.sharp[k][l]) out.all_sharp = false;
    }
  return out;
}

FpMat orthogonal_complement(const FpMat& gram, const FpMat& dual_sub, int d,
                            long long p) {
  if (dual_sub.empty()) {
    FpMat full(d, FpVec(d, 0));
    for (int i = 0; i < d; ++i) full[i][i] = 1;
    return full;
  }
  // constraint per row b: sum_{k,l} c_k G[k][l] b_l = 0
  FpMat constraints(dual_sub.size(), FpVec(d, 0));
  for (size_t r = 0; r < dual_sub.size(); ++r)
    for (int k = 0; k < d; ++k) {
      long long acc = 0;
      for (int l = 0; l < d; ++l) acc += gram[k][l] * dual_sub[r][l] % p;
      constraints[r][k] = acc % p;
    }
  auto ker = fp_kernel(constraints, p);
  return fp_span_basis(ker, p);
}

DualityData duality_data(const KisinModule& M, Rat target_prec) {
  if (!(target_prec > Rat(0)))
    target_prec = default_target_prec(M.e, M.r, M.field->p);
  DualityData D;
  D.M = M;
  D.Mdual = dual(M);
  D.sols = solve_for_module(M, target_prec);
  D.dual_sols = solve_for_module(D.Mdual, target_prec);
  D.gram = pairing_gram(M, D.sols, D.dual_sols);
  D.breaks = lower_breaks_from(D.sols);
  D.dual_breaks = lower_breaks_from(D.dual_sols);
  return D;
}

Rat upper_level(const KisinModule& M, const Rat& j) {
  return canonical_valuation(M) - j / Rat(M.field->p);
}

long long upper_dim(const DualityData& D, const Rat& j) {
  FpMat sub = lower_subgroup(D.dual_sols, upper_level(D.M, j), /*strict=*/true);
  FpMat comp = orthogonal_complement(D.gram.mat, sub, D.M.d, D.M.field->p);
  return (long long)comp.size();
}

std::vector<Rat> upper_jumps(const DualityData& D) {
  Rat vstar = canonical_valuation(D.M);
  long long p = D.M.field->p;
  std::vector<Rat> out;
  for (const Rat& l : D.dual_breaks) out.push_back((vstar - l) * Rat(p));
  std::sort(out.begin(), out.end());
  return out;
}

DualityChecks run_duality_checks(const DualityData& D, int grid) {
  DualityChecks C;
  long long p = D.M.field->p;
  int d = D.M.d;
  Rat vstar = canonical_valuation(D.M);
  Rat jmax = vstar * Rat(p);

  C.gram_invertible = fp_mat_inverse(D.gram.mat, p).has_value();
  C.gram_all_sharp = D.gram.all_sharp;

  C.breaks_bounded = true;
  for (const Rat& b : D.breaks)
    if (b > vstar) C.breaks_bounded = false;
  for (const Rat& b : D.dual_breaks)
    if (b > vstar) C.breaks_bounded = false;

  C.jumps_bounded = true;
  for (const Rat& j : upper_jumps(D))
    if (j > jmax || j < Rat(0)) C.jumps_bounded = false;

  C.grid_points = grid;
  C.dim_sum_ok = true;
  for (int t = 0; t < grid; ++t) {
    Rat j = jmax * Rat(t, grid > 1 ? grid - 1 : 1);
    FpMat sub = lower_subgroup(D.dual_sols, upper_level(D.M, j), true);
    FpMat comp = orthogonal_complement(D.gram.mat, sub, d, p);
    if ((long long)(sub.size() + comp.size()) != d) C.dim_sum_ok = false;
  }

  // complement of the complement must recover the dual subgroup at every
  // dual break depth
  C.double_orthogonal_ok = true;
  FpMat gram_t(d, FpVec(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram_t[i][j] = D.gram.mat[j][i];
  std::vector<Rat> depths = D.dual_breaks;
  depths.push_back(Rat(0));
  for (const Rat& l : depths) {
    FpMat sub = lower_subgroup(D.dual_sols, l, true);
    FpMat comp = orthogonal_complement(D.gram.mat, sub, d, p);
    FpMat back = orthogonal_complement(gram_t, comp, d, p);
    if (back.size() != sub.size()) { C.double_orthogonal_ok = false; continue; }
    FpMat joint = sub;
    for (auto& row : back) joint.push_back(row);
    if (fp_rank(joint, p) != sub.size()) C.double_orthogonal_ok = false;
  }
  return C;
}

} // namespace kisinram
