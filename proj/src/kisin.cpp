#include "kisinram/kisin.hpp"

#include <algorithm>
#include <string>

#include "kisinram/error.hpp"

namespace kisinram {

namespace {

void check_square(const SeriesMat& a) {
  for (auto& row : a)
    if (row.size() != a.size()) throw InputError("matrix is not square");
}

Rat min_prec(const SeriesMat& a) {
  Rat m = a[0][0].prec;
  for (auto& row : a)
    for (auto& s : row) m = std::min(m, s.prec);
  return m;
}

// divide f by the monomial u^s (valuation of f must be >= s)
Series div_monomial(const Series& f, long long s) { return series_shift(f, Rat(-s)); }

} // namespace

SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b) {
  size_t n = a.size(), k = b.size(), m = b[0].size();
  SeriesMat c(n);
  for (size_t i = 0; i < n; ++i) {
    c[i].reserve(m);
    for (size_t j = 0; j < m; ++j) {
      Series acc = series_mul(a[i][0], b[0][j]);
      for (size_t l = 1; l < k; ++l)
        acc = series_add(acc, series_mul(a[i][l], b[l][j]));
      c[i].push_back(std::move(acc));
    }
  }
  return c;
}

SeriesMat mat_identity(const FieldPtr& f, int d, Rat prec, long long cap) {
  SeriesMat m(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m[i].push_back(i == j ? series_const(f, ff_one(f), prec, cap)
                            : series_zero(f, prec, cap));
  return m;
}

SeriesMat mat_frobenius(const SeriesMat& a) {
  SeriesMat r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (auto& s : a[i]) r[i].push_back(series_frobenius(s));
  return r;
}

Series mat_det(const SeriesMat& a) {
  size_t n = a.size();
  if (n == 1) return a[0][0];
  Series acc = series_zero(a[0][0].field, a[0][0].prec, a[0][0].cap);
  for (size_t j = 0; j < n; ++j) {
    SeriesMat minor(n - 1);
    for (size_t i = 1; i < n; ++i)
      for (size_t jj = 0; jj < n; ++jj)
        if (jj != j) minor[i - 1].push_back(a[i][jj]);
    Series term = series_mul(a[0][j], mat_det(minor));
    acc = (j % 2 == 0) ? series_add(acc, term) : series_sub(acc, term);
  }
  return acc;
}

namespace {

// adjugate: adj(a)[i][j] = (-1)^(i+j) * det(minor with row j, col i removed)
SeriesMat mat_adjugate(const SeriesMat& a) {
  size_t n = a.size();
  if (n == 1) {
    return {{series_const(a[0][0].field, ff_one(a[0][0].field), a[0][0].prec,
                          a[0][0].cap)}};
  }
  SeriesMat adj(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      SeriesMat minor(n - 1);
      size_t mi = 0;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        for (size_t c = 0; c < n; ++c)
          if (c != i) minor[mi].push_back(a[r][c]);
        ++mi;
      }
      Series cof = mat_det(minor);
      if ((i + j) % 2 == 1) cof = series_neg(cof);
      adj[i].push_back(std::move(cof));
    }
  }
  return adj;
}

} // namespace

SeriesMat mat_unit_inverse(const SeriesMat& a) {
  check_square(a);
  Series det = mat_det(a);
  auto v = det.val();
  if (!v || *v != Rat(0))
    throw MathError("non-unit", "matrix determinant is not a unit");
  Series det_inv = series_invert(det);
  SeriesMat adj = mat_adjugate(a);
  for (auto& row : adj)
    for (auto& s : row) s = series_mul(s, det_inv);
  return adj;
}

long long default_prec(long long p, long long d, long long e, long long r) {
  // the dual loses e*r + v(det A) digits, and v(det A) can reach d*e*r
  long long base = (d + 2) * e * r + rat_ceil(Rat(e * r, p - 1)) + e + 1;
  return std::max(base, e * (p + 1));
}

long long default_denom_cap(long long p) { return (p - 1) * p * p * p * p; }

SmithData smith_normal_form(const SeriesMat& A0, long long stride, long long p) {
  check_square(A0);
  size_t d = A0.size();
  SeriesMat A = A0;
  if (stride != 1) {
    for (auto& row : A)
      for (auto& s : row)
        for (auto& [e, c] : s.terms)
          if (!e.is_integer() || e.n % stride != 0)
            throw MathError("entries-not-in-u^p",
                            "stride-" + std::to_string(stride) +
                                " elimination requires entries in k[[u^" +
                                std::to_string(stride) + "]]");
  }
  FieldPtr f = A[0][0].field;
  Rat prec = min_prec(A);
  long long cap = A[0][0].cap;
  SeriesMat P = mat_identity(f, (int)d, prec, cap);
  SeriesMat Q = mat_identity(f, (int)d, prec, cap);

  auto row_sub = [&](SeriesMat& M, size_t i, size_t k, const Series& q) {
    for (size_t j = 0; j < d; ++j)
      M[i][j] = series_sub(M[i][j], series_mul(q, M[k][j]));
  };
  auto col_sub = [&](SeriesMat& M, size_t j, size_t k, const Series& q) {
    for (size_t i = 0; i < d; ++i)
      M[i][j] = series_sub(M[i][j], series_mul(q, M[i][k]));
  };

  std::vector<long long> exps;
  for (size_t k = 0; k < d; ++k) {
    // pivot: minimal valuation, ties by smallest row then column
    std::optional<Rat> best;
    size_t bi = k, bj = k;
    for (size_t i = k; i < d; ++i)
      for (size_t j = k; j < d; ++j) {
        auto v = A[i][j].val();
        if (!v) continue;
        if (!best || *v < *best) { best = v; bi = i; bj = j; }
      }
    if (!best)
      throw MathError("singular-matrix",
                      "determinant indistinguishable from zero at working precision");
    if (!best->is_integer()) throw InputError("non-integral exponent in matrix");
    long long s = best->n;
    std::swap(A[bi], A[k]);
    std::swap(P[bi], P[k]);
    if (bj != k)
      for (size_t i = 0; i < d; ++i) {
        std::swap(A[i][bj], A[i][k]);
        std::swap(Q[i][bj], Q[i][k]);
      }
    // normalize the pivot's unit part to 1
    Series unit_inv = series_invert(div_monomial(A[k][k], s));
    for (size_t j = 0; j < d; ++j) A[k][j] = series_mul(unit_inv, A[k][j]);
    for (size_t j = 0; j < d; ++j) P[k][j] = series_mul(unit_inv, P[k][j]);
    for (size_t i = k + 1; i < d; ++i) {
      if (!A[i][k].has_terms()) continue;
      Series q = div_monomial(A[i][k], s);
      row_sub(A, i, k, q);
      row_sub(P, i, k, q);
    }
    for (size_t j = k + 1; j < d; ++j) {
      if (!A[k][j].has_terms()) continue;
      Series q = div_monomial(A[k][j], s);
      col_sub(A, j, k, q);
      col_sub(Q, j, k, q);
    }
    exps.push_back(s);
  }
  return SmithData{std::move(P), std::move(Q), std::move(exps), stride};
}

long long e_height(const SeriesMat& A, long long p) {
  SmithData snf = smith_normal_form(A, 1, p);
  return snf.exps.back();
}

KisinModule make_module(FieldPtr field, long long e, long long r, FFElem c0bar,
                        SeriesMat A, long long prec, long long denom_cap) {
  check_square(A);
  if (A.empty()) throw InputError("empty matrix");
  long long p = field->p;
  if (e < 1 || r < 1) throw InputError("e and r must be positive");
  if (c0bar.is_zero()) throw InputError("c0bar must be a unit");
  int d = (int)A.size();
  if (prec == 0) prec = default_prec(p, d, e, r);
  if (denom_cap == 0) denom_cap = default_denom_cap(p);

  KisinModule M;
  M.field = field;
  M.e = e;
  M.r = r;
  M.c0bar = ff_embed(c0bar, field);
  M.d = d;
  M.prec = prec;
  M.denom_cap = denom_cap;
  M.A.resize(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Series s = series_to_field(A[i][j], field);
      if (!s.is_integral()) throw InputError("Frobenius matrix entries must lie in k[[u]]");
      s.cap = denom_cap;
      M.A[i].push_back(series_truncate(s, Rat(prec)));
    }

  long long h = e_height(M.A, p);
  if (h > e * r)
    throw MathError("height-exceeded",
                    "E-height " + std::to_string(h) + " exceeds e*r = " +
                        std::to_string(e * r));
  return M;
}

KisinModule dual(const KisinModule& M) {
  // A_dual = (u^e / c0bar)^r * transpose(A)^{-1}
  //        = u^(e*r) * c0bar^(-r) * adj(t(A)) * det(t(A))^{-1}
  int d = M.d;
  SeriesMat At(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) At[i].push_back(M.A[j][i]);
  Series det = mat_det(At);
  auto v = det.val();
  if (!v)
    throw MathError("singular-matrix", "determinant indistinguishable from zero");
  long long vdet = v->n;
  Series det_unit_inv = series_invert(div_monomial(det, vdet));
  SeriesMat adj = mat_adjugate(At);
  FFElem scale = ff_pow(ff_inv(M.c0bar), (unsigned long long)M.r);
  long long shift_by = M.e * M.r - vdet;
  SeriesMat Ad(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Series s = series_mul(adj[i][j], det_unit_inv);
      s = series_scale(s, scale);
      auto sv = s.val();
      if (sv && *sv + Rat(shift_by) < Rat(0))
        throw MathError("height-exceeded", "dual matrix is not integral");
      Ad[i].push_back(series_shift(s, Rat(shift_by)));
    }
  long long new_prec = M.prec - M.e * M.r - vdet;
  if (new_prec < M.e * M.r + 1)
    throw MathError("precision-exhausted",
                    "insufficient precision to represent the dual matrix");
  for (auto& row : Ad)
    for (auto& s : row) s = series_truncate(s, Rat(new_prec));
  KisinModule Md = M;
  Md.A = std::move(Ad);
  Md.prec = new_prec;
  return Md;
}

KisinModule base_change(const KisinModule& M, long long N) {
  if (N < 1) throw InputError("base change exponent must be positive");
  if (N == 1) return M;
  KisinModule R = M;
  R.e = M.e * N;
  R.prec = M.prec * N;
  for (auto& row : R.A)
    for (auto& s : row) {
      Series t = series_zero(s.field, s.prec * Rat(N), s.cap);
      for (auto& [ex, c] : s.terms) t.terms.emplace(ex * Rat(N), c);
      s = series_truncate(t, t.prec);
    }
  return R;
}

KisinModule change_basis(const KisinModule& M, const SeriesMat& C) {
  check_square(C);
  if ((int)C.size() != M.d) throw InputError("basis-change matrix has wrong size");
  SeriesMat Cf(M.d);
  for (int i = 0; i < M.d; ++i)
    for (auto& s : C[i]) Cf[i].push_back(series_to_field(s, M.field));
  Series det = mat_det(Cf);
  auto v = det.val();
  if (!v || *v != Rat(0))
    throw MathError("non-unit-basis-change", "det(C) is not a unit");
  SeriesMat Ci = mat_unit_inverse(Cf);
  SeriesMat Anew = mat_mul(mat_mul(Ci, M.A), mat_frobenius(Cf));
  KisinModule R = M;
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      R.A[i][j] = series_truncate(Anew[i][j], Rat(M.prec));
  return R;
}

KisinModule rank_one(long long s, const FFElem& a, long long e, long long r,
                     const FFElem& c0bar, long long prec, long long cap) {
  if (s < 0 || s > e * r) throw InputError("rank-one exponent must satisfy 0 <= s <= e*r");
  if (a.is_zero()) throw InputError("rank-one unit coefficient must be nonzero");
  FieldPtr f = a.field;
  if (prec == 0) prec = default_prec(f->p, 1, e, r);
  if (cap == 0) cap = default_denom_cap(f->p);
  SeriesMat A = {{series_monomial(f, Rat(s), a, Rat(prec), cap)}};
  return make_module(f, e, r, c0bar, A, prec, cap);
}

} // namespace kisinram
