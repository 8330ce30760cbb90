#include "kisinram/solver.hpp"

#include <algorithm>
#include <string>

#include "kisinram/error.hpp"
#include "kisinram/fp_linalg.hpp"

namespace kisinram {

namespace {

Series series_pow_small(const Series& a, long long n) {
  Series r = series_const(a.field, ff_one(a.field), a.prec, a.cap);
  for (long long i = 0; i < n; ++i) r = series_mul(r, a);
  return r;
}

// nonzero solution of z^(p-1) = w for a unit series w, by leading-coefficient
// Kummer solving followed by Newton iteration (the derivative is a unit)
Series unit_root(const Series& w0, long long p) {
  auto [c0, f1] = ff_solve_kummer(w0.lc());
  Series w = series_to_field(w0, f1);
  Series z = series_const(w.field, c0, w.prec, w.cap);
  for (int iter = 0; iter < 64; ++iter) {
    Series fz = series_sub(series_pow_small(z, p - 1), w);
    if (!fz.has_terms()) return z;
    Series deriv = series_scale(series_pow_small(z, p - 2), ff_int(w.field, p - 1));
    z = series_sub(z, series_mul(fz, series_invert(deriv)));
  }
  throw MathError("precision-exhausted", "root refinement did not stabilize");
}

} // namespace

Rat default_target_prec(long long e, long long r, long long p) {
  return Rat(e * r, p - 1) + Rat(e);
}

ScalarSolution solve_additive_scalar(const Series& g0, const Series& h0, long long p,
                                     Rat target_prec) {
  if (!g0.has_terms())
    throw MathError("precision-exhausted", "additive equation with unresolved g");
  long long cap = std::max(g0.cap, h0.cap);
  FieldPtr W = join_field(g0.field, h0.field);
  Series g = series_to_field(g0, W);
  Series h = series_to_field(h0, W);
  g.cap = cap;
  h.cap = cap;

  Rat vg = *g.val();
  Rat lamstar = vg / Rat(p - 1);

  // homogeneous part: u^(v(g)/(p-1)) * z with z^(p-1) = g * u^(-v(g))
  Series z = unit_root(series_shift(g, -vg), p);
  if (!same_field(z.field, W)) {
    W = z.field;
    g = series_to_field(g, W);
    h = series_to_field(h, W);
  }
  Series homogeneous = series_truncate(series_shift(z, lamstar), target_prec);

  // particular part: Newton-polygon peeling
  Series y = series_zero(W, target_prec, cap);
  Rat achieved = target_prec;
  const Rat boundary = lamstar * Rat(p);
  for (int step = 0;; ++step) {
    if (step > 4000)
      throw MathError("precision-exhausted", "peeling did not terminate");
    Series res = series_add(h, series_sub(series_mul(g, y), series_frobenius(y)));
    auto v = res.val();
    if (!v) {
      // a future residual term at mu >= res.prec would contribute at mu/p
      // (pth-root branch, only possible below the boundary) or mu - v(g)
      Rat by_res = res.prec >= boundary ? res.prec - vg : res.prec / Rat(p);
      achieved = std::min(target_prec, by_res);
      break;
    }
    Rat mu = *v;
    if (mu > target_prec * Rat(p) + vg) {
      achieved = target_prec;
      break;
    }
    Rat lam;
    FFElem c = ff_zero(W);
    if (mu < boundary) {
      lam = mu / Rat(p);
      c = ff_pth_root(res.lc());
    } else if (mu > boundary) {
      lam = mu - vg;
      c = -(res.lc() * ff_inv(g.lc()));
    } else {
      auto [cc, f2] = ff_solve_artin_schreier(g.lc(), res.lc());
      lam = mu / Rat(p);
      if (!same_field(f2, W)) {
        W = f2;
        g = series_to_field(g, W);
        h = series_to_field(h, W);
        y = series_to_field(y, W);
        homogeneous = series_to_field(homogeneous, W);
      }
      c = ff_embed(cc, W);
    }
    if (lam >= target_prec) {
      achieved = target_prec;
      break;
    }
    long long need = lcmll(y.D, lam.d);
    if (cap > 0 && need > cap) {
      if (y.has_terms()) {
        // accumulating expansion: the partial sum is correct modulo u^lam
        achieved = lam;
        break;
      }
      throw MathError("denominator-overflow",
                      "leading exponent denominator exceeds the cap");
    }
    y = series_add(y, series_monomial(W, lam, c, target_prec, cap));
  }
  Series particular = series_truncate(y, achieved);
  homogeneous = series_to_field(homogeneous, W);
  return ScalarSolution{std::move(particular), std::move(homogeneous), W};
}

SolutionSet solve_triangular(const KisinModule& M, Rat target_prec) {
  int d = M.d;
  long long p = M.field->p;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (M.A[i][j].has_terms())
        throw MathError("not-triangular",
                        "matrix is not upper triangular; apply change_basis first");
  for (int j = 0; j < d; ++j)
    if (!M.A[j][j].has_terms())
      throw MathError("singular-matrix", "triangular solve needs nonzero diagonal");

  // solving to a slightly deeper target keeps downstream valuations resolved
  // after the g-shift each layer introduces
  Rat layer_target = target_prec + Rat(M.e * M.r);

  FieldPtr W = M.field;
  std::vector<std::vector<Series>> basis;
  auto embed_all = [&](std::vector<std::vector<Series>>& vecs, const FieldPtr& f) {
    for (auto& v : vecs)
      for (auto& s : v) s = series_to_field(s, f);
  };

  for (int k = 0; k < d; ++k) {
    std::vector<Series> b;
    for (int j = 0; j < k; ++j) b.push_back(series_zero(W, layer_target, M.denom_cap));
    {
      Series g = series_to_field(M.A[k][k], W);
      g.cap = M.denom_cap;
      ScalarSolution sol =
          solve_additive_scalar(g, series_zero(W, layer_target, M.denom_cap), p,
                                layer_target);
      if (!same_field(sol.field, W)) {
        W = sol.field;
        embed_all(basis, W);
        for (auto& s : b) s = series_to_field(s, W);
      }
      b.push_back(sol.homogeneous);
    }
    for (int j = k + 1; j < d; ++j) {
      Series h = series_zero(W, layer_target + Rat(M.e * M.r), M.denom_cap);
      for (int i = k; i < j; ++i) {
        if (!M.A[i][j].has_terms() || !b[i].has_terms()) continue;
        Series a = series_to_field(M.A[i][j], W);
        a.cap = M.denom_cap;
        h = series_add(h, series_mul(a, b[i]));
      }
      Series g = series_to_field(M.A[j][j], W);
      g.cap = M.denom_cap;
      ScalarSolution sol = solve_additive_scalar(g, h, p, layer_target);
      if (!same_field(sol.field, W)) {
        W = sol.field;
        embed_all(basis, W);
        for (auto& s : b) s = series_to_field(s, W);
      }
      b.push_back(sol.particular);
    }
    basis.push_back(std::move(b));
  }
  embed_all(basis, W);

  SolutionSet out;
  out.field = W;
  out.p = p;
  out.d = d;
  out.prec = layer_target;
  for (auto& v : basis)
    for (auto& s : v) out.prec = std::min(out.prec, s.prec);
  out.basis = std::move(basis);
  return out;
}

SolutionSet solve_for_module(const KisinModule& M, Rat target_prec) {
  int d = M.d;
  bool upper = true, lower = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i > j && M.A[i][j].has_terms()) upper = false;
      if (i < j && M.A[i][j].has_terms()) lower = false;
    }
  if (upper) return solve_triangular(M, target_prec);
  if (!lower)
    throw MathError("not-triangular",
                    "matrix is neither upper nor lower triangular");
  // reverse the basis order: A' = J A J is upper triangular, and points
  // transform by x = J x'
  KisinModule Mr = M;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Mr.A[i][j] = M.A[d - 1 - i][d - 1 - j];
  SolutionSet sols = solve_triangular(Mr, target_prec);
  SolutionSet out = sols;
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) out.basis[k][j] = sols.basis[k][d - 1 - j];
  return out;
}

std::vector<Series> solution_point(const SolutionSet& sols,
                                   const std::vector<long long>& c) {
  std::vector<Series> x;
  for (int j = 0; j < sols.d; ++j) {
    // only the contributing basis vectors limit this coordinate's precision
    std::optional<Series> acc;
    for (int k = 0; k < sols.d; ++k) {
      if (c[k] % sols.p == 0) continue;
      Series part = series_scale(sols.basis[k][j], ff_int(sols.field, c[k]));
      acc = acc ? series_add(*acc, part) : part;
    }
    x.push_back(acc ? std::move(*acc)
                    : series_zero(sols.field, sols.prec, sols.basis[0][j].cap));
  }
  return x;
}

std::optional<Rat> residual_valuation(const KisinModule& M,
                                      const std::vector<Series>& x) {
  FieldPtr W = M.field;
  for (auto& s : x) W = join_field(W, s.field);
  std::optional<Rat> best;
  for (int j = 0; j < M.d; ++j) {
    Series res = series_frobenius(series_to_field(x[j], W));
    for (int i = 0; i < M.d; ++i) {
      if (!M.A[i][j].has_terms()) continue;
      // term-free coordinates still carry a precision bound on the product
      res = series_sub(res, series_mul(series_to_field(M.A[i][j], W),
                                       series_to_field(x[i], W)));
    }
    auto v = res.val();
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

long long qa_size(const QuotientAlgebra& alg) {
  // lattice points k/D in [0, T)
  Rat td = alg.T * Rat(alg.D);
  long long n = rat_ceil(td);
  if (Rat(n) == td) return n;
  return n;
}

QAElem qa_from_series(const QuotientAlgebra& alg, const Series& s) {
  long long n = qa_size(alg);
  QAElem out(n, ff_zero(alg.field));
  for (auto& [e, c] : s.terms) {
    if (alg.D % e.d != 0)
      throw MathError("exponent-not-representable",
                      "exponent " + e.str() + " does not lie in (1/" +
                          std::to_string(alg.D) + ")Z");
    long long k = e.n * (alg.D / e.d);
    if (k >= n) continue;
    out[k] = out[k] + ff_embed(c, alg.field);
  }
  return out;
}

std::vector<std::vector<QAElem>> kernel_over_quotient(const KisinModule& M,
                                                      const QuotientAlgebra& alg) {
  long long p = M.field->p;
  int d = M.d;
  long long n = qa_size(alg);
  int mfld = alg.field->m;
  long long dim = d * n * mfld; // F_p-dimension of Alg^d

  // precompute A entries embedded into the algebra's field
  std::vector<std::vector<Series>> Aemb(d, std::vector<Series>());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      Aemb[i].push_back(series_to_field(M.A[i][j], alg.field));

  auto index = [&](int j, long long k, int l) -> long long {
    return ((long long)j * n + k) * mfld + l;
  };

  FpMat mat(dim, FpVec(dim, 0));
  for (int j0 = 0; j0 < d; ++j0)
    for (long long k0 = 0; k0 < n; ++k0)
      for (int l0 = 0; l0 < mfld; ++l0) {
        long long col = index(j0, k0, l0);
        FFElem base = ff_zero(alg.field);
        base.c[l0] = 1;
        // Frobenius contribution to component j0
        long long kf = k0 * p;
        if (kf < n) {
          FFElem cf = ff_frobenius(base);
          for (int l = 0; l < mfld; ++l)
            mat[index(j0, kf, l)][col] = (mat[index(j0, kf, l)][col] + cf.c[l]) % p;
        }
        // -A[j0][j] * x contribution to every component j
        for (int j = 0; j < d; ++j) {
          for (auto& [e, c] : Aemb[j0][j].terms) {
            long long k = k0 + e.n * (alg.D / e.d);
            if (!e.is_integer() && alg.D % e.d != 0)
              throw MathError("exponent-not-representable",
                              "matrix entry exponent outside the lattice");
            if (k >= n) continue;
            FFElem cc = -(c * base);
            for (int l = 0; l < mfld; ++l)
              mat[index(j, k, l)][col] =
                  ((mat[index(j, k, l)][col] + cc.c[l]) % p + p) % p;
          }
        }
      }

  auto kernel = fp_kernel(mat, p);
  std::vector<std::vector<QAElem>> out;
  for (auto& v : kernel) {
    std::vector<QAElem> elem(d, QAElem(n, ff_zero(alg.field)));
    for (int j = 0; j < d; ++j)
      for (long long k = 0; k < n; ++k) {
        FFElem c = ff_zero(alg.field);
        for (int l = 0; l < mfld; ++l) c.c[l] = v[index(j, k, l)];
        elem[j][k] = c;
      }
    out.push_back(std::move(elem));
  }
  return out;
}

bool qa_in_span(const std::vector<std::vector<QAElem>>& basis,
                const std::vector<QAElem>& vec, long long p) {
  if (basis.empty()) {
    for (auto& comp : vec)
      for (auto& c : comp)
        if (!c.is_zero()) return false;
    return true;
  }
  auto flatten = [&](const std::vector<QAElem>& e) {
    FpVec v;
    for (auto& comp : e)
      for (auto& c : comp)
        for (long long x : c.c) v.push_back(x);
    return v;
  };
  FpMat rows;
  for (auto& b : basis) rows.push_back(flatten(b));
  size_t r0 = fp_rank(rows, p);
  rows.push_back(flatten(vec));
  return fp_rank(rows, p) == r0;
}

} // namespace kisinram
