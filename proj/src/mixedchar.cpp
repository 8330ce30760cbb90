#include "kisinram/mixedchar.hpp"

#include <algorithm>

#include "kisinram/error.hpp"
#include "kisinram/fp_linalg.hpp"

namespace kisinram {

namespace {

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

long long vp(long long c, long long p, long long N) {
  // p-adic valuation of a residue mod p^N, capped at N
  if (c == 0) return N;
  long long v = 0;
  while (c % p == 0) { c /= p; ++v; }
  return v;
}

// ---- truncated integer polynomials mod (p^N, u^T) ----

using ZPoly = std::vector<long long>; // size T

ZPoly zp_zero(long long T) { return ZPoly(T, 0); }

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, long long pN) {
  long long T = (long long)a.size();
  ZPoly c(T, 0);
  for (long long i = 0; i < T; ++i) {
    if (a[i] == 0) continue;
    for (long long j = 0; j + i < T; ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % pN;
  }
  return c;
}

ZPoly zp_scale(const ZPoly& a, long long s, long long pN) {
  ZPoly c = a;
  for (auto& x : c) x = mod_pos(x * s, pN);
  return c;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b, long long pN) {
  ZPoly c = a;
  for (size_t i = 0; i < c.size(); ++i) c[i] = mod_pos(c[i] + b[i], pN);
  return c;
}

ZPoly zp_inv(const ZPoly& a, long long pN) {
  long long T = (long long)a.size();
  if (std::gcd(mod_pos(a[0], pN), pN) != 1)
    throw MathError("non-unit", "constant term not invertible mod p^N");
  ZPoly x = zp_zero(T);
  x[0] = fp_inv(mod_pos(a[0], pN), pN);
  long long steps = 1;
  while ((1LL << steps) < T + 1) ++steps;
  for (long long s = 0; s <= steps; ++s) {
    ZPoly ax = zp_mul(a, x, pN);
    ZPoly two_minus = zp_scale(ax, -1, pN);
    two_minus[0] = mod_pos(two_minus[0] + 2, pN);
    x = zp_mul(x, two_minus, pN);
  }
  return x;
}

using ZMat = std::vector<std::vector<ZPoly>>;

ZMat zm_mul(const ZMat& A, const ZMat& B, long long pN) {
  size_t n = A.size(), k = B.size(), m = B[0].size();
  long long T = (long long)A[0][0].size();
  ZMat C(n, std::vector<ZPoly>(m, zp_zero(T)));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j)
        C[i][j] = zp_add(C[i][j], zp_mul(A[i][l], B[l][j], pN), pN);
  return C;
}

ZPoly zm_det(const ZMat& A, long long pN) {
  size_t n = A.size();
  if (n == 1) return A[0][0];
  long long T = (long long)A[0][0].size();
  ZPoly det = zp_zero(T);
  for (size_t j = 0; j < n; ++j) {
    if (std::all_of(A[0][j].begin(), A[0][j].end(),
                    [](long long x) { return x == 0; }))
      continue;
    ZMat minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<ZPoly> row;
      for (size_t l = 0; l < n; ++l)
        if (l != j) row.push_back(A[i][l]);
      minor.push_back(std::move(row));
    }
    ZPoly term = zp_mul(A[0][j], zm_det(minor, pN), pN);
    det = zp_add(det, zp_scale(term, (j % 2 == 0) ? 1 : -1, pN), pN);
  }
  return det;
}

ZMat zm_inv(const ZMat& A, long long pN) {
  size_t n = A.size();
  long long T = (long long)A[0][0].size();
  ZPoly det_inv = zp_inv(zm_det(A, pN), pN);
  ZMat inv(n, std::vector<ZPoly>(n, zp_zero(T)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      ZMat minor;
      for (size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<ZPoly> row;
        for (size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(A[r][c]);
        minor.push_back(std::move(row));
      }
      ZPoly cof = n == 1 ? [&] { ZPoly o = zp_zero(T); o[0] = 1; return o; }()
                         : zm_det(minor, pN);
      long long sign = ((i + j) % 2 == 0) ? 1 : -1;
      inv[i][j] = zp_mul(zp_scale(cof, sign, pN), det_inv, pN);
    }
  return inv;
}

// lift a series over F_p with integer exponents to a truncated integer
// polynomial, using the fixed representatives {0,...,p-1}
ZPoly lift_series(const Series& s, long long T, long long stride_div,
                  long long pN) {
  if (s.prec < Rat(T * stride_div))
    throw MathError("precision-exhausted",
                    "series precision too low for the requested lift");
  ZPoly out = zp_zero(T);
  for (auto& [e, c] : s.terms) {
    if (!e.is_integer() || e.n % stride_div != 0)
      throw MathError("entries-not-in-u^p", "exponent " + e.str());
    long long k = e.n / stride_div;
    if (k < T) out[k] = mod_pos(c.c[0], pN);
  }
  return out;
}

void check_mixed_preconditions(const KisinModule& M) {
  if (M.field->m != 1)
    throw MathError("requires-prime-field", "mixed side needs k = F_p");
  if (M.r != 1)
    throw MathError("requires-r-one", "mixed side needs height bound r = 1");
  if (M.e % M.field->p != 0)
    throw MathError("requires-p-divides-e",
                    "stride-p comparison needs p | e");
}

} // namespace

EisensteinPoly make_eisenstein(long long p, std::vector<long long> coeffs) {
  if (coeffs.size() < 2) throw InputError("Eisenstein polynomial needs degree >= 1");
  EisensteinPoly E;
  E.p = p;
  E.e = (long long)coeffs.size() - 1;
  E.coeffs = std::move(coeffs);
  if (E.coeffs.back() != 1) throw InputError("Eisenstein polynomial must be monic");
  for (long long i = 0; i < E.e; ++i)
    if (E.coeffs[i] % p != 0)
      throw InputError("Eisenstein coefficients below the top must be divisible by p");
  if (E.coeffs[0] % (p * p) == 0)
    throw InputError("Eisenstein constant term must not be divisible by p^2");
  for (long long i = 0; i < E.e; ++i) E.F.push_back(-(E.coeffs[i] / p));
  return E;
}

EisensteinPoly default_eisenstein(long long p, long long e) {
  std::vector<long long> c(e + 1, 0);
  c[0] = -p;
  c[e] = 1;
  return make_eisenstein(p, std::move(c));
}

OKRing make_ok_ring(EisensteinPoly E, long long N) {
  if (N < 1) throw InputError("p-adic precision N must be >= 1");
  OKRing R;
  R.N = N;
  R.pN = 1;
  for (long long i = 0; i < N; ++i) R.pN *= E.p;
  R.E = std::move(E);
  return R;
}

OKElem ok_zero(const OKRing& R) { return OKElem(R.E.e, 0); }
OKElem ok_one(const OKRing& R) { return ok_from_int(R, 1); }

OKElem ok_from_int(const OKRing& R, long long n) {
  OKElem a = ok_zero(R);
  a[0] = mod_pos(n, R.pN);
  return a;
}

OKElem ok_add(const OKRing& R, const OKElem& a, const OKElem& b) {
  OKElem c(R.E.e);
  for (long long i = 0; i < R.E.e; ++i) c[i] = mod_pos(a[i] + b[i], R.pN);
  return c;
}

OKElem ok_neg(const OKRing& R, const OKElem& a) {
  OKElem c(R.E.e);
  for (long long i = 0; i < R.E.e; ++i) c[i] = mod_pos(-a[i], R.pN);
  return c;
}

OKElem ok_sub(const OKRing& R, const OKElem& a, const OKElem& b) {
  return ok_add(R, a, ok_neg(R, b));
}

OKElem ok_mul(const OKRing& R, const OKElem& a, const OKElem& b) {
  long long e = R.E.e;
  std::vector<long long> prod(2 * e - 1, 0);
  for (long long i = 0; i < e; ++i) {
    if (a[i] == 0) continue;
    for (long long j = 0; j < e; ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % R.pN;
  }
  // reduce by pi^e = -sum_{i<e} c_i pi^i
  for (long long k = 2 * e - 2; k >= e; --k) {
    long long top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (long long i = 0; i < e; ++i)
      prod[k - e + i] = mod_pos(prod[k - e + i] - top * R.E.coeffs[i], R.pN);
  }
  OKElem c(e);
  for (long long i = 0; i < e; ++i) c[i] = mod_pos(prod[i], R.pN);
  return c;
}

OKElem ok_pi_pow(const OKRing& R, long long k) {
  OKElem r = ok_one(R);
  OKElem pi = ok_zero(R);
  if (R.E.e == 1)
    pi[0] = mod_pos(-R.E.coeffs[0], R.pN);
  else
    pi[1] = 1;
  for (long long i = 0; i < k; ++i) r = ok_mul(R, r, pi);
  return r;
}

bool ok_is_zero(const OKElem& a) {
  for (long long x : a) if (x != 0) return false;
  return true;
}

std::optional<long long> ok_val(const OKRing& R, const OKElem& a) {
  std::optional<long long> best;
  for (long long k = 0; k < R.E.e; ++k) {
    if (a[k] == 0) continue;
    long long v = k + R.E.e * vp(a[k], R.E.p, R.N);
    if (!best || v < *best) best = v;
  }
  return best;
}

OKElem ok_invert(const OKRing& R, const OKElem& a) {
  auto v = ok_val(R, a);
  if (!v || *v != 0)
    throw MathError("non-unit", "inversion in O_K requires valuation 0");
  OKElem x = ok_from_int(R, fp_inv(mod_pos(a[0], R.E.p), R.E.p));
  for (long long s = 0; s < R.N + 2; ++s) {
    OKElem ax = ok_mul(R, a, x);
    OKElem t = ok_sub(R, ok_from_int(R, 2), ax);
    x = ok_mul(R, x, t);
  }
  return x;
}

Series ok_mod_p(const OKRing& R, const OKElem& a) {
  FieldPtr f = canonical_field(R.E.p, 1);
  std::vector<std::pair<Rat, FFElem>> terms;
  for (long long k = 0; k < R.E.e; ++k)
    terms.push_back({Rat(k), ff_int(f, a[k])});
  return series_make(f, std::move(terms), Rat(R.E.e));
}

BreuilData breuil_data(const KisinModule& M, const EisensteinPoly& E) {
  check_mixed_preconditions(M);
  long long p = M.field->p;
  SmithData snf = smith_normal_form(M.A, p, p);
  BreuilData out;
  for (long long s : snf.exps) out.rlist.push_back(M.e - s);
  // cbar = -Fbar(u^p) in k[u]/(u^{ep})
  Rat T(M.e * p);
  std::vector<std::pair<Rat, FFElem>> cterms;
  for (long long i = 0; i < E.e; ++i)
    cterms.push_back({Rat(i * p), ff_int(M.field, -E.F[i])});
  Series cbar = series_make(M.field, std::move(cterms), T);
  SeriesMat G = mat_mul(mat_unit_inverse(snf.Q),
                        mat_unit_inverse(mat_frobenius(snf.P)));
  out.Gtilde.assign(M.d, std::vector<Series>());
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      out.Gtilde[i].push_back(series_truncate(series_mul(cbar, G[i][j]), T));
  return out;
}

MixedPresentation mixed_presentation(const KisinModule& M,
                                     const EisensteinPoly& E, long long N) {
  check_mixed_preconditions(M);
  long long p = M.field->p;
  if (E.e != M.e) throw InputError("Eisenstein degree must equal e");
  OKRing R = make_ok_ring(E, N);
  long long T = M.e * N; // pi^{eN} = 0 mod p^N
  SmithData snf = smith_normal_form(M.A, p, p);

  // lifts: Qhat in the compressed variable w = u^p (needs w-degree T),
  // Phat kept in u (needs u-degree T)
  ZMat Qw(M.d, std::vector<ZPoly>(M.d)), Pu(M.d, std::vector<ZPoly>(M.d));
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j) {
      Qw[i][j] = lift_series(snf.Q[i][j], T, p, R.pN);
      Pu[i][j] = lift_series(snf.P[i][j], T, 1, R.pN);
    }
  ZMat Qw_inv = zm_inv(Qw, R.pN); // entries in w, i.e. already de-strided
  ZMat Pu_inv = zm_inv(Pu, R.pN);
  ZMat prod = zm_mul(Qw_inv, Pu_inv, R.pN);

  ZPoly Fpoly = zp_zero(T);
  for (long long i = 0; i < E.e && i < T; ++i)
    Fpoly[i] = mod_pos(E.F[i], R.pN);

  MixedPresentation out;
  out.ring = R;
  out.d = M.d;
  for (long long s : snf.exps) out.rlist.push_back(M.e - s);
  out.a.assign(M.d, std::vector<OKElem>(M.d, ok_zero(R)));
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j) {
      ZPoly aij = zp_scale(zp_mul(Fpoly, prod[i][j], R.pN), -1, R.pN);
      OKElem acc = ok_zero(R);
      for (long long k = 0; k < T; ++k) {
        if (aij[k] == 0) continue;
        OKElem term = ok_pi_pow(R, k);
        for (auto& x : term) x = mod_pos(x * aij[k], R.pN);
        acc = ok_add(R, acc, term);
      }
      out.a[i][j] = acc;
    }
  {
    OKElem acc = ok_zero(R);
    for (long long i = 0; i < E.e; ++i) {
      OKElem term = ok_pi_pow(R, i);
      for (auto& x : term) x = mod_pos(x * E.F[i], R.pN);
      acc = ok_add(R, acc, term);
    }
    out.Fpi = acc;
  }
  return out;
}

CompareReport compare_mod_p(const KisinModule& M, const EisensteinPoly& E,
                            long long N) {
  CompareReport rep;
  rep.breuil = breuil_data(M, E);
  MixedPresentation Mp = mixed_presentation(M, E, N);
  long long p = M.field->p;
  OKRing& R = Mp.ring;

  // mixed route: (pi^{e-r_i} / F(pi)) a[j][i] reduced mod p via pi -> u
  OKElem Finv = ok_invert(R, Mp.Fpi);
  rep.mixed_red.assign(M.d, std::vector<Series>());
  for (int j = 0; j < M.d; ++j)
    for (int i = 0; i < M.d; ++i) {
      OKElem c = ok_mul(R, ok_pi_pow(R, M.e - Mp.rlist[i]),
                        ok_mul(R, Finv, Mp.a[j][i]));
      rep.mixed_red[j].push_back(ok_mod_p(R, c));
    }

  // equal-characteristic route, entirely in k[[u]]
  SmithData snf = smith_normal_form(M.A, p, p);
  SeriesMat Qinv = mat_unit_inverse(snf.Q);
  SeriesMat Qinv_dest(M.d, std::vector<Series>());
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j) {
      // entries lie in k[[u^p]]; divide every exponent by p
      Series src = Qinv[i][j];
      Series dst = series_zero(src.field, src.prec / Rat(p), src.cap);
      for (auto& [ex, c] : src.terms) {
        Rat ne = ex / Rat(p);
        if (!ne.is_integer())
          throw MathError("entries-not-in-u^p", "exponent " + ex.str());
        if (ne < dst.prec) dst.terms.emplace(ne, c);
      }
      Qinv_dest[i].push_back(series_truncate(dst, dst.prec));
    }
  SeriesMat Pinv = mat_unit_inverse(snf.P);
  std::vector<std::pair<Rat, FFElem>> fterms;
  for (long long i = 0; i < E.e; ++i)
    fterms.push_back({Rat(i), ff_int(M.field, E.F[i])});
  Series Fbar = series_make(M.field, std::move(fterms), Rat(M.e));
  Series Fbar_inv = series_invert(Fbar);
  SeriesMat abar = mat_mul(Qinv_dest, Pinv);
  rep.equal_red.assign(M.d, std::vector<Series>());
  rep.all_equal = true;
  for (int j = 0; j < M.d; ++j)
    for (int i = 0; i < M.d; ++i) {
      Series c = series_neg(series_mul(Fbar, abar[j][i]));
      c = series_mul(series_mul(c, Fbar_inv),
                     series_monomial(M.field, Rat(M.e - rep.breuil.rlist[i]),
                                     ff_one(M.field), Rat(M.e * 2)));
      c = series_truncate(c, Rat(M.e));
      rep.equal_red[j].push_back(c);
      if (!series_equal_terms(c, rep.mixed_red[j][i])) rep.all_equal = false;
    }
  return rep;
}

std::vector<Rat> mixed_lower_breaks(const MixedPresentation& Mp) {
  const OKRing& R = Mp.ring;
  long long p = R.E.p;
  int d = Mp.d;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!ok_is_zero(Mp.a[j][i]))
        throw MathError("not-triangular",
                        "valuation recursion needs a triangular presentation");

  const std::optional<Rat> inf; // valuation of 0
  std::vector<std::vector<std::optional<Rat>>> points{{}};
  for (int i = 0; i < d; ++i) {
    auto vaii = ok_val(R, Mp.a[i][i]);
    std::optional<Rat> vg;
    if (vaii) vg = Rat(R.E.e - Mp.rlist[i] + *vaii);
    std::vector<std::vector<std::optional<Rat>>> next;
    for (auto& pt : points) {
      // valuation of the inhomogeneous part, with a strict-dominance guard
      std::optional<Rat> mu;
      int ties = 0;
      for (int j = 0; j < i; ++j) {
        auto vaji = ok_val(R, Mp.a[j][i]);
        if (!vaji || !pt[j]) continue;
        Rat cand = Rat(R.E.e - Mp.rlist[i] + *vaji) + *pt[j];
        if (!mu || cand < *mu) { mu = cand; ties = 1; }
        else if (cand == *mu) ++ties;
      }
      if (mu && ties > 1)
        throw MathError("inconclusive",
                        "no strictly dominant term in the inhomogeneous part");
      std::vector<std::optional<Rat>> child_vals;
      if (!mu) {
        if (!vg)
          throw MathError("inconclusive", "degenerate layer equation");
        child_vals.push_back(inf);
        Rat lamstar = *vg / Rat(p - 1);
        for (long long t = 1; t < p; ++t) child_vals.push_back(lamstar);
      } else if (!vg) {
        for (long long t = 0; t < p; ++t) child_vals.push_back(*mu / Rat(p));
      } else {
        Rat lamstar = *vg / Rat(p - 1);
        if (*mu == lamstar * Rat(p))
          throw MathError("inconclusive",
                          "leading exponents sit on the Newton-polygon corner");
        if (*mu < lamstar * Rat(p)) {
          for (long long t = 0; t < p; ++t) child_vals.push_back(*mu / Rat(p));
        } else {
          child_vals.push_back(*mu - *vg);
          for (long long t = 1; t < p; ++t) child_vals.push_back(lamstar);
        }
      }
      for (auto& cv : child_vals) {
        auto np = pt;
        np.push_back(cv);
        next.push_back(std::move(np));
      }
    }
    points = std::move(next);
  }

  std::vector<Rat> out;
  for (auto& pt : points) {
    std::optional<Rat> mn;
    for (auto& v : pt)
      if (v && (!mn || *v < *mn)) mn = v;
    if (mn) out.push_back(*mn);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace kisinram
