#pragma once

#include <vector>

#include "kisinram/series.hpp"

namespace kisinram {

using SeriesMat = std::vector<std::vector<Series>>;

// Rank-d free module over k[[u]] killed by p, presented by its Frobenius
// matrix A: phi(m_1,...,m_d) = (m_1,...,m_d) A.  Admissibility (E-height
// <= e*r) is enforced at construction.
struct KisinModule {
  FieldPtr field;
  long long e = 0;
  long long r = 0;
  FFElem c0bar; // unit, reduction of p^{-1} E(0); defaults to -1
  int d = 0;
  SeriesMat A;  // integer exponents
  long long prec = 0;
  long long denom_cap = 0;
};

struct SmithData {
  SeriesMat P, Q;                // unit matrices with P*A*Q = diag(u^exps)
  std::vector<long long> exps;   // ascending
  long long stride = 1;          // 1 or p: P, Q have entries in k[[u^stride]]
};

long long default_prec(long long p, long long d, long long e, long long r);
long long default_denom_cap(long long p);

// Validates invariants (unit c0bar, det != 0, height <= e*r) and fills in
// defaults; throws MathError on rejection.
KisinModule make_module(FieldPtr field, long long e, long long r, FFElem c0bar,
                        SeriesMat A, long long prec = 0, long long denom_cap = 0);

SmithData smith_normal_form(const SeriesMat& A, long long stride, long long p);

long long e_height(const SeriesMat& A, long long p);

// A_dual = (u^e / c0bar)^r * transpose(A)^{-1}
KisinModule dual(const KisinModule& M);

// u -> v^N: e' = N*e, matrix A(v^N)
KisinModule base_change(const KisinModule& M, long long N);

// basis m' = m*C gives A' = C^{-1} * A * frobenius(C)
KisinModule change_basis(const KisinModule& M, const SeriesMat& C);

KisinModule rank_one(long long s, const FFElem& a, long long e, long long r,
                     const FFElem& c0bar, long long prec = 0, long long cap = 0);

// Matrix helpers used across modules.
SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b);
SeriesMat mat_identity(const FieldPtr& f, int d, Rat prec, long long cap);
SeriesMat mat_frobenius(const SeriesMat& a);
Series mat_det(const SeriesMat& a);
// Inverse of a matrix whose determinant is a unit.
SeriesMat mat_unit_inverse(const SeriesMat& a);

} // namespace kisinram
