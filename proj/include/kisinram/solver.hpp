#pragma once

#include "kisinram/kisin.hpp"

namespace kisinram {

struct ScalarSolution {
  Series particular;  // solves y^p - g*y = h
  Series homogeneous; // nonzero solution of y^p = g*y, valuation v(g)/(p-1)
  FieldPtr field;     // possibly a deterministic extension of the inputs'
};

// Term-by-term Newton-polygon solver for y^p - g*y = h.  The full solution
// set is particular + F_p * homogeneous.  The particular's precision can be
// below target_prec: expansions whose exponents accumulate (denominators
// growing past the cap) are cut off gracefully, and the returned precision
// reflects exactly what was resolved.
ScalarSolution solve_additive_scalar(const Series& g, const Series& h, long long p,
                                     Rat target_prec);

struct SolutionSet {
  FieldPtr field;
  long long p = 0;
  int d = 0;
  std::vector<std::vector<Series>> basis; // d vectors; basis[k] has first
                                          // nonzero coordinate at position k
  Rat prec{0};
};

Rat default_target_prec(long long e, long long r, long long p);

// All p^d points of x_j^p = sum_i A[i][j] x_i for upper-triangular A.
SolutionSet solve_triangular(const KisinModule& M, Rat target_prec);

// Accepts upper-triangular A directly and lower-triangular A via the basis
// reversal permutation; rejects anything else with "not-triangular".
SolutionSet solve_for_module(const KisinModule& M, Rat target_prec);

// The point with F_p-coefficient tuple c (size d) in the basis.
std::vector<Series> solution_point(const SolutionSet& sols,
                                   const std::vector<long long>& c);

// min_j v(x_j^p - sum_i A[i][j] x_i); nullopt = above working precision.
std::optional<Rat> residual_valuation(const KisinModule& M,
                                      const std::vector<Series>& x);

// Finite test algebra: truncated Puiseux polynomials with exponents in
// (1/D) Z intersect [0, T).
struct QuotientAlgebra {
  FieldPtr field;
  long long D;
  Rat T;
};

long long qa_size(const QuotientAlgebra& alg); // number of exponents
using QAElem = std::vector<FFElem>;            // coefficients, exponent k/D at index k

QAElem qa_from_series(const QuotientAlgebra& alg, const Series& s);

// F_p-basis of the kernel of x -> (x_j^p - sum_i A[i][j] x_i) on Alg^d.
// Contains every truncated genuine solution plus truncation artifacts.
std::vector<std::vector<QAElem>> kernel_over_quotient(const KisinModule& M,
                                                      const QuotientAlgebra& alg);

// Membership of a vector in the F_p-span of the kernel basis.
bool qa_in_span(const std::vector<std::vector<QAElem>>& basis,
                const std::vector<QAElem>& vec, long long p);

} // namespace kisinram
