#pragma once

#include "kisinram/kisin.hpp"

namespace kisinram {

// Eisenstein polynomial E(u) = sum c_i u^i over Z_p: c_e = 1, p | c_i for
// i < e, p^2 does not divide c_0.  F(u) = (u^e - E(u)) / p has integer
// coefficients and unit constant term; the residual unit is -F(0) mod p.
struct EisensteinPoly {
  long long p = 0;
  long long e = 0;
  std::vector<long long> coeffs; // c_0..c_e
  std::vector<long long> F;      // F_0..F_{e-1}
};

EisensteinPoly make_eisenstein(long long p, std::vector<long long> coeffs);
EisensteinPoly default_eisenstein(long long p, long long e); // u^e - p

// O_K = (Z/p^N)[u]/(E(u)), elements as e coefficients mod p^N.
// Valuation is normalized by v(pi) = 1, so v(p) = e.
struct OKRing {
  EisensteinPoly E;
  long long N = 2;
  long long pN = 0; // p^N
};

OKRing make_ok_ring(EisensteinPoly E, long long N);

using OKElem = std::vector<long long>; // size e, residues mod p^N

OKElem ok_zero(const OKRing& R);
OKElem ok_one(const OKRing& R);
OKElem ok_from_int(const OKRing& R, long long n);
OKElem ok_add(const OKRing& R, const OKElem& a, const OKElem& b);
OKElem ok_sub(const OKRing& R, const OKElem& a, const OKElem& b);
OKElem ok_neg(const OKRing& R, const OKElem& a);
OKElem ok_mul(const OKRing& R, const OKElem& a, const OKElem& b);
OKElem ok_pi_pow(const OKRing& R, long long k);
bool ok_is_zero(const OKElem& a);
// min_k (k + e * v_p(c_k)); nullopt for 0.  The minimizer is unique, so the
// valuation is exact despite the p-adic truncation.
std::optional<long long> ok_val(const OKRing& R, const OKElem& a);
// Hensel inversion of a unit (valuation 0); error "non-unit" otherwise.
OKElem ok_invert(const OKRing& R, const OKElem& a);
// reduction modulo p into F_p[u]/(u^e) via pi -> u, as a series with prec e
Series ok_mod_p(const OKRing& R, const OKElem& a);

// Adapted-basis data over k[u]/(u^{ep}) extracted from the stride-p Smith
// normal form: exponents r_i = e - s_i and the structure matrix
// Gtilde = -Fbar(u^p) * Q^{-1} * frobenius(P)^{-1}.
struct BreuilData {
  std::vector<long long> rlist;
  SeriesMat Gtilde; // entries truncated at u^{ep}
};

BreuilData breuil_data(const KisinModule& M, const EisensteinPoly& E);

// Affine-algebra presentation over O_K: equations
// X_i^p + (pi^{e-r_i} / F(pi)) * sum_j a[j][i] X_j = 0.
struct MixedPresentation {
  OKRing ring;
  int d = 0;
  std::vector<long long> rlist;
  std::vector<std::vector<OKElem>> a;
  OKElem Fpi; // F(pi), a unit
};

// Requires k = F_p, r = 1, p | e and matrix entries in k[[u^p]]
// (errors "requires-prime-field", "requires-r-one", "requires-p-divides-e",
// "entries-not-in-u^p").  Needs M.prec >= p*e*N to resolve the lifts.
MixedPresentation mixed_presentation(const KisinModule& M,
                                     const EisensteinPoly& E, long long N);

struct CompareReport {
  BreuilData breuil;
  SeriesMat mixed_red;  // mixed coefficients reduced mod p, pi -> u
  SeriesMat equal_red;  // equal-characteristic coefficients mod u^e
  bool all_equal = false;
};

// The two reductions of the defining equations into F_p[u]/(u^e): the mixed
// route through O_K and the equal-characteristic route through k[[u]].
CompareReport compare_mod_p(const KisinModule& M, const EisensteinPoly& E,
                            long long N = 2);

// Valuation-only Newton-polygon breaks of the p^d points of the presentation
// (triangular only).  Throws "inconclusive" when a peeling step has no
// strictly dominant term.
std::vector<Rat> mixed_lower_breaks(const MixedPresentation& Mp);

} // namespace kisinram
