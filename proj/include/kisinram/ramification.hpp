#pragma once

#include "kisinram/fp_linalg.hpp"
#include "kisinram/solver.hpp"

namespace kisinram {

// min coordinate valuation; nullopt when every coordinate is unresolved zero
std::optional<Rat> point_valuation(const std::vector<Series>& x);

// Multiset of min-valuations over the p^d - 1 nonzero points, ascending.
// Every value is <= e*r/(p-1).
std::vector<Rat> lower_breaks_from(const SolutionSet& sols);
std::vector<Rat> lower_breaks(const KisinModule& M, Rat target_prec = Rat(0));

// F_p-basis (rows are coefficient tuples) of the subgroup of points with
// valuation >= lambda (strict: > lambda).
FpMat lower_subgroup(const SolutionSet& sols, const Rat& lambda, bool strict);

// Generator of the canonical line: the homogeneous solution of
// h^p = (u^{er} / c0bar^r) h, valuation e*r/(p-1).
Series tbar_series(const KisinModule& M, Rat target_prec);

// Gram matrix of the sum-of-coordinates pairing between the points of M and
// the points of dual(M), expressed in units of tbar.  An entry is "sharp"
// when the pairing series was resolved beyond the canonical valuation
// e*r/(p-1); non-sharp zero entries rest on exact term-by-term cancellation
// of the canonical expansions.
struct GramData {
  FpMat mat;
  std::vector<std::vector<char>> sharp;
  bool all_sharp = true;
  Series tbar;
};

GramData pairing_gram(const KisinModule& M, const SolutionSet& sols,
                      const SolutionSet& dual_sols);

// {c : c . G . b = 0 for every row b of dual_sub}, rows of the result
FpMat orthogonal_complement(const FpMat& gram, const FpMat& dual_sub, int d,
                            long long p);

struct DualityData {
  KisinModule M;
  KisinModule Mdual;
  SolutionSet sols;
  SolutionSet dual_sols;
  GramData gram;
  std::vector<Rat> breaks;
  std::vector<Rat> dual_breaks;
};

DualityData duality_data(const KisinModule& M, Rat target_prec = Rat(0));

// level function pairing the upper index j with a depth on the dual side
Rat upper_level(const KisinModule& M, const Rat& j);

// dim of the upper-index-j subgroup: the Gram-orthogonal complement of the
// dual points of valuation > upper_level(j)
long long upper_dim(const DualityData& D, const Rat& j);

// Multiset of upper jumps, one value p*(e*r/(p-1) - l) per dual break l.
std::vector<Rat> upper_jumps(const DualityData& D);

struct DualityChecks {
  bool gram_invertible = false;
  bool gram_all_sharp = false;
  bool breaks_bounded = false;
  bool jumps_bounded = false;
  bool dim_sum_ok = false;
  bool double_orthogonal_ok = false;
  int grid_points = 0;
};

DualityChecks run_duality_checks(const DualityData& D, int grid = 50);

} // namespace kisinram
