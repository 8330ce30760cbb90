#pragma once

#include <random>
#include <string>

#include "kisinram/mixedchar.hpp"

namespace kisinram {

struct CorpusInstance {
  std::string name;
  KisinModule M;
  bool mixed = false; // run the mixed-characteristic comparison too
};

// All rank-one modules for p in {3,5}, e <= 6, r in {1,2}, 0 <= s <= e*r.
std::vector<CorpusInstance> rank_one_corpus();

// Curated triangular instances of rank <= 3, chosen so that the duality
// pairing resolves and (for the mixed-eligible ones) the valuation
// recursion stays generic.
std::vector<CorpusInstance> triangular_corpus();

std::vector<CorpusInstance> shipped_corpus();

// A = P * diag(u^{s_i}) * Q with random unit matrices over k[[u^p]] and the
// s_i random multiples of p below e; always admissible with r = 1.
KisinModule random_stride_p_module(std::mt19937_64& rng, long long p,
                                   long long e, int d, long long prec);

// module precision needed by the mixed lifts (plus elimination slack)
long long mixed_min_prec(long long p, long long e, int d, long long N);

struct VerifyOutcome {
  std::string name;
  bool pass = false;
  bool inconclusive = false;
  std::string detail;
};

struct VerifySummary {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  std::vector<VerifyOutcome> results;
};

// Per instance: the duality checks, and for mixed-eligible instances the
// mod-p presentation comparison and the break-multiset comparison.
VerifySummary verify_corpus(const std::vector<CorpusInstance>& corpus,
                            int threads);

} // namespace kisinram
