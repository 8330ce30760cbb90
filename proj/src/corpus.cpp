#include "kisinram/corpus.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "kisinram/error.hpp"
#include "kisinram/ramification.hpp"

namespace kisinram {

namespace {

Series upoly(const FieldPtr& f, std::vector<std::pair<long long, long long>> terms,
             long long prec, long long cap) {
  std::vector<std::pair<Rat, FFElem>> t;
  for (auto& [e, c] : terms) t.push_back({Rat(e), ff_int(f, c)});
  return series_make(f, std::move(t), Rat(prec), cap);
}

KisinModule triangular_module(long long p, long long e, long long r,
                              std::vector<std::vector<std::vector<std::pair<long long, long long>>>> rows,
                              long long prec) {
  FieldPtr f = canonical_field(p, 1);
  long long cap = default_denom_cap(p);
  SeriesMat A;
  for (auto& row : rows) {
    std::vector<Series> srow;
    for (auto& entry : row) srow.push_back(upoly(f, entry, prec, cap));
    A.push_back(std::move(srow));
  }
  return make_module(f, e, r, ff_int(f, -1), std::move(A), prec, cap);
}

std::string instance_name(const std::string& kind, long long p, long long e,
                          long long r, long long extra) {
  std::ostringstream os;
  os << kind << "-p" << p << "-e" << e << "-r" << r << "-" << extra;
  return os.str();
}

} // namespace

long long mixed_min_prec(long long p, long long e, int d, long long N) {
  return p * e * N + 2 * d * e + e;
}

std::vector<CorpusInstance> rank_one_corpus() {
  std::vector<CorpusInstance> out;
  for (long long p : {3LL, 5LL})
    for (long long e = 1; e <= 6; ++e)
      for (long long r : {1LL, 2LL})
        for (long long s = 0; s <= e * r; ++s) {
          FieldPtr f = canonical_field(p, 1);
          bool mixed = (r == 1 && e % p == 0 && s % p == 0);
          long long prec = std::max(default_prec(p, 1, e, r),
                                    mixed ? mixed_min_prec(p, e, 1, 2) : 0);
          CorpusInstance inst{instance_name("rank1", p, e, r, s),
                              rank_one(s, ff_one(f), e, r, ff_int(f, -1), prec),
                              mixed};
          out.push_back(std::move(inst));
        }
  return out;
}

std::vector<CorpusInstance> triangular_corpus() {
  std::vector<CorpusInstance> out;
  long long cap3 = default_denom_cap(3);
  (void)cap3;

  // the rank-2 extension with a nilpotent-plus-unit shape; its pairing rests
  // on exact cancellation of the canonical expansions
  out.push_back({"tri-p3-e2-ext",
                 triangular_module(3, 2, 1,
                                   {{{{1, 1}}, {{0, 1}}},
                                    {{}, {{1, 1}}}},
                                   default_prec(3, 2, 2, 1)),
                 false});

  // diagonal instances: sharp pairings, decoupled layers
  out.push_back({"tri-p3-e2-diag01",
                 triangular_module(3, 2, 1,
                                   {{{{0, 1}}, {}},
                                    {{}, {{2, 1}}}},
                                   default_prec(3, 2, 2, 1)),
                 false});
  out.push_back({"tri-p3-e3-diag123",
                 triangular_module(3, 3, 1,
                                   {{{{1, 1}}, {}, {}},
                                    {{}, {{2, 1}}, {}},
                                    {{}, {}, {{3, 1}}}},
                                   default_prec(3, 3, 3, 1)),
                 false});
  out.push_back({"tri-p5-e2-diag02",
                 triangular_module(5, 2, 1,
                                   {{{{0, 2}}, {}},
                                    {{}, {{2, 1}}}},
                                   default_prec(5, 2, 2, 1)),
                 false});

  // branch-B dominated extension: off-diagonal valuation far above the
  // lower layer's break, so all particular expansions terminate
  out.push_back({"tri-p3-e3-extB",
                 triangular_module(3, 3, 1,
                                   {{{{3, 1}}, {{2, 1}}},
                                    {{}, {{0, 1}}}},
                                   default_prec(3, 2, 3, 1)),
                 false});

  // mixed-eligible triangular instances (p | e, entries in k[[u^p]], no
  // pivot swaps in the Smith elimination, generic valuation recursion)
  out.push_back({"tri-p3-e3-mixed-a",
                 triangular_module(3, 3, 1,
                                   {{{{0, 1}}, {{0, 1}}},
                                    {{}, {{3, 1}}}},
                                   mixed_min_prec(3, 3, 2, 2)),
                 true});
  out.push_back({"tri-p3-e6-mixed-b",
                 triangular_module(3, 6, 1,
                                   {{{{0, 1}}, {{3, 1}}},
                                    {{}, {{6, 1}}}},
                                   mixed_min_prec(3, 6, 2, 2)),
                 true});
  out.push_back({"tri-p3-e6-mixed-c",
                 triangular_module(3, 6, 1,
                                   {{{{3, 1}}, {}},
                                    {{}, {{6, 2}}}},
                                   mixed_min_prec(3, 6, 2, 2)),
                 true});
  out.push_back({"tri-p3-e6-mixed-diag3",
                 triangular_module(3, 6, 1,
                                   {{{{0, 1}}, {}, {}},
                                    {{}, {{3, 1}}, {}},
                                    {{}, {}, {{6, 1}}}},
                                   mixed_min_prec(3, 6, 3, 2)),
                 true});
  return out;
}

std::vector<CorpusInstance> shipped_corpus() {
  std::vector<CorpusInstance> out = rank_one_corpus();
  auto tri = triangular_corpus();
  out.insert(out.end(), tri.begin(), tri.end());
  return out;
}

KisinModule random_stride_p_module(std::mt19937_64& rng, long long p,
                                   long long e, int d, long long prec) {
  FieldPtr f = canonical_field(p, 1);
  long long cap = default_denom_cap(p);
  auto rnd = [&](long long n) { return (long long)(rng() % (unsigned long long)n); };

  auto random_entry = [&](bool unit) {
    std::vector<std::pair<Rat, FFElem>> terms;
    long long c0 = unit ? 1 + rnd(p - 1) : rnd(p);
    if (c0) terms.push_back({Rat(0), ff_int(f, c0)});
    for (long long k = 1; k <= 3; ++k) {
      long long c = rnd(p);
      if (c) terms.push_back({Rat(k * p), ff_int(f, c)});
    }
    return series_make(f, std::move(terms), Rat(prec), cap);
  };

  auto random_unit_matrix = [&]() {
    SeriesMat L = mat_identity(f, d, Rat(prec), cap);
    SeriesMat U = mat_identity(f, d, Rat(prec), cap);
    for (int i = 0; i < d; ++i) {
      L[i][i] = random_entry(true);
      U[i][i] = random_entry(true);
      for (int j = 0; j < i; ++j) L[i][j] = random_entry(false);
      for (int j = i + 1; j < d; ++j) U[i][j] = random_entry(false);
    }
    return mat_mul(L, U);
  };

  SeriesMat D(d, std::vector<Series>(d, series_zero(f, Rat(prec), cap)));
  for (int i = 0; i < d; ++i) {
    long long s = p * rnd(e / p + 1); // multiple of p in [0, e]
    D[i][i] = series_monomial(f, Rat(s), ff_one(f), Rat(prec), cap);
  }
  SeriesMat A = mat_mul(random_unit_matrix(), mat_mul(D, random_unit_matrix()));
  return make_module(f, e, 1, ff_int(f, -1), std::move(A), prec, cap);
}

VerifySummary verify_corpus(const std::vector<CorpusInstance>& corpus,
                            int threads) {
  if (corpus.empty()) throw InputError("empty-corpus");
  VerifySummary summary;
  summary.total = (int)corpus.size();
  summary.results.resize(corpus.size());

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      const CorpusInstance& inst = corpus[i];
      VerifyOutcome& res = summary.results[i];
      res.name = inst.name;
      try {
        DualityData D = duality_data(inst.M);
        DualityChecks C = run_duality_checks(D);
        bool ok = C.gram_invertible && C.breaks_bounded && C.jumps_bounded &&
                  C.dim_sum_ok && C.double_orthogonal_ok;
        std::ostringstream detail;
        if (!ok) detail << "duality checks failed;";
        if (inst.mixed) {
          EisensteinPoly E =
              default_eisenstein(inst.M.field->p, inst.M.e);
          CompareReport rep = compare_mod_p(inst.M, E);
          if (!rep.all_equal) {
            ok = false;
            detail << "mod-p presentations differ;";
          }
          try {
            MixedPresentation Mp = mixed_presentation(inst.M, E, 2);
            std::vector<Rat> mixed = mixed_lower_breaks(Mp);
            if (mixed != D.breaks) {
              ok = false;
              detail << "break multisets differ;";
            }
          } catch (const MathError& err) {
            if (err.code == "inconclusive") {
              res.inconclusive = true;
              detail << "mixed breaks inconclusive;";
            } else {
              throw;
            }
          }
        }
        res.pass = ok;
        res.detail = detail.str();
      } catch (const MathError& err) {
        res.pass = false;
        res.detail = err.code + ": " + err.what();
      }
    }
  };

  if (threads < 1) threads = 1;
  if ((size_t)threads > corpus.size()) threads = (int)corpus.size();
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (auto& res : summary.results) {
    if (res.pass) ++summary.passed;
    else ++summary.failed;
    if (res.inconclusive) ++summary.inconclusive;
  }
  return summary;
}

} // namespace kisinram
