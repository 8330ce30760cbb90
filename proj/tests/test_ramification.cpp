#include <doctest.h>

#include <map>
#include <random>

#include "kisinram/ramification.hpp"

using namespace kisinram;

namespace {

FieldPtr F3 = canonical_field(3, 1);

Series mono(const FieldPtr& f, long long e, long long c, Rat prec) {
  return series_monomial(f, Rat(e), ff_int(f, c), prec);
}

KisinModule unipotent_rank2(long long prec) {
  SeriesMat A = {{mono(F3, 1, 1, Rat(prec)), mono(F3, 0, 1, Rat(prec))},
                 {series_zero(F3, Rat(prec)), mono(F3, 1, 1, Rat(prec))}};
  return make_module(F3, 2, 1, ff_int(F3, -1), A, prec);
}

std::map<Rat, int> as_multiset(const std::vector<Rat>& v) {
  std::map<Rat, int> m;
  for (auto& x : v) m[x]++;
  return m;
}

} // namespace

TEST_CASE("rank-one lower breaks are s/(p-1) with multiplicity p-1") {
  for (long long p : {3LL, 5LL}) {
    FieldPtr F = canonical_field(p, 1);
    for (long long e : {1LL, 2LL, 3LL})
      for (long long s = 0; s <= e; ++s) {
        KisinModule M = rank_one(s, ff_one(F), e, 1, ff_int(F, -1));
        auto breaks = lower_breaks(M);
        REQUIRE((long long)breaks.size() == p - 1);
        for (auto& b : breaks) CHECK(b == Rat(s, p - 1));
      }
  }
}

TEST_CASE("rank-one upper jumps are p*s/(p-1)") {
  for (long long p : {3LL, 5LL}) {
    FieldPtr F = canonical_field(p, 1);
    for (long long e : {2LL, 3LL})
      for (long long s = 0; s <= e; ++s) {
        KisinModule M = rank_one(s, ff_one(F), e, 1, ff_int(F, -1));
        DualityData D = duality_data(M);
        auto jumps = upper_jumps(D);
        REQUIRE((long long)jumps.size() == p - 1);
        for (auto& j : jumps) CHECK(j == Rat(p * s, p - 1));
      }
  }
}

TEST_CASE("canonical line solves its own equation") {
  KisinModule M = unipotent_rank2(30);
  Series tb = tbar_series(M, Rat(3));
  REQUIRE(tb.has_terms());
  CHECK(*tb.val() == Rat(M.e * M.r, 2)); // e*r/(p-1) = 1
  // tbar^p = (u^{er}/c0bar^r) tbar
  Series g = series_monomial(tb.field, Rat(M.e * M.r),
                             ff_embed(ff_pow(ff_inv(M.c0bar), 1), tb.field),
                             tb.prec + Rat(M.e * M.r));
  Series res = series_sub(series_frobenius(tb), series_mul(g, tb));
  if (res.has_terms()) CHECK(*res.val() >= Rat(3));
}

TEST_CASE("unipotent rank-2 duality data") {
  KisinModule M = unipotent_rank2(30);
  DualityData D = duality_data(M);

  SUBCASE("lower breaks of both sides") {
    auto expect = as_multiset(D.breaks);
    CHECK(expect[Rat(1, 6)] == 6);
    CHECK(expect[Rat(1, 2)] == 2);
    CHECK(as_multiset(D.dual_breaks) == expect);
  }
  SUBCASE("gram matrix is the antidiagonal") {
    CHECK(D.gram.mat == FpMat{{0, 1}, {1, 0}});
    // the (1,1) entry rests on exact cancellation at the canonical valuation
    CHECK(!D.gram.all_sharp);
    CHECK(D.gram.sharp[0][1]);
    CHECK(D.gram.sharp[1][0]);
  }
  SUBCASE("upper jumps") {
    auto jm = as_multiset(upper_jumps(D));
    CHECK(jm[Rat(3, 2)] == 2);
    CHECK(jm[Rat(5, 2)] == 6);
  }
  SUBCASE("upper filtration dimensions step at the jumps") {
    CHECK(upper_dim(D, Rat(0)) == 2);
    CHECK(upper_dim(D, Rat(3, 2)) == 2);  // filtration is right-continuous
    CHECK(upper_dim(D, Rat(8, 5)) == 1);  // between 3/2 and 5/2
    CHECK(upper_dim(D, Rat(5, 2)) == 1);
    CHECK(upper_dim(D, Rat(3)) == 0);
  }
  SUBCASE("all structural checks pass") {
    DualityChecks C = run_duality_checks(D);
    CHECK(C.gram_invertible);
    CHECK(C.breaks_bounded);
    CHECK(C.jumps_bounded);
    CHECK(C.dim_sum_ok);
    CHECK(C.double_orthogonal_ok);
  }
}

TEST_CASE("etale-multiplicative block has split gram") {
  // A = diag(1, u^2), e = 2, r = 1: the pairing is coordinatewise, and each
  // coordinate matches the etale part of one side with the multiplicative
  // part of the other, so the gram matrix is diagonal
  SeriesMat A = {{mono(F3, 0, 1, Rat(40)), series_zero(F3, Rat(40))},
                 {series_zero(F3, Rat(40)), mono(F3, 2, 1, Rat(40))}};
  KisinModule M = make_module(F3, 2, 1, ff_int(F3, -1), A, 40);
  DualityData D = duality_data(M);
  auto bm = as_multiset(D.breaks);
  CHECK(bm[Rat(0)] == 6);
  CHECK(bm[Rat(1)] == 2);
  CHECK(D.gram.mat[0][0] != 0);
  CHECK(D.gram.mat[1][1] != 0);
  CHECK(D.gram.mat[0][1] == 0);
  CHECK(D.gram.mat[1][0] == 0);
  auto jm = as_multiset(upper_jumps(D));
  CHECK(jm[Rat(0)] == 2);  // dual break 1 (the multiplicative line)
  CHECK(jm[Rat(3)] == 6);  // dual break 0 (the etale part)
  DualityChecks C = run_duality_checks(D);
  CHECK(C.gram_invertible);
  CHECK(C.dim_sum_ok);
  CHECK(C.double_orthogonal_ok);
}

TEST_CASE("breaks scale linearly under base change") {
  KisinModule M = unipotent_rank2(40);
  auto base = lower_breaks(M);
  for (long long N : {2LL, 3LL}) {
    auto scaled = lower_breaks(base_change(M, N));
    REQUIRE(scaled.size() == base.size());
    for (size_t i = 0; i < base.size(); ++i) CHECK(scaled[i] == base[i] * Rat(N));
  }
}

TEST_CASE("breaks are invariant under triangular unit basis change") {
  std::mt19937_64 rng(2024);
  KisinModule M = unipotent_rank2(40);
  auto expect = lower_breaks(M);
  for (int trial = 0; trial < 20; ++trial) {
    auto unit = [&]() {
      std::vector<std::pair<Rat, FFElem>> terms;
      terms.push_back({Rat(0), ff_int(F3, 1 + (long long)(rng() % 2))});
      for (int k = 1; k < 4; ++k)
        terms.push_back({Rat(k), ff_int(F3, (long long)(rng() % 3))});
      return series_make(F3, terms, Rat(40));
    };
    auto any = [&]() {
      std::vector<std::pair<Rat, FFElem>> terms;
      for (int k = 0; k < 4; ++k)
        terms.push_back({Rat(k), ff_int(F3, (long long)(rng() % 3))});
      return series_make(F3, terms, Rat(40));
    };
    SeriesMat C = {{unit(), any()}, {series_zero(F3, Rat(40)), unit()}};
    CHECK(lower_breaks(change_basis(M, C)) == expect);
  }
}

TEST_CASE("corrupted pairing fails the structural checks") {
  KisinModule M = unipotent_rank2(30);
  DualityData D = duality_data(M);
  D.gram.mat = {{0, 0}, {0, 0}}; // degenerate pairing
  DualityChecks C = run_duality_checks(D);
  CHECK(!C.gram_invertible);
  CHECK(!C.dim_sum_ok);
}

TEST_CASE("breaks and jumps respect the global bounds") {
  std::mt19937_64 rng(4711);
  Rat vstar(2, 2); // e*r/(p-1) = 1 for e=2, r=1, p=3
  for (int trial = 0; trial < 50; ++trial) {
    // random admissible upper-triangular module with e=2
    auto entry = [&](long long minexp) {
      long long ex = minexp + (long long)(rng() % 3);
      return mono(F3, ex, 1 + (long long)(rng() % 2), Rat(40));
    };
    SeriesMat A = {{entry(0), entry(0)}, {series_zero(F3, Rat(40)), entry(0)}};
    KisinModule M;
    try {
      M = make_module(F3, 2, 1, ff_int(F3, -1), A, 40);
    } catch (const MathError&) {
      continue;
    }
    DualityData D;
    try {
      D = duality_data(M);
    } catch (const MathError& err) {
      CHECK(err.code == "precision-exhausted"); // only acceptable failure
      continue;
    }
    for (auto& b : D.breaks) CHECK(b <= vstar);
    for (auto& b : D.dual_breaks) CHECK(b <= vstar);
    for (auto& j : upper_jumps(D)) {
      CHECK(j >= Rat(0));
      CHECK(j <= vstar * Rat(3));
    }
  }
}
