#include <doctest.h>

#include "kisinram/corpus.hpp"
#include "kisinram/mixedchar.hpp"
#include "kisinram/ramification.hpp"

using namespace kisinram;

namespace {

FieldPtr F3 = canonical_field(3, 1);

Series mono(const FieldPtr& f, long long e, long long c, Rat prec) {
  return series_monomial(f, Rat(e), ff_int(f, c), prec);
}

} // namespace

TEST_CASE("arithmetic in O_K = Z_3[pi]/(pi^3 - 3) mod 3^N") {
  OKRing R = make_ok_ring(default_eisenstein(3, 3), 2);
  OKElem pi = ok_pi_pow(R, 1);

  SUBCASE("pi^3 equals 3") {
    CHECK(ok_mul(R, ok_mul(R, pi, pi), pi) == ok_from_int(R, 3));
    CHECK(ok_pi_pow(R, 3) == ok_from_int(R, 3));
  }
  SUBCASE("(1 + pi)(1 - pi + pi^2) = 1 + pi^3 = 4") {
    OKElem a = ok_add(R, ok_one(R), pi);
    OKElem b = ok_add(R, ok_sub(R, ok_one(R), pi), ok_mul(R, pi, pi));
    CHECK(ok_mul(R, a, b) == ok_from_int(R, 4));
  }
  SUBCASE("valuations are normalized by v(pi) = 1") {
    CHECK(ok_val(R, pi) == 1);
    CHECK(ok_val(R, ok_from_int(R, 3)) == 3);
    CHECK(ok_val(R, ok_mul(R, ok_from_int(R, 3), ok_mul(R, pi, pi))) == 5);
    CHECK(ok_val(R, ok_zero(R)) == std::nullopt);
  }
  SUBCASE("hensel inversion of a unit") {
    OKElem a = ok_sub(R, ok_one(R), pi); // 1 - pi, a unit
    OKElem inv = ok_invert(R, a);
    CHECK(ok_mul(R, a, inv) == ok_one(R));
    CHECK_THROWS_AS(ok_invert(R, pi), MathError);
  }
  SUBCASE("reduction mod p sends pi to u") {
    OKElem x = ok_add(R, ok_from_int(R, 4), pi); // 4 + pi -> 1 + u
    Series red = ok_mod_p(R, x);
    CHECK(series_coeff(red, Rat(0)) == ff_one(F3));
    CHECK(series_coeff(red, Rat(1)) == ff_one(F3));
    CHECK(red.prec == Rat(3));
  }
}

TEST_CASE("eisenstein validation") {
  CHECK_THROWS_AS(make_eisenstein(3, {1, 0, 0, 1}), InputError);  // c0 not div by p
  CHECK_THROWS_AS(make_eisenstein(3, {9, 0, 0, 1}), InputError);  // p^2 | c0
  CHECK_THROWS_AS(make_eisenstein(3, {-3, 1, 0, 1}), InputError); // c1 not div by p
  EisensteinPoly E = make_eisenstein(3, {-3, 3, 0, 1});           // u^3 + 3u - 3
  CHECK(E.F == std::vector<long long>{1, -1, 0});                 // F = 1 - u
}

TEST_CASE("adapted-basis data for rank-one modules") {
  EisensteinPoly E = make_eisenstein(3, {-3, 3, 0, 1}); // F(u) = 1 - u
  SUBCASE("A = (1): r = e and the structure constant is -F(u^p)") {
    KisinModule M = rank_one(0, ff_one(F3), 3, 1, ff_int(F3, -1), 30);
    BreuilData B = breuil_data(M, E);
    CHECK(B.rlist == std::vector<long long>{3});
    // -F(u^3) = -(1 - u^3) = 2 + u^3 over F_3
    Series expect = series_make(
        F3, {{Rat(0), ff_int(F3, 2)}, {Rat(3), ff_one(F3)}}, B.Gtilde[0][0].prec);
    CHECK(series_equal_terms(B.Gtilde[0][0], expect));
  }
  SUBCASE("A = (u^e): r = 0") {
    KisinModule M = rank_one(3, ff_one(F3), 3, 1, ff_int(F3, -1), 30);
    BreuilData B = breuil_data(M, E);
    CHECK(B.rlist == std::vector<long long>{0});
  }
}

TEST_CASE("mixed presentation of A = (u^3) over u^3 - 3 is X^3 - 3X") {
  EisensteinPoly E = default_eisenstein(3, 3);
  long long prec = mixed_min_prec(3, 3, 1, 2);
  KisinModule M = rank_one(3, ff_one(F3), 3, 1, ff_int(F3, -1), prec);
  MixedPresentation Mp = mixed_presentation(M, E, 2);
  CHECK(Mp.rlist == std::vector<long long>{0});
  CHECK(Mp.Fpi == ok_one(Mp.ring)); // F = 1 for u^e - p
  // equation X^3 + pi^3 * a * X with a = -1, i.e. X^3 - 3X
  CHECK(Mp.a[0][0] == ok_neg(Mp.ring, ok_one(Mp.ring)));
  auto breaks = mixed_lower_breaks(Mp);
  REQUIRE(breaks.size() == 2);
  CHECK(breaks[0] == Rat(3, 2));
  CHECK(breaks[1] == Rat(3, 2));
  CHECK(breaks == lower_breaks(M));
}

TEST_CASE("mixed presentation preconditions") {
  EisensteinPoly E2 = default_eisenstein(3, 2);
  auto code_of = [](auto&& fn) -> std::string {
    try { fn(); } catch (const MathError& err) { return err.code; }
    return "";
  };
  SUBCASE("p must divide e") {
    KisinModule M = rank_one(0, ff_one(F3), 2, 1, ff_int(F3, -1), 40);
    CHECK(code_of([&] { mixed_presentation(M, E2, 2); }) == "requires-p-divides-e");
  }
  SUBCASE("r must be 1") {
    KisinModule M = rank_one(0, ff_one(F3), 3, 2, ff_int(F3, -1), 60);
    CHECK(code_of([&] { mixed_presentation(M, default_eisenstein(3, 3), 2); }) ==
          "requires-r-one");
  }
  SUBCASE("entries must lie in k[[u^p]]") {
    KisinModule M = rank_one(1, ff_one(F3), 3, 1, ff_int(F3, -1), 60);
    CHECK(code_of([&] { mixed_presentation(M, default_eisenstein(3, 3), 2); }) ==
          "entries-not-in-u^p");
  }
  SUBCASE("coefficients must be in the prime field") {
    FieldPtr F9 = canonical_field(3, 2);
    KisinModule M = rank_one(3, ff_one(F9), 3, 1, ff_int(F9, -1), 60);
    CHECK(code_of([&] { mixed_presentation(M, default_eisenstein(3, 3), 2); }) ==
          "requires-prime-field");
  }
}

TEST_CASE("mod-p comparison on a rank-2 module") {
  long long prec = mixed_min_prec(3, 6, 2, 2);
  SeriesMat A = {{mono(F3, 0, 1, Rat(prec)), mono(F3, 3, 1, Rat(prec))},
                 {series_zero(F3, Rat(prec)), mono(F3, 6, 1, Rat(prec))}};
  KisinModule M = make_module(F3, 6, 1, ff_int(F3, -1), A, prec);
  EisensteinPoly E = default_eisenstein(3, 6);
  CompareReport rep = compare_mod_p(M, E, 2);
  CHECK(rep.all_equal);
  CHECK(rep.breuil.rlist == std::vector<long long>{6, 0});
  auto mixed = mixed_lower_breaks(mixed_presentation(M, E, 2));
  CHECK(mixed == lower_breaks(M));
}

TEST_CASE("comparison is stable across p-adic depth N") {
  long long prec = mixed_min_prec(3, 3, 1, 3);
  KisinModule M = rank_one(3, ff_int(F3, 2), 3, 1, ff_int(F3, -1), prec);
  EisensteinPoly E = default_eisenstein(3, 3);
  for (long long N : {2LL, 3LL}) {
    CompareReport rep = compare_mod_p(M, E, N);
    CHECK(rep.all_equal);
    CHECK(mixed_lower_breaks(mixed_presentation(M, E, N)) == lower_breaks(M));
  }
}

TEST_CASE("newton-polygon boundary is reported as inconclusive") {
  // hand-built 2-variable presentation where the second layer sees a
  // residual exactly on the boundary mu = p * lambda*
  OKRing R = make_ok_ring(default_eisenstein(3, 3), 2);
  MixedPresentation Mp;
  Mp.ring = R;
  Mp.d = 2;
  Mp.rlist = {0, 0};
  OKElem one = ok_one(R), zero = ok_zero(R);
  Mp.a = {{ok_neg(R, one), one}, {zero, ok_neg(R, one)}};
  Mp.Fpi = one;
  try {
    mixed_lower_breaks(Mp);
    FAIL("expected an inconclusive rejection");
  } catch (const MathError& err) {
    CHECK(err.code == "inconclusive");
  }
}
