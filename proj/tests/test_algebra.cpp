#include <doctest.h>

#include <random>

#include "kisinram/finite_field.hpp"
#include "kisinram/series.hpp"

using namespace kisinram;

namespace {

// brute-force oracle: enumerate all of F_{p^m} and test x^p == a etc.
std::vector<FFElem> all_elements(const FieldPtr& f) {
  long long p = f->p;
  int m = f->m;
  long long n = 1;
  for (int i = 0; i < m; ++i) n *= p;
  std::vector<FFElem> out;
  for (long long k = 0; k < n; ++k) {
    std::vector<long long> c(m);
    long long t = k;
    for (int i = 0; i < m; ++i) { c[i] = t % p; t /= p; }
    out.push_back(ff_make(f, c));
  }
  return out;
}

} // namespace

TEST_CASE("field arithmetic in F_9") {
  FieldPtr F9 = canonical_field(3, 2);
  // the canonical degree-2 modulus over F_3 is x^2 + 1
  CHECK(F9->modulus == std::vector<long long>{1, 0, 1});
  FFElem t = ff_gen(F9);
  CHECK(t * t == ff_int(F9, -1));
  CHECK(ff_inv(t) * t == ff_one(F9));
  // Frobenius is x -> x^3 = -x on the generator, so its inverse sends t to -t
  CHECK(ff_frobenius(t) == -t);
  CHECK(ff_pth_root(t) == ff_int(F9, 2) * t);
}

TEST_CASE("pth root inverts frobenius exhaustively") {
  for (auto [p, m] : {std::pair<long long, int>{3, 1}, {3, 2}, {3, 3}, {3, 4},
                      {5, 1}, {5, 2}, {7, 2}}) {
    FieldPtr f = canonical_field(p, m);
    for (auto& x : all_elements(f)) {
      CHECK(ff_pth_root(ff_frobenius(x)) == x);
      CHECK(ff_frobenius(ff_pth_root(x)) == x);
    }
  }
}

TEST_CASE("frobenius is a ring homomorphism") {
  FieldPtr f = canonical_field(3, 3);
  auto elems = all_elements(f);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto& a = elems[rng() % elems.size()];
    auto& b = elems[rng() % elems.size()];
    CHECK(ff_frobenius(a * b) == ff_frobenius(a) * ff_frobenius(b));
    CHECK(ff_frobenius(a + b) == ff_frobenius(a) + ff_frobenius(b));
  }
}

TEST_CASE("kummer solver against brute force") {
  // x^(p-1) = a: the solution line is c * gen, c in F_p^x
  for (auto [p, m] : {std::pair<long long, int>{3, 1}, {3, 2}, {5, 1}, {5, 2}}) {
    FieldPtr f = canonical_field(p, m);
    for (auto& a : all_elements(f)) {
      if (a.is_zero()) continue;
      auto [gen, ext] = ff_solve_kummer(a);
      FFElem ge = ff_embed(gen, ext);
      FFElem ae = ff_embed(a, ext);
      CHECK(!ge.is_zero());
      CHECK(ff_pow(ge, (unsigned long long)(p - 1)) == ae);
      // count the solutions inside the extension by brute force: exactly p-1
      int count = 0;
      for (auto& x : all_elements(ext))
        if (!x.is_zero() && ff_pow(x, (unsigned long long)(p - 1)) == ae) ++count;
      CHECK(count == p - 1);
    }
  }
}

TEST_CASE("kummer solution for a=2 over F_9") {
  FieldPtr F9 = canonical_field(3, 2);
  // x^2 = 2 = -1 has the root t (t^2 = -1): no extension needed
  auto [gen, ext] = ff_solve_kummer(ff_int(F9, 2));
  CHECK(ext->m == 2);
  CHECK(gen * gen == ff_int(ext, 2));
}

TEST_CASE("artin-schreier solver against brute force") {
  for (auto [p, m] : {std::pair<long long, int>{3, 1}, {3, 2}, {5, 1}}) {
    FieldPtr f = canonical_field(p, m);
    auto elems = all_elements(f);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
      FFElem a = elems[rng() % elems.size()];
      FFElem b = elems[rng() % elems.size()];
      if (a.is_zero()) continue;
      auto [x, ext] = ff_solve_artin_schreier(a, b);
      FFElem ae = ff_embed(a, ext), be = ff_embed(b, ext);
      CHECK(ff_pow(x, (unsigned long long)p) - ae * x == be);
    }
  }
}

TEST_CASE("artin-schreier x^3 - x = 1 needs a cubic extension") {
  FieldPtr F3 = canonical_field(3, 1);
  auto [x, ext] = ff_solve_artin_schreier(ff_one(F3), ff_one(F3));
  CHECK(ext->m == 3);
  CHECK(ff_pow(x, 3) - x == ff_one(ext));
}

TEST_CASE("field embeddings are compatible with arithmetic") {
  FieldPtr F3 = canonical_field(3, 1);
  FieldPtr F9 = canonical_field(3, 2);
  FieldPtr F27 = canonical_field(3, 3);
  FieldPtr J = join_field(F9, F27); // degree lcm(2,3) = 6
  CHECK(J->m == 6);
  for (auto& x : all_elements(F9)) {
    FFElem y = ff_embed(x, J);
    CHECK(ff_embed(x * x, J) == y * y);
    auto back = ff_as_prime(ff_embed(ff_int(F9, 2), J));
    CHECK(back.has_value());
    CHECK(*back == 2);
  }
  CHECK(ff_as_prime(ff_embed(ff_gen(F9), J)) == std::nullopt);
  CHECK(same_field(join_field(F3, F9), F9));
}

TEST_CASE("series inversion worked examples") {
  FieldPtr F3 = canonical_field(3, 1);
  FFElem one = ff_one(F3);
  SUBCASE("geometric series") {
    Series a = series_make(F3, {{Rat(0), one}, {Rat(1), -one}}, Rat(4)); // 1 - u
    Series g = series_invert(a);
    Series expect = series_make(
        F3, {{Rat(0), one}, {Rat(1), one}, {Rat(2), one}, {Rat(3), one}}, Rat(4));
    CHECK(series_equal_terms(g, expect));
    CHECK(g.prec == Rat(4));
  }
  SUBCASE("non-trivial leading unit") {
    Series a = series_make(F3, {{Rat(0), ff_int(F3, 2)}, {Rat(1), one}}, Rat(3));
    Series g = series_invert(a); // (2+u)^{-1} = 2 + 2u + 2u^2 mod u^3
    Series expect = series_make(
        F3, {{Rat(0), ff_int(F3, 2)}, {Rat(1), ff_int(F3, 2)}, {Rat(2), ff_int(F3, 2)}},
        Rat(3));
    CHECK(series_equal_terms(g, expect));
  }
  SUBCASE("non-unit is rejected") {
    Series a = series_monomial(F3, Rat(1), one, Rat(4)); // u
    CHECK_THROWS_WITH_AS(series_invert(a), doctest::Contains("valuation 0"),
                         MathError);
  }
}

TEST_CASE("random unit inversion round-trips") {
  FieldPtr F5 = canonical_field(5, 1);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::pair<Rat, FFElem>> terms;
    terms.push_back({Rat(0), ff_int(F5, 1 + (long long)(rng() % 4))});
    for (int k = 1; k < 8; ++k)
      terms.push_back({Rat(k), ff_int(F5, (long long)(rng() % 5))});
    Series a = series_make(F5, terms, Rat(8));
    Series prod = series_mul(a, series_invert(a));
    CHECK(prod.val() == Rat(0));
    CHECK(series_coeff(prod, Rat(0)) == ff_one(F5));
    Series rest = series_sub(prod, series_const(F5, ff_one(F5), prod.prec));
    CHECK(!rest.has_terms());
  }
}

TEST_CASE("series valuation is multiplicative") {
  FieldPtr F3 = canonical_field(3, 1);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto rnd = [&](long long maxv) {
      std::vector<std::pair<Rat, FFElem>> terms;
      long long v = (long long)(rng() % maxv);
      terms.push_back({Rat(v, 2), ff_int(F3, 1 + (long long)(rng() % 2))});
      terms.push_back({Rat(v + 1 + (long long)(rng() % 5), 2),
                       ff_int(F3, (long long)(rng() % 3))});
      return series_make(F3, terms, Rat(20), 6);
    };
    Series a = rnd(6), b = rnd(6);
    Series c = series_mul(a, b);
    REQUIRE(a.val().has_value());
    REQUIRE(b.val().has_value());
    REQUIRE(c.val().has_value());
    CHECK(*c.val() == *a.val() + *b.val());
  }
}

TEST_CASE("series frobenius and pth root") {
  FieldPtr F9 = canonical_field(3, 2);
  FFElem t = ff_gen(F9);
  Series a = series_make(F9, {{Rat(1), t}, {Rat(2), ff_one(F9)}}, Rat(5));
  Series fr = series_frobenius(a);
  CHECK(fr.prec == Rat(15));
  CHECK(series_coeff(fr, Rat(3)) == ff_frobenius(t));
  CHECK(series_coeff(fr, Rat(6)) == ff_one(F9));
  CHECK(series_equal_terms(series_pth_root(fr), a));
  SUBCASE("pth root past the denominator cap") {
    Series b = series_monomial(F9, Rat(1, 27), ff_one(F9), Rat(1), 27);
    CHECK_THROWS_AS(series_pth_root(b), MathError);
  }
}

TEST_CASE("series precision propagation") {
  FieldPtr F3 = canonical_field(3, 1);
  FFElem one = ff_one(F3);
  Series a = series_make(F3, {{Rat(2), one}}, Rat(10)); // u^2 + O(u^10)
  Series b = series_make(F3, {{Rat(3), one}}, Rat(5));  // u^3 + O(u^5)
  Series c = series_mul(a, b);
  // known modulo u^min(10+3, 5+2) = u^7
  CHECK(c.prec == Rat(7));
  CHECK(series_coeff(c, Rat(5)) == one);
  Series s = series_add(a, b);
  CHECK(s.prec == Rat(5));
}
