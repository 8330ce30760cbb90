#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "kisinram/error.hpp"

namespace kisinram {

// Description of F_{p^m} = F_p[x]/(modulus).  Immutable once built.
struct FieldDesc {
  long long p;
  int m;
  std::vector<long long> modulus; // c_0..c_m, monic (c_m == 1)
};

using FieldPtr = std::shared_ptr<const FieldDesc>;

// The canonical field of degree m: its modulus is the lexicographically
// smallest monic irreducible polynomial, coefficients compared as the
// integer tuple (c_0,...,c_{m-1}).
FieldPtr canonical_field(long long p, int m);

// Field with a user-supplied modulus; verifies irreducibility.
FieldPtr make_field(long long p, std::vector<long long> modulus);

bool same_field(const FieldPtr& a, const FieldPtr& b);

struct FFElem {
  FieldPtr field;
  std::vector<long long> c; // size m, residues in {0,...,p-1}

  bool is_zero() const {
    for (long long x : c) if (x != 0) return false;
    return true;
  }
};

FFElem ff_zero(const FieldPtr& f);
FFElem ff_one(const FieldPtr& f);
FFElem ff_int(const FieldPtr& f, long long n);
FFElem ff_make(const FieldPtr& f, std::vector<long long> coords);
FFElem ff_gen(const FieldPtr& f); // the class of x

FFElem operator+(const FFElem& a, const FFElem& b);
FFElem operator-(const FFElem& a, const FFElem& b);
FFElem operator*(const FFElem& a, const FFElem& b);
FFElem operator-(const FFElem& a);
bool operator==(const FFElem& a, const FFElem& b);
inline bool operator!=(const FFElem& a, const FFElem& b) { return !(a == b); }

FFElem ff_inv(const FFElem& a);
FFElem ff_pow(const FFElem& a, unsigned long long e);
FFElem ff_frobenius(const FFElem& a);  // x -> x^p
FFElem ff_pth_root(const FFElem& a);   // inverse of Frobenius
bool ff_lex_less(const FFElem& a, const FFElem& b);

// If a lies in the prime subfield, its residue; otherwise nullopt.
std::optional<long long> ff_as_prime(const FFElem& a);

// Embed into a field whose degree is a multiple of the source degree.
// Deterministic: the source generator maps to the lexicographically
// smallest root of the source modulus in the target.
FFElem ff_embed(const FFElem& x, const FieldPtr& target);

// Smallest common overfield of a and b (degree lcm; reuses a or b when
// one contains the other).
FieldPtr join_field(const FieldPtr& a, const FieldPtr& b);

// Solve x^(p-1) = a; the generator spans the solution line:
// the full solution set is {c * generator : c in F_p^x}.
std::pair<FFElem, FieldPtr> ff_solve_kummer(const FFElem& a);

// Solve x^p - a*x = b; extends the field by degree p when needed.
std::pair<FFElem, FieldPtr> ff_solve_artin_schreier(const FFElem& a, const FFElem& b);

} // namespace kisinram
