#include "kisinram/finite_field.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "kisinram/fp_linalg.hpp"
#include "kisinram/rational.hpp"

namespace kisinram {

namespace {

using Poly = std::vector<long long>; // coefficients c_0, c_1, ...

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& g, long long p) {
  // g monic
  poly_trim(f);
  while (f.size() >= g.size() && !f.empty()) {
    long long lead = f.back();
    size_t shift = f.size() - g.size();
    if (lead != 0)
      for (size_t i = 0; i + 1 < g.size(); ++i)
        f[shift + i] = ((f[shift + i] - lead * g[i]) % p + p) % p;
    f.pop_back();
    poly_trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, long long p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(c), mod, p);
}

Poly poly_powmod(Poly base, unsigned long long e, const Poly& mod, long long p) {
  Poly r = {1};
  base = poly_mod(std::move(base), mod, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, long long p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    long long inv = fp_inv(b.back(), p);
    Poly bm = b;
    for (auto& x : bm) x = x * inv % p; // make monic for poly_mod
    Poly r = poly_mod(a, bm, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// No irreducible factor of degree <= m/2 (sufficient for degree-m input).
bool is_irreducible(const Poly& f, long long p) {
  int m = (int)f.size() - 1;
  if (m == 1) return true;
  Poly t = {0, 1}; // x
  for (int j = 1; j <= m / 2; ++j) {
    t = poly_powmod(t, (unsigned long long)p, f, p); // now x^(p^j) mod f
    Poly diff = t;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p; // x^(p^j) - x
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<long long, int>, FieldPtr> canonical;
  // (p, src modulus, dst modulus) -> image of the source generator
  std::map<std::pair<std::pair<Poly, Poly>, long long>, FFElem> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

void check_same(const FFElem& a, const FFElem& b) {
  if (!same_field(a.field, b.field))
    throw std::logic_error("finite field element mismatch");
}

} // namespace

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  return a->p == b->p && a->modulus == b->modulus;
}

FieldPtr canonical_field(long long p, int m) {
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, m);
  auto it = reg.canonical.find(key);
  if (it != reg.canonical.end()) return it->second;

  // Enumerate (c_0,...,c_{m-1}) in lexicographic order, c_0 most
  // significant.  Everything with c_0 = 0 has root 0, so for m >= 2 the
  // search starts at c_0 = 1; for m = 1 the winner is x itself.
  FieldPtr result;
  if (m == 1) {
    result = std::make_shared<FieldDesc>(FieldDesc{p, 1, {0, 1}});
  } else {
    Poly f(m + 1, 0);
    f[m] = 1;
    bool found = false;
    for (long long c0 = 1; c0 < p && !found; ++c0) {
      f[0] = c0;
      // odometer over (c_1,...,c_{m-1}), last coefficient fastest
      std::vector<long long> rest(m - 1, 0);
      long long total = 1;
      for (int i = 0; i < m - 1; ++i) total *= p;
      for (long long idx = 0; idx < total; ++idx) {
        for (int i = 0; i < m - 1; ++i) f[1 + i] = rest[i];
        if (is_irreducible(f, p)) { found = true; break; }
        int pos = m - 2;
        while (pos >= 0 && ++rest[pos] == p) rest[pos--] = 0;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
    result = std::make_shared<FieldDesc>(FieldDesc{p, m, f});
  }
  reg.canonical[key] = result;
  return result;
}

FieldPtr make_field(long long p, std::vector<long long> modulus) {
  for (auto& c : modulus) c = ((c % p) + p) % p;
  if (modulus.size() < 2 || modulus.back() != 1)
    throw InputError("field modulus must be monic of degree >= 1");
  if (!is_irreducible(modulus, p))
    throw InputError("field modulus is reducible");
  int m = (int)modulus.size() - 1;
  return std::make_shared<FieldDesc>(FieldDesc{p, m, std::move(modulus)});
}

FFElem ff_zero(const FieldPtr& f) { return FFElem{f, std::vector<long long>(f->m, 0)}; }

FFElem ff_one(const FieldPtr& f) { return ff_int(f, 1); }

FFElem ff_int(const FieldPtr& f, long long n) {
  FFElem r = ff_zero(f);
  r.c[0] = ((n % f->p) + f->p) % f->p;
  return r;
}

FFElem ff_make(const FieldPtr& f, std::vector<long long> coords) {
  if ((int)coords.size() > f->m) throw InputError("too many field coordinates");
  coords.resize(f->m, 0);
  for (auto& x : coords) x = ((x % f->p) + f->p) % f->p;
  return FFElem{f, std::move(coords)};
}

FFElem ff_gen(const FieldPtr& f) {
  FFElem r = ff_zero(f);
  if (f->m == 1)
    r.c[0] = (f->p - f->modulus[0]) % f->p; // class of x mod (x + c_0)
  else
    r.c[1] = 1;
  return r;
}

FFElem operator+(const FFElem& a, const FFElem& b) {
  check_same(a, b);
  FFElem r = a;
  for (int i = 0; i < a.field->m; ++i) r.c[i] = (r.c[i] + b.c[i]) % a.field->p;
  return r;
}

FFElem operator-(const FFElem& a, const FFElem& b) {
  check_same(a, b);
  FFElem r = a;
  for (int i = 0; i < a.field->m; ++i)
    r.c[i] = ((r.c[i] - b.c[i]) % a.field->p + a.field->p) % a.field->p;
  return r;
}

FFElem operator-(const FFElem& a) {
  FFElem r = a;
  for (auto& x : r.c) x = (a.field->p - x) % a.field->p;
  return r;
}

FFElem operator*(const FFElem& a, const FFElem& b) {
  check_same(a, b);
  Poly prod = poly_mulmod(a.c, b.c, a.field->modulus, a.field->p);
  prod.resize(a.field->m, 0);
  return FFElem{a.field, std::move(prod)};
}

bool operator==(const FFElem& a, const FFElem& b) {
  return same_field(a.field, b.field) && a.c == b.c;
}

FFElem ff_inv(const FFElem& a) {
  if (a.is_zero()) throw MathError("non-unit", "inversion of zero field element");
  long long p = a.field->p;
  // extended Euclid in F_p[x]
  Poly r0 = a.field->modulus, r1 = a.c, t0 = {}, t1 = {1};
  poly_trim(r1);
  while (!r1.empty()) {
    // divide r0 by r1
    Poly q;
    Poly rem = r0;
    poly_trim(rem);
    long long lead_inv = fp_inv(r1.back(), p);
    if (rem.size() >= r1.size()) q.resize(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      long long coef = rem.back() * lead_inv % p;
      size_t shift = rem.size() - r1.size();
      q[shift] = coef;
      for (size_t i = 0; i < r1.size(); ++i)
        rem[shift + i] = ((rem[shift + i] - coef * r1[i]) % p + p) % p;
      poly_trim(rem);
    }
    // (r0, r1) = (r1, rem); (t0, t1) = (t1, t0 - q*t1)
    Poly qt1;
    if (!q.empty() && !t1.empty()) {
      qt1.assign(q.size() + t1.size() - 1, 0);
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < t1.size(); ++j)
          qt1[i + j] = (qt1[i + j] + q[i] * t1[j]) % p;
    }
    Poly t2(std::max(t0.size(), qt1.size()), 0);
    for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (size_t i = 0; i < qt1.size(); ++i) t2[i] = ((t2[i] - qt1[i]) % p + p) % p;
    poly_trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 = gcd (a nonzero constant), inverse = t0 / r0
  long long scale = fp_inv(r0.empty() ? 1 : r0[0], p);
  Poly inv = t0;
  for (auto& x : inv) x = x * scale % p;
  inv = poly_mod(std::move(inv), a.field->modulus, p);
  inv.resize(a.field->m, 0);
  return FFElem{a.field, std::move(inv)};
}

FFElem ff_pow(const FFElem& a, unsigned long long e) {
  FFElem r = ff_one(a.field), base = a;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FFElem ff_frobenius(const FFElem& a) { return ff_pow(a, (unsigned long long)a.field->p); }

FFElem ff_pth_root(const FFElem& a) {
  // Frobenius has order m, so the inverse is x -> x^(p^(m-1)).
  unsigned long long e = 1;
  for (int i = 0; i < a.field->m - 1; ++i) e *= (unsigned long long)a.field->p;
  return ff_pow(a, e);
}

bool ff_lex_less(const FFElem& a, const FFElem& b) { return a.c < b.c; }

std::optional<long long> ff_as_prime(const FFElem& a) {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (a.c[i] != 0) return std::nullopt;
  return a.c[0];
}

namespace {

// All elements of the subfield F_{p^k} inside f (requires k | f->m):
// the kernel of z -> z^(p^k) - z.
std::vector<FFElem> subfield_elements(const FieldPtr& f, int k) {
  long long p = f->p;
  int m = f->m;
  FpMat mat(m, FpVec(m, 0));
  for (int j = 0; j < m; ++j) {
    FFElem basis = ff_zero(f);
    basis.c[j] = 1;
    FFElem img = basis;
    for (int i = 0; i < k; ++i) img = ff_frobenius(img);
    img = img - basis;
    for (int i = 0; i < m; ++i) mat[i][j] = img.c[i];
  }
  auto kernel = fp_kernel(mat, p);
  // enumerate all F_p-combinations of the kernel basis
  std::vector<FFElem> out;
  size_t dim = kernel.size();
  std::vector<long long> digits(dim, 0);
  long long total = 1;
  for (size_t i = 0; i < dim; ++i) total *= p;
  out.reserve(total);
  for (long long idx = 0; idx < total; ++idx) {
    FFElem e = ff_zero(f);
    for (size_t i = 0; i < dim; ++i) {
      if (digits[i] == 0) continue;
      for (int j = 0; j < m; ++j)
        e.c[j] = (e.c[j] + digits[i] * kernel[i][j]) % p;
    }
    out.push_back(std::move(e));
    size_t pos = 0;
    while (pos < dim && ++digits[pos] == p) digits[pos++] = 0;
  }
  return out;
}

FFElem poly_eval(const Poly& f, const FFElem& x) {
  FFElem acc = ff_zero(x.field);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * x;
    acc = acc + ff_int(x.field, f[i]);
  }
  return acc;
}

} // namespace

FFElem ff_embed(const FFElem& x, const FieldPtr& target) {
  if (same_field(x.field, target)) return FFElem{target, x.c};
  long long p = x.field->p;
  if (p != target->p) throw std::logic_error("embedding across characteristics");
  int m = x.field->m, M = target->m;
  if (M % m != 0) throw std::logic_error("embedding into a non-multiple degree");
  if (m == 1) return ff_int(target, x.c[0]);

  FFElem gen_img = ff_zero(target);
  {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto key = std::make_pair(std::make_pair(x.field->modulus, target->modulus), p);
    auto it = reg.embeddings.find(key);
    if (it != reg.embeddings.end()) {
      gen_img = it->second;
    } else {
      // lexicographically smallest root of the source modulus in the target,
      // searched inside the degree-m subfield
      std::optional<FFElem> best;
      for (const FFElem& cand : subfield_elements(target, m)) {
        if (!poly_eval(x.field->modulus, cand).is_zero()) continue;
        if (!best || ff_lex_less(cand, *best)) best = cand;
      }
      if (!best) throw std::logic_error("source modulus has no root in target");
      gen_img = *best;
      reg.embeddings.emplace(key, gen_img);
    }
  }
  // evaluate the coordinate polynomial at the generator image
  FFElem acc = ff_zero(target);
  for (size_t i = x.c.size(); i-- > 0;) {
    acc = acc * gen_img;
    acc = acc + ff_int(target, x.c[i]);
  }
  return acc;
}

FieldPtr join_field(const FieldPtr& a, const FieldPtr& b) {
  if (same_field(a, b)) return a;
  if (a->p != b->p) throw std::logic_error("join across characteristics");
  if (b->m % a->m == 0 && a->m != b->m) return b;
  if (a->m % b->m == 0) return a;
  return canonical_field(a->p, (int)lcmll(a->m, b->m));
}

std::pair<FFElem, FieldPtr> ff_solve_kummer(const FFElem& a) {
  if (a.is_zero()) throw MathError("kummer-zero", "x^(p-1) = 0 has no spanning solution");
  long long p = a.field->p;
  int m = a.field->m;
  // smallest k with a^((p^(mk)-1)/(p-1)) = 1; the root then lives in F_{p^(mk)}
  long long order_mod = 1;
  for (int i = 0; i < m; ++i) order_mod *= p; // p^m
  --order_mod;                                 // group order
  int k = 0;
  for (int kk = 1; kk <= (int)p - 1; ++kk) {
    // N = 1 + p + ... + p^(m*kk-1) mod (p^m - 1)
    unsigned long long N = 0, pw = 1;
    for (int i = 0; i < m * kk; ++i) {
      N = (N + pw) % (unsigned long long)order_mod;
      pw = (pw * (unsigned long long)p) % (unsigned long long)order_mod;
    }
    if (ff_pow(a, N) == ff_one(a.field)) { k = kk; break; }
  }
  if (k == 0) throw std::logic_error("kummer solvability search failed");

  FieldPtr target = (k == 1) ? a.field : canonical_field(p, m * k);
  FFElem at = ff_embed(a, target);
  // kernel of z -> z^p - a*z is {0} union the solution set of z^(p-1) = a
  int M = target->m;
  FpMat mat(M, FpVec(M, 0));
  for (int j = 0; j < M; ++j) {
    FFElem basis = ff_zero(target);
    basis.c[j] = 1;
    FFElem img = ff_frobenius(basis) - at * basis;
    for (int i = 0; i < M; ++i) mat[i][j] = img.c[i];
  }
  auto kernel = fp_kernel(mat, p);
  if (kernel.size() != 1) throw std::logic_error("kummer kernel has wrong dimension");
  // deterministic choice among the p-1 nonzero multiples
  std::optional<FFElem> best;
  for (long long cmul = 1; cmul < p; ++cmul) {
    FFElem cand = ff_zero(target);
    for (int j = 0; j < M; ++j) cand.c[j] = cmul * kernel[0][j] % p;
    if (!best || ff_lex_less(cand, *best)) best = cand;
  }
  return {*best, target};
}

std::pair<FFElem, FieldPtr> ff_solve_artin_schreier(const FFElem& a, const FFElem& b) {
  long long p = a.field->p;
  if (!same_field(a.field, b.field)) throw std::logic_error("artin-schreier field mismatch");
  if (a.is_zero()) return {ff_pth_root(b), b.field};

  auto try_field = [&](const FieldPtr& f) -> std::optional<FFElem> {
    FFElem af = ff_embed(a, f), bf = ff_embed(b, f);
    int M = f->m;
    FpMat mat(M, FpVec(M, 0));
    for (int j = 0; j < M; ++j) {
      FFElem basis = ff_zero(f);
      basis.c[j] = 1;
      FFElem img = ff_frobenius(basis) - af * basis;
      for (int i = 0; i < M; ++i) mat[i][j] = img.c[i];
    }
    FpVec rhs(M);
    for (int i = 0; i < M; ++i) rhs[i] = bf.c[i];
    auto sol = fp_solve(mat, rhs, p);
    if (!sol) return std::nullopt;
    // deterministic: lexicographically smallest within particular + kernel
    auto kernel = fp_kernel(mat, p);
    std::optional<FFElem> best;
    long long total = 1;
    for (size_t i = 0; i < kernel.size(); ++i) total *= p;
    std::vector<long long> digits(kernel.size(), 0);
    for (long long idx = 0; idx < total; ++idx) {
      FFElem cand = ff_zero(f);
      for (int j = 0; j < M; ++j) {
        long long v = (*sol)[j];
        for (size_t i = 0; i < kernel.size(); ++i) v += digits[i] * kernel[i][j];
        cand.c[j] = v % p;
      }
      if (!best || ff_lex_less(cand, *best)) best = cand;
      size_t pos = 0;
      while (pos < kernel.size() && ++digits[pos] == p) digits[pos++] = 0;
    }
    return best;
  };

  if (auto r = try_field(a.field)) return {*r, a.field};
  // a root generates an extension of degree exactly p
  FieldPtr ext = canonical_field(p, a.field->m * (int)p);
  auto r = try_field(ext);
  if (!r) throw std::logic_error("artin-schreier equation unsolvable in degree-p extension");
  return {*r, ext};
}

} // namespace kisinram
