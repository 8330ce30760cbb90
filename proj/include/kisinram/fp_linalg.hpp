#pragma once

#include <optional>
#include <vector>

namespace kisinram {

// Dense linear algebra over the prime field F_p.  Entries are residues
// in {0,...,p-1}.  Sizes here are tiny (at most a few hundred), so plain
// Gaussian elimination is enough.

using FpVec = std::vector<long long>;
using FpMat = std::vector<FpVec>;

inline long long fp_inv(long long a, long long p) {
  // extended Euclid
  long long t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt; t = newt; newt = tmp;
    tmp = r - q * newr; r = newr; newr = tmp;
  }
  return ((t % p) + p) % p;
}

inline FpMat fp_mat_mul(const FpMat& a, const FpMat& b, long long p) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  FpMat c(n, FpVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j)
        c[i][j] = (c[i][j] + a[i][l] * b[l][j]) % p;
    }
  return c;
}

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<size_t> fp_rref(FpMat& a, long long p) {
  std::vector<size_t> pivots;
  size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    long long inv = fp_inv(a[r][c], p);
    for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv % p;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long long f = a[i][c];
      for (size_t j = c; j < cols; ++j)
        a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t fp_rank(FpMat a, long long p) { return fp_rref(a, p).size(); }

// Basis of the right kernel of a (rows = equations).
inline std::vector<FpVec> fp_kernel(FpMat a, long long p) {
  size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = fp_rref(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<FpVec> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    FpVec v(cols, 0);
    v[f] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      // pivot row r has leading 1 at pivots[r]
      v[pivots[r]] = (p - a[r][f] % p) % p;
    }
    basis.push_back(v);
  }
  return basis;
}

// Solve a * x = b; returns one solution if consistent.
inline std::optional<FpVec> fp_solve(FpMat a, FpVec b, long long p) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) a[i].push_back(((b[i] % p) + p) % p);
  auto pivots = fp_rref(a, p);
  // inconsistent iff a pivot sits in the augmented column
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  FpVec x(cols, 0);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

inline std::optional<FpMat> fp_mat_inverse(const FpMat& a, long long p) {
  size_t n = a.size();
  FpMat aug(n, FpVec(2 * n, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = ((a[i][j] % p) + p) % p;
    aug[i][n + i] = 1;
  }
  auto pivots = fp_rref(aug, p);
  if (pivots.size() != n) return std::nullopt;
  for (size_t i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;
  FpMat inv(n, FpVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Extract a reduced basis from a set of vectors spanning a subspace.
inline std::vector<FpVec> fp_span_basis(const std::vector<FpVec>& vecs, long long p) {
  if (vecs.empty()) return {};
  FpMat a = vecs;
  auto pivots = fp_rref(a, p);
  std::vector<FpVec> basis(a.begin(), a.begin() + pivots.size());
  return basis;
}

} // namespace kisinram
