#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kisinram {

// Exact rational with 64-bit numerator/denominator, always normalized
// (den > 0, gcd = 1).  Exponents and valuations stay tiny, so no bignum.
struct Rat {
  long long n = 0;
  long long d = 1;

  Rat() = default;
  Rat(long long n_) : n(n_), d(1) {}
  Rat(long long n_, long long d_) : n(n_), d(d_) { normalize(); }

  void normalize() {
    if (d == 0) throw std::overflow_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.n * b.d + b.n * a.d, a.d * b.d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.n * b.d - b.n * a.d, a.d * b.d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.n * b.n, a.d * b.d); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.n == 0) throw std::overflow_error("rational division by zero");
    return Rat(a.n * b.d, a.d * b.n);
  }
  Rat operator-() const { Rat r; r.n = -n; r.d = d; return r; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.n * b.d < (__int128)b.n * a.d;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  bool is_integer() const { return d == 1; }

  std::string str() const {
    if (d == 1) return std::to_string(n);
    return std::to_string(n) + "/" + std::to_string(d);
  }
};

inline long long lcmll(long long a, long long b) { return a / std::gcd(a, b) * b; }

// Smallest integer >= a.
inline long long rat_ceil(const Rat& a) {
  long long q = a.n / a.d;
  if (a.n > q * a.d) ++q;
  return q;
}

} // namespace kisinram
