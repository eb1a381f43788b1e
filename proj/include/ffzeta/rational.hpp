#pragma once

#include <string>

#include "ffzeta/errors.hpp"
#include "ffzeta/numutil.hpp"

namespace ffzeta {

// Exact rational on 64-bit numerator/denominator, 128-bit intermediates.
// Always normalized: den > 0, gcd(num, den) = 1. Throws Overflow when a
// reduced result leaves the 64-bit range; at the budget-guarded scales this
// does not happen.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rat(long long n, long long d) { *this = make(n, d); }

  static Rat make(int128 n, int128 d) {
    if (d == 0) fail("DivisionByZero", "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rat r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
  }

  Rat operator+(const Rat& o) const {
    return make(int128(num) * o.den + int128(o.num) * den, int128(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(int128(num) * o.den - int128(o.num) * den, int128(den) * o.den);
  }
  Rat operator*(const Rat& o) const { return make(int128(num) * o.num, int128(den) * o.den); }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) fail("DivisionByZero", "rational division by zero");
    return make(int128(num) * o.den, int128(den) * o.num);
  }
  Rat operator-() const { return make(-int128(num), den); }

  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return int128(num) * o.den < int128(o.num) * den; }
  bool operator<=(const Rat& o) const { return int128(num) * o.den <= int128(o.num) * den; }

  // q^k for integer k (negative allowed), exact.
  static Rat pow_int(long long q, long long k) {
    Rat r(1);
    Rat b = k >= 0 ? Rat(q) : Rat(1, q);
    long long n = k >= 0 ? k : -k;
    for (long long i = 0; i < n; ++i) r = r * b;
    return r;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static int128 gcd128(int128 a, int128 b) {
    while (b) {
      int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static long long narrow(int128 v) {
    if (v > int128(INT64_MAX) || v < int128(INT64_MIN)) {
      fail("Overflow", "rational out of 64-bit range");
    }
    return static_cast<long long>(v);
  }
};

}  // namespace ffzeta
