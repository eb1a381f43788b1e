#pragma once

#include <cstdint>
#include <string>

#include "ffzeta/errors.hpp"

namespace ffzeta {

using int128 = __int128;
using uint128 = unsigned __int128;

// p^k with overflow check against 2^63.
inline long long ipow_checked(long long base, int exp, const char* what = "ipow") {
  uint128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= static_cast<uint128>(base);
    if (r > (uint128(1) << 62)) fail("Overflow", std::string(what) + ": power exceeds 2^62");
  }
  return static_cast<long long>(r);
}

// Unchecked small power, caller guarantees the range.
inline long long ipow(long long base, int exp) {
  long long r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline long long igcd(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Deterministic trial-division primality, good for p < 2^31.
inline bool is_prime_i64(long long n) {
  if (n < 2) return false;
  for (long long d : {2LL, 3LL, 5LL, 7LL}) {
    if (n == d) return true;
    if (n % d == 0) return false;
  }
  for (long long d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Writes q = p^e with p prime; throws InvalidPrimePower otherwise.
inline void factor_prime_power(long long q, long long& p, int& e) {
  if (q < 2) fail("InvalidPrimePower", "q must be at least 2");
  long long base = q;
  for (long long d = 2; d * d <= base; ++d) {
    if (base % d == 0) {
      base = d;
      break;
    }
  }
  // base is now the smallest prime factor of q
  p = base;
  e = 0;
  long long m = q;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) fail("InvalidPrimePower", std::to_string(q) + " is not a prime power");
}

inline std::string int128_to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  uint128 u = neg ? static_cast<uint128>(-v) : static_cast<uint128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

}  // namespace ffzeta
