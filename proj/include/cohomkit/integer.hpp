#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cohomkit {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Representative of a modulo m in [0, m). m must be positive.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

struct ExtendedGcd {
  Integer g;  // nonnegative
  Integer x;
  Integer y;  // x*a + y*b == g
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m, or 0 when a is not a unit.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  auto e = extended_gcd(mod_floor(a, m), m);
  if (e.g != 1) return 0;
  return mod_floor(e.x, m);
}

inline Integer power(Integer base, unsigned exponent) {
  Integer result = 1;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Exponent of p in n (n != 0).
inline unsigned valuation(Integer n, const Integer& p) {
  unsigned v = 0;
  n = abs_value(n);
  if (n == 0) return 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<Integer> prime_divisors(Integer n) {
  std::vector<Integer> out;
  n = abs_value(n);
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace cohomkit
