#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace exalg {

/// Arbitrary-precision integer used for all scalar arithmetic.
using Int = boost::multiprecision::cpp_int;

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

/// Remainder in [0, n) for n > 0.
inline Int mod_floor(const Int& a, const Int& n) {
  Int r = a % n;
  if (r < 0) r += n;
  return r;
}

/// Deterministic trial-division primality test; adequate for desk-scale moduli.
inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Largest v with p^v | a (a != 0), plus the cofactor a / p^v.
inline std::pair<int, Int> p_valuation(const Int& p, Int a) {
  int v = 0;
  while (a != 0 && a % p == 0) {
    a /= p;
    ++v;
  }
  return {v, a};
}

inline bool is_perfect_square(const Int& a) {
  if (a < 0) return false;
  Int r = boost::multiprecision::sqrt(a);
  return r * r == a;
}

inline std::string int_str(const Int& a) { return a.str(); }

}  // namespace exalg
