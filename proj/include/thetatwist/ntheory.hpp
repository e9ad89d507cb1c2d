#pragma once

// Elementary arithmetic shared by every module. All routines are 64-bit
// and pure.

#include <cstdint>
#include <numeric>
#include <vector>

#include "thetatwist/errors.hpp"

namespace thetatwist {

/// A residue class value mod modulus, always reduced into [0, modulus).
struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;

  friend bool operator==(const Residue&, const Residue&) = default;
};

inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) { return gcd(gcd(a, b), c); }

/// Least nonnegative residue of a mod m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

inline std::int64_t powmod(std::int64_t base, std::uint64_t e, std::int64_t m) {
  std::int64_t result = 1 % m;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return result;
}

inline Residue mod_inverse(std::int64_t a, std::int64_t m) {
  if (m < 2) throw Error(ErrorCode::OutOfRange, "mod_inverse: modulus must be >= 2");
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw Error(ErrorCode::NotInvertible, "mod_inverse: gcd(a, m) != 1");
  return Residue{mod(old_s, m), m};
}

/// Inverse mod m that also accepts m = 1 (every residue is 0 there).
inline std::int64_t inverse_or_zero(std::int64_t a, std::int64_t m) {
  return m == 1 ? 0 : mod_inverse(a, m).value;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors in increasing order.
inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::int64_t divisor_count(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "divisor_count: n must be >= 1");
  std::int64_t count = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

inline int moebius(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "moebius: n must be >= 1");
  int sign = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  for (std::int64_t p : prime_factors(n)) result -= result / p;
  return result;
}

/// Smallest generator of (Z/pZ)^* for an odd prime p.
inline std::int64_t primitive_root(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "primitive_root: modulus is not an odd prime");
  const auto factors = prime_factors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool generator = true;
    for (std::int64_t f : factors) {
      if (powmod(g, static_cast<std::uint64_t>((p - 1) / f), p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw Error(ErrorCode::NotPrime, "primitive_root: no generator found");
}

/// Sieved divisor counts d(1..n); entry 0 is unused.
inline std::vector<std::int64_t> divisor_count_table(std::int64_t n) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t i = 1; i <= n; ++i)
    for (std::int64_t j = i; j <= n; j += i) ++d[static_cast<std::size_t>(j)];
  return d;
}

}  // namespace thetatwist
