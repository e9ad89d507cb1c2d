#pragma once

// Dirichlet characters to a prime modulus, Gauss and Kloosterman sums, and
// the composite character sum C(n, M, q) that appears after opening the
// character into additive characters and applying Voronoi modulo pq.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "thetatwist/errors.hpp"
#include "thetatwist/ntheory.hpp"
#include "thetatwist/unity.hpp"

namespace thetatwist {

/// One character chi_j mod p, chi_j(g^k) = e(jk/(p-1)) for the smallest primitive root g.
struct CharTable {
  std::int64_t p = 3;
  std::int64_t j = 1;
  std::int64_t g = 2;
  std::vector<Complex> values;     // values[r] = chi(r), r in [0, p)
  std::vector<std::int64_t> dlog;  // dlog[r] = k with g^k = r (r != 0)
  Complex gauss{0.0, 0.0};         // tau(chi); zero for the trivial character

  bool trivial() const { return j == 0; }
  Complex operator()(std::int64_t n) const { return values[static_cast<std::size_t>(mod(n, p))]; }
  Complex conj(std::int64_t n) const { return std::conj((*this)(n)); }
};

inline void require_primitive(const CharTable& chi, const char* who) {
  if (chi.trivial()) throw Error(ErrorCode::TrivialCharacter, std::string(who) + " requires a nontrivial character");
}

/// tau(chi) = sum_{b mod p} chi(b) e(b/p)
inline Complex gauss_sum(const CharTable& chi) {
  require_primitive(chi, "gauss_sum");
  Complex s{0.0, 0.0};
  for (std::int64_t b = 1; b < chi.p; ++b) s += chi(b) * unit_root(b, chi.p);
  return s;
}

inline CharTable build_char(std::int64_t p, std::int64_t j) {
  if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, "build_char: modulus must be an odd prime");
  if (j < 0 || j >= p - 1) throw Error(ErrorCode::OutOfRange, "build_char: index must lie in [0, p-1)");
  CharTable chi;
  chi.p = p;
  chi.j = j;
  chi.g = primitive_root(p);
  chi.values.assign(static_cast<std::size_t>(p), Complex{0.0, 0.0});
  chi.dlog.assign(static_cast<std::size_t>(p), -1);
  std::int64_t r = 1;
  for (std::int64_t k = 0; k < p - 1; ++k) {
    chi.dlog[static_cast<std::size_t>(r)] = k;
    chi.values[static_cast<std::size_t>(r)] = unit_root(mulmod(j, k, p - 1), p - 1);
    r = mulmod(r, chi.g, p);
  }
  if (!chi.trivial()) chi.gauss = gauss_sum(chi);
  return chi;
}

/// |chi(n) - tau(conj chi)^{-1} sum_b conj chi(b) e(bn/p)|
inline double char_fourier_check(const CharTable& chi, std::int64_t n) {
  require_primitive(chi, "char_fourier_check");
  Complex s{0.0, 0.0}, tau_bar{0.0, 0.0};
  for (std::int64_t b = 1; b < chi.p; ++b) {
    s += chi.conj(b) * unit_root(mulmod(b, n, chi.p), chi.p);
    tau_bar += chi.conj(b) * unit_root(b, chi.p);
  }
  return std::abs(chi(n) - s / tau_bar);
}

/// S(a, b; q) = sum over x mod q with (x, q) = 1 of e((a x + b xbar) / q).
/// S(a, b; 1) = 1 (the single class x = 0).
inline double kloosterman(std::int64_t a, std::int64_t b, std::int64_t q) {
  if (q < 1) throw Error(ErrorCode::OutOfRange, "kloosterman: modulus must be >= 1");
  if (q == 1) return 1.0;
  Complex s{0.0, 0.0};
  for (std::int64_t x = 1; x < q; ++x) {
    if (gcd(x, q) != 1) continue;
    const std::int64_t xbar = mod_inverse(x, q).value;
    s += unit_root(mulmod(a, x, q) + mulmod(b, xbar, q), q);
  }
  if (std::abs(s.imag()) > 1e-10 * std::max<double>(1.0, static_cast<double>(q)))
    throw Error(ErrorCode::QuadratureFailure, "kloosterman: imaginary part not negligible");
  return s.real();
}

/// |S(a,b;q)| / (d(q) sqrt(q) sqrt(gcd(a,b,q))); Weil's bound keeps this <= 1.
inline double weil_ratio(std::int64_t a, std::int64_t b, std::int64_t q) {
  const double bound = static_cast<double>(divisor_count(q)) * std::sqrt(static_cast<double>(q)) *
                       std::sqrt(static_cast<double>(gcd3(a, b, q)));
  return std::abs(kloosterman(a, b, q)) / bound;
}

namespace detail {
inline void require_coprime(std::int64_t q, std::int64_t p, const char* who) {
  if (q < 1) throw Error(ErrorCode::OutOfRange, std::string(who) + ": q must be >= 1");
  if (gcd(q, p) != 1) throw Error(ErrorCode::ModuliNotCoprime, std::string(who) + ": gcd(q, p) != 1");
}
}  // namespace detail

/// C(n, M, q) by the defining double sum
///   sum*_{a mod q} e(Ma/q) sum_{b mod p} conj chi(b) e(-cbar n / (pq)),  c = bq - ap.
inline Complex charsum_brute(std::int64_t n, std::int64_t M, std::int64_t q, const CharTable& chi) {
  require_primitive(chi, "charsum_brute");
  detail::require_coprime(q, chi.p, "charsum_brute");
  const std::int64_t p = chi.p, pq = p * q;
  const RootTable roots(pq);
  Complex total{0.0, 0.0};
  for (std::int64_t a = 0; a < q; ++a) {
    if (gcd(a, q) != 1) continue;
    Complex inner{0.0, 0.0};
    for (std::int64_t b = 1; b < p; ++b) {
      const std::int64_t c = b * q - a * p;
      const std::int64_t cbar = mod_inverse(c, pq).value;
      inner += chi.conj(b) * roots(-mulmod(cbar, n, pq));
    }
    total += roots(mulmod(M, a * p, pq)) * inner;
  }
  return total;
}

/// Closed form S(M, n pbar^2; q) * conj chi(-n qbar^2) * tau(chi), with
/// pbar = p^{-1} mod q and qbar = q^{-1} mod p.
inline Complex charsum_closed(std::int64_t n, std::int64_t M, std::int64_t q, const CharTable& chi) {
  require_primitive(chi, "charsum_closed");
  detail::require_coprime(q, chi.p, "charsum_closed");
  const std::int64_t p = chi.p;
  const std::int64_t pbar = inverse_or_zero(p, q);
  const std::int64_t qbar = mod_inverse(q, p).value;
  const double kl = kloosterman(mod(M, q), mulmod(n, mulmod(pbar, pbar, q), q), q);
  return kl * chi.conj(-mulmod(n, mulmod(qbar, qbar, p), p)) * chi.gauss;
}

/// |C| / (sqrt(p) d(q) sqrt(q) sqrt(gcd(n, q)))
inline double charsum_bound_ratio(std::int64_t n, std::int64_t M, std::int64_t q, const CharTable& chi) {
  const Complex c = charsum_closed(n, M, q, chi);
  const double bound = std::sqrt(static_cast<double>(chi.p)) * static_cast<double>(divisor_count(q)) *
                       std::sqrt(static_cast<double>(q)) * std::sqrt(static_cast<double>(gcd(n, q)));
  return std::abs(c) / bound;
}

}  // namespace thetatwist
