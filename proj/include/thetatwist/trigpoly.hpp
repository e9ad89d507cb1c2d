#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "thetatwist/unity.hpp"

namespace thetatwist {

/// sum_k coeffs[k] e((lo + k) alpha), a finite exponential sum over the
/// frequency window [lo, lo + coeffs.size()).
struct TrigPoly {
  std::int64_t lo = 0;
  std::vector<Complex> coeffs;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(coeffs.size()) - 1; }

  Complex coefficient(std::int64_t freq) const {
    if (freq < lo || freq > hi()) return {0.0, 0.0};
    return coeffs[static_cast<std::size_t>(freq - lo)];
  }

  Complex operator()(double alpha) const {
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == Complex{0.0, 0.0}) continue;
      s += coeffs[k] * e(static_cast<double>(lo + static_cast<std::int64_t>(k)) * alpha);
    }
    return s;
  }

  /// Value at alpha = num/den with exact phase reduction.
  Complex at_fraction(std::int64_t num, const RootTable& roots) const {
    const std::int64_t den = roots.modulus();
    Complex s{0.0, 0.0};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == Complex{0.0, 0.0}) continue;
      s += coeffs[k] * roots(mulmod(lo + static_cast<std::int64_t>(k), num, den));
    }
    return s;
  }

  /// Exact integral over [u, v]: (e(kv) - e(ku)) / (2 pi i k) per frequency, v - u at k = 0.
  Complex integrate(double u, double v) const {
    Complex s{0.0, 0.0};
    const Complex two_pi_i{0.0, 2.0 * std::numbers::pi};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == Complex{0.0, 0.0}) continue;
      const std::int64_t f = lo + static_cast<std::int64_t>(k);
      if (f == 0) {
        s += coeffs[k] * (v - u);
      } else {
        const double fd = static_cast<double>(f);
        s += coeffs[k] * (e(fd * v) - e(fd * u)) / (two_pi_i * fd);
      }
    }
    return s;
  }
};

inline TrigPoly multiply(const TrigPoly& x, const TrigPoly& y) {
  TrigPoly z;
  if (x.coeffs.empty() || y.coeffs.empty()) return z;
  z.lo = x.lo + y.lo;
  z.coeffs.assign(x.coeffs.size() + y.coeffs.size() - 1, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == Complex{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < y.coeffs.size(); ++j) z.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
  }
  return z;
}

}  // namespace thetatwist
