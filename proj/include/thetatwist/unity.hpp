#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "thetatwist/ntheory.hpp"

namespace thetatwist {

using Complex = std::complex<double>;

/// e(x) = exp(2 pi i x)
inline Complex e(double x) {
  const double t = 2.0 * std::numbers::pi * (x - std::floor(x));
  return {std::cos(t), std::sin(t)};
}

/// e(k/m) with the argument reduced exactly before going to floating point.
inline Complex unit_root(std::int64_t k, std::int64_t m) {
  const std::int64_t r = mod(k, m);
  const long double t = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(m);
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

/// Table of e(k/m), k = 0..m-1.
class RootTable {
 public:
  explicit RootTable(std::int64_t m) : m_(m), roots_(static_cast<std::size_t>(m)) {
    for (std::int64_t k = 0; k < m; ++k) roots_[static_cast<std::size_t>(k)] = unit_root(k, m);
  }

  std::int64_t modulus() const { return m_; }
  const Complex& operator()(std::int64_t k) const { return roots_[static_cast<std::size_t>(mod(k, m_))]; }

 private:
  std::int64_t m_;
  std::vector<Complex> roots_;
};

}  // namespace thetatwist
