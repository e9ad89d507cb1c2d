#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace thetatwist {

/// log Gamma(z) for complex z away from the poles. The imaginary part is a
/// branch of arg Gamma, so only exp() of the result (or of differences of
/// results) is meaningful.
inline std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  constexpr double pi = std::numbers::pi;
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
  if (z.real() < 0.5) {
    // Reflection; log sin(pi z) written so that it stays finite for large Im z.
    const C eiz = std::exp(C{0.0, 2.0 * pi} * z);
    const C log_sin = C{0.0, -pi} * z + std::log(C{0.0, 0.5}) + std::log(C{1.0, 0.0} - eiz);
    return std::log(pi) - log_sin - log_gamma(C{1.0, 0.0} - z);
  }
  C shift{0.0, 0.0};
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // Stirling series with Bernoulli coefficients B_2k / (2k (2k-1)).
  static constexpr double kCoeff[] = {1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,
                                      -1.0 / 1680.0,       1.0 / 1188.0,        -691.0 / 360360.0,
                                      1.0 / 156.0,         -3617.0 / 122400.0};
  const C inv = 1.0 / z;
  const C inv2 = inv * inv;
  C series{0.0, 0.0};
  C power = inv;
  for (double c : kCoeff) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series - shift;
}

}  // namespace thetatwist
