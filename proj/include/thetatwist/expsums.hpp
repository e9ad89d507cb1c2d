#pragma once

// The circle-method generating sums
//   F(alpha) = sum_{|m| <= sqrt X} e(alpha m^2),
//   G(alpha) = sum_n lambda(n) chi(n) e(-alpha n) w(n/X),
// the plateau weight w, and moment diagnostics for F.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "thetatwist/characters.hpp"
#include "thetatwist/errors.hpp"
#include "thetatwist/forms.hpp"
#include "thetatwist/theta.hpp"
#include "thetatwist/trigpoly.hpp"
#include "thetatwist/unity.hpp"

namespace thetatwist {

/// Smooth transition 0 -> 1 on [0, 1]: f(t) / (f(t) + f(1-t)), f(t) = exp(-1/t).
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

/// Plateau bump on [1/2, 1]: equal to 1 on [1/2 + 1/(8 delta), 1 - 1/(8 delta)],
/// with smooth ramps of width 1/(8 delta) at both ends.
class SmoothWeight {
 public:
  explicit SmoothWeight(double delta) : delta_(delta) {
    if (!(delta >= 1.0)) throw Error(ErrorCode::BadDelta, "smooth weight needs delta >= 1");
  }

  double delta() const { return delta_; }
  double ramp_width() const { return 1.0 / (8.0 * delta_); }

  double operator()(double t) const {
    if (t <= 0.5 || t >= 1.0) return 0.0;
    const double h = ramp_width();
    if (t < 0.5 + h) return smooth_step((t - 0.5) / h);
    if (t > 1.0 - h) return smooth_step((1.0 - t) / h);
    return 1.0;
  }

 private:
  double delta_;
};

inline SmoothWeight make_weight(double delta) { return SmoothWeight(delta); }

/// Finite-difference estimates of C_j = sup |w^(j)| / delta^j for j = 1..3.
inline std::array<double, 3> weight_derivative_constants(const SmoothWeight& w) {
  const double h = w.ramp_width();
  const double step = h / 4000.0;
  std::array<double, 3> sup{0.0, 0.0, 0.0};
  // The ramps are mirror images, so the left ramp suffices.
  for (double t = 0.5 + 2 * step; t < 0.5 + h - 2 * step; t += step) {
    const double fm2 = w(t - 2 * step), fm1 = w(t - step), f0 = w(t), fp1 = w(t + step), fp2 = w(t + 2 * step);
    const double d1 = (fp1 - fm1) / (2 * step);
    const double d2 = (fp1 - 2 * f0 + fm1) / (step * step);
    const double d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * step * step * step);
    sup[0] = std::max(sup[0], std::abs(d1));
    sup[1] = std::max(sup[1], std::abs(d2));
    sup[2] = std::max(sup[2], std::abs(d3));
  }
  const double d = w.delta();
  return {sup[0] / d, sup[1] / (d * d), sup[2] / (d * d * d)};
}

inline Complex F_eval(double alpha, double X) {
  if (X < 1.0) throw Error(ErrorCode::OutOfRange, "F_eval: X must be >= 1");
  const std::int64_t M = isqrt_floor(X);
  Complex s{0.0, 0.0};
  for (std::int64_t m = -M; m <= M; ++m) s += e(alpha * static_cast<double>(m * m));
  return s;
}

/// F as a trig polynomial: coefficient of e(k alpha) is #{ |m| <= sqrt X : m^2 = k }.
inline TrigPoly F_coeffs(double X) {
  const std::int64_t M = isqrt_floor(X);
  TrigPoly f;
  f.lo = 0;
  f.coeffs.assign(static_cast<std::size_t>(M * M + 1), Complex{0.0, 0.0});
  for (std::int64_t m = -M; m <= M; ++m) f.coeffs[static_cast<std::size_t>(m * m)] += 1.0;
  return f;
}

namespace detail {
/// Integers n with w(n/X) possibly nonzero: floor(X/2) < n <= floor(X).
inline std::pair<std::size_t, std::size_t> g_support(double X) {
  const auto lo = static_cast<std::size_t>(std::floor(X / 2.0)) + 1;
  const auto hi = static_cast<std::size_t>(std::floor(X));
  return {lo, hi};
}

inline void require_table(const FormTable& t, double X) {
  if (static_cast<double>(t.N) < std::floor(X))
    throw Error(ErrorCode::TableTooShort, "coefficient table shorter than X");
}
}  // namespace detail

inline Complex G_eval(double alpha, double X, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  detail::require_table(t, X);
  const auto [lo, hi] = detail::g_support(X);
  Complex s{0.0, 0.0};
  for (std::size_t n = lo; n <= hi; ++n) {
    const double wn = w(static_cast<double>(n) / X);
    if (wn == 0.0) continue;
    s += t[n] * chi(static_cast<std::int64_t>(n)) * e(-alpha * static_cast<double>(n)) * wn;
  }
  return s;
}

/// G as a trig polynomial over frequencies -floor(X) .. -floor(X/2)-1.
inline TrigPoly G_coeffs(double X, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  detail::require_table(t, X);
  const auto [lo, hi] = detail::g_support(X);
  TrigPoly g;
  if (hi < lo) return g;
  g.lo = -static_cast<std::int64_t>(hi);
  g.coeffs.assign(hi - lo + 1, Complex{0.0, 0.0});
  for (std::size_t n = lo; n <= hi; ++n) {
    g.coeffs[hi - n] = t[n] * chi(static_cast<std::int64_t>(n)) * w(static_cast<double>(n) / X);
  }
  return g;
}

/// |F(alpha)| / (X^{1/2} (1/q + X^{-1/2} + q/X)^{1/2}), the Weyl-inequality shape.
inline double weyl_ratio(double alpha, std::int64_t q, double X) {
  const double shape = std::sqrt(X) * std::sqrt(1.0 / static_cast<double>(q) + 1.0 / std::sqrt(X) +
                                                static_cast<double>(q) / X);
  return std::abs(F_eval(alpha, X)) / shape;
}

/// #{ m1^2 + m2^2 = m3^2 + m4^2, |m_i| <= floor(sqrt X) } = integral of |F|^4 over [0, 1].
inline std::int64_t hua_count(double X) {
  const auto box = r_ell_box(2, X);
  std::int64_t total = 0;
  for (std::int64_t c : box.counts) {
    std::int64_t sq, sum;
    if (__builtin_mul_overflow(c, c, &sq) || __builtin_add_overflow(total, sq, &sum))
      throw Error(ErrorCode::ResourceLimit, "hua_count overflow");
    total = sum;
  }
  return total;
}

/// Riemann sum of |F|^4 on 8 M^2 + 1 equispaced points; exact for a trig
/// polynomial of bandwidth 4 M^2, rounded to the nearest integer.
inline std::int64_t hua_quadrature(double X) {
  const std::int64_t M = isqrt_floor(X);
  const std::int64_t K = 8 * M * M + 1;
  const RootTable roots(K);
  long double acc = 0.0L;
  for (std::int64_t k = 0; k < K; ++k) {
    Complex f{0.0, 0.0};
    for (std::int64_t m = -M; m <= M; ++m) f += roots(mulmod(m * m, k, K));
    const double a2 = std::norm(f);
    acc += static_cast<long double>(a2) * a2;
  }
  return static_cast<std::int64_t>(std::llround(static_cast<double>(acc / K)));
}

/// Parseval for G: integral of |G|^2 = sum |lambda(n) chi(n) w(n/X)|^2.
inline double g_mean_square(double X, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  const auto g = G_coeffs(X, t, chi, w);
  double s = 0.0;
  for (const auto& c : g.coeffs) s += std::norm(c);
  return s;
}

}  // namespace thetatwist
