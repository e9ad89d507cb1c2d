#pragma once

// GL(2) Voronoi summation for the level-1 weight-k form:
//
//   sum_n lambda(n) e(an/q) phi(n) = q sum_n lambda(n)/n e(-abar n/q) Phi(n/q^2),
//
//   Phi(x) = i^(k-1) / (2 pi^2) * integral over Re s = sigma of
//            (pi^2 x)^(-s) rho(s) phitilde(-s) ds,
//
// evaluated by a trapezoid rule on the vertical line (phitilde sampled with an
// FFT), together with the Bessel-kernel form used as an independent oracle.

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <vector>

#include "thetatwist/errors.hpp"
#include "thetatwist/expsums.hpp"
#include "thetatwist/fit.hpp"
#include "thetatwist/forms.hpp"
#include "thetatwist/ntheory.hpp"
#include "thetatwist/special.hpp"
#include "thetatwist/unity.hpp"

namespace thetatwist {

enum class TestKind { Plateau, GaussianBump };

/// phi(y) = e(-beta y) * b(y / X) with b either the plateau weight or a
/// narrow Gaussian multiplied by the delta = 1 plateau as a window.
/// Support is [X/2, X] in both cases.
struct TestFunction {
  TestKind kind = TestKind::Plateau;
  double X = 1.0;
  double delta = 1.0;         // plateau sharpness
  double width = 1.0 / 80.0;  // Gaussian standard deviation, in units of X
  double center = 0.75;       // Gaussian center, in units of X
  double beta = 0.0;

  double support_lo() const { return 0.5 * X; }
  double support_hi() const { return X; }

  /// Derivative scale: phi^(j) is of size (R / X)^j.
  double R() const {
    const double base = kind == TestKind::Plateau ? 8.0 * delta : 1.0 / width;
    return base + 2.0 * std::numbers::pi * std::abs(beta) * X;
  }

  double envelope(double y) const {
    const double t = y / X;
    if (kind == TestKind::Plateau) return SmoothWeight(delta)(t);
    const double z = (t - center) / width;
    return std::exp(-0.5 * z * z) * SmoothWeight(1.0)(t);
  }

  Complex operator()(double y) const {
    const double env = envelope(y);
    if (env == 0.0) return {0.0, 0.0};
    return beta == 0.0 ? Complex{env, 0.0} : env * e(-beta * y);
  }

  /// Closed-form integral of a Gaussian bump (the window is 1 wherever the
  /// Gaussian is above 1e-20 for the default width and center).
  double gaussian_mass() const { return X * width * std::sqrt(2.0 * std::numbers::pi); }
};

inline TestFunction plateau_test_function(double X, double delta, double beta = 0.0) {
  if (!(delta >= 1.0)) throw Error(ErrorCode::BadDelta, "plateau test function needs delta >= 1");
  TestFunction f;
  f.kind = TestKind::Plateau;
  f.X = X;
  f.delta = delta;
  f.beta = beta;
  return f;
}

inline TestFunction gaussian_test_function(double X, double width = 1.0 / 80.0, double center = 0.75) {
  TestFunction f;
  f.kind = TestKind::GaussianBump;
  f.X = X;
  f.width = width;
  f.center = center;
  return f;
}

/// sup |phi^(j)| (X/R)^j for j = 1..3 by central differences.
inline std::array<double, 3> test_function_derivative_constants(const TestFunction& phi) {
  const double scale = phi.X / phi.R();
  const double step = scale / 400.0;
  std::array<double, 3> sup{0.0, 0.0, 0.0};
  for (double y = phi.support_lo(); y <= phi.support_hi(); y += step) {
    const Complex fm2 = phi(y - 2 * step), fm1 = phi(y - step), f0 = phi(y), fp1 = phi(y + step),
                  fp2 = phi(y + 2 * step);
    sup[0] = std::max(sup[0], std::abs((fp1 - fm1) / (2 * step)));
    sup[1] = std::max(sup[1], std::abs((fp1 - 2.0 * f0 + fm1) / (step * step)));
    sup[2] = std::max(sup[2], std::abs((fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2 * step * step * step)));
  }
  return {sup[0] * scale, sup[1] * scale * scale, sup[2] * scale * scale * scale};
}

/// rho(s) = Gamma((1+s+(k+1)/2)/2) Gamma((1+s+(k-1)/2)/2)
///        / (Gamma((-s+(k+1)/2)/2) Gamma((-s+(k-1)/2)/2))
struct GammaRatio {
  int kappa = 12;

  /// Rightmost pole of rho; contours must stay strictly to its right.
  double pole_abscissa() const { return -(kappa + 1) / 2.0; }

  Complex log(Complex s) const {
    const double kp = (kappa + 1) / 2.0, km = (kappa - 1) / 2.0;
    return log_gamma((1.0 + s + kp) / 2.0) + log_gamma((1.0 + s + km) / 2.0) - log_gamma((-s + kp) / 2.0) -
           log_gamma((-s + km) / 2.0);
  }

  Complex operator()(Complex s) const { return std::exp(log(s)); }
};

inline Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

namespace detail {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

/// Forward DFT out[m] = sum_k in[k] e^{-2 pi i k m / N}.
inline std::vector<Complex> forward_dft(const std::vector<Complex>& in) {
  const int n = static_cast<int>(in.size());
  std::unique_ptr<fftw_complex, FftwFree> buf(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * in.size())));
  fftw_plan plan = fftw_plan_dft_1d(n, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  for (std::size_t k = 0; k < in.size(); ++k) {
    buf.get()[k][0] = in[k].real();
    buf.get()[k][1] = in[k].imag();
  }
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<Complex> out(in.size());
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = {buf.get()[k][0], buf.get()[k][1]};
  return out;
}

inline std::size_t next_pow2(double v) {
  std::size_t n = 1;
  while (static_cast<double>(n) < v) n <<= 1U;
  return n;
}

}  // namespace detail

/// Mellin transform int phi(u) u^(s-1) du over the support, by the trapezoid
/// rule in log u with doubling until the last two levels agree to `tol`
/// relative to the absolute integral.
inline Complex mellin_transform(const TestFunction& phi, Complex s, double tol = 1e-10) {
  const double v0 = std::log(phi.support_lo()), v1 = std::log(phi.support_hi());
  const double W = v1 - v0;
  auto integrand = [&](double v) { return phi(std::exp(v)) * std::exp(s * v); };
  // Start fine enough to resolve the oscillation u^(i Im s) and the derivative scale.
  std::size_t n = std::max<std::size_t>(
      256, detail::next_pow2(8.0 * (std::abs(s.imag()) * W / std::numbers::pi + phi.R() * W)));
  double h = W / static_cast<double>(n);
  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const Complex f = integrand(v0 + static_cast<double>(k) * h);
    sum += f;
    abs_sum += std::abs(f);
  }
  Complex prev = sum * h;
  for (int level = 0; level < 16; ++level) {
    Complex add{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const Complex f = integrand(v0 + (static_cast<double>(k) + 0.5) * h);
      add += f;
      abs_sum += std::abs(f);
    }
    sum += add;
    n *= 2;
    h *= 0.5;
    const Complex cur = sum * h;
    if (std::abs(cur - prev) <= tol * abs_sum * h) return cur;
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureFailure, "mellin_transform did not converge");
}

inline constexpr std::size_t kMaxContourPoints = std::size_t{1} << 23;

/// Phi(x) for one test function, precomputed along the contour so that many
/// x in [x_min, x_max] can be evaluated cheaply.
class MellinPhi {
 public:
  MellinPhi(const TestFunction& phi, int kappa, double sigma, double x_min, double x_max, double tol = 1e-10)
      : kappa_(kappa), sigma_(sigma) {
    const GammaRatio rho{kappa};
    if (!(sigma > rho.pole_abscissa()))
      throw Error(ErrorCode::ContourOutOfRange, "contour must lie right of the first pole of rho");
    if (!(x_min > 0.0) || x_max < x_min) throw Error(ErrorCode::OutOfRange, "MellinPhi needs 0 < x_min <= x_max");

    const double v0 = std::log(phi.support_lo());
    const double W = std::log(phi.support_hi()) - v0;
    auto sample_g = [&](std::size_t n_v, std::size_t N) {
      std::vector<Complex> g(N, Complex{0.0, 0.0});
      const double h_v = W / static_cast<double>(n_v);
      for (std::size_t k = 0; k <= n_v; ++k) {
        const double v = v0 + static_cast<double>(k) * h_v;
        g[k] = phi(std::exp(v)) * std::exp(-sigma * v);
      }
      return g;
    };

    // 1. v-resolution: the significant band of phitilde must sit well inside Nyquist.
    std::size_t n_v = std::max<std::size_t>(1024, detail::next_pow2(16.0 * phi.R() * W));
    double T = 0.0;
    std::vector<Complex> spectrum;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 8) throw Error(ErrorCode::QuadratureFailure, "Mellin contour: phitilde does not decay");
      const std::size_t N = 2 * (n_v + 1) > 4096 ? detail::next_pow2(2.0 * (n_v + 1)) : 4096;
      if (N > kMaxContourPoints) throw Error(ErrorCode::ResourceLimit, "Mellin contour grid too large");
      spectrum = detail::forward_dft(sample_g(n_v, N));
      const double h_v = W / static_cast<double>(n_v);
      const double h_tau = 2.0 * std::numbers::pi / (static_cast<double>(N) * h_v);
      double peak = 0.0;
      std::vector<double> mag(N / 2);
      for (std::size_t j = 0; j < N / 2; ++j) {
        const double tau = static_cast<double>(j) * h_tau;
        const double growth = std::max(std::abs(rho(Complex{sigma, tau})), std::abs(rho(Complex{sigma, -tau})));
        mag[j] = growth * std::max(std::abs(spectrum[j]), std::abs(spectrum[(N - j) % N]));
        peak = std::max(peak, mag[j]);
      }
      std::size_t last = 0;
      for (std::size_t j = 0; j < N / 2; ++j)
        if (mag[j] > tol * 1e-2 * peak) last = j;
      T = static_cast<double>(last + 1) * h_tau;
      const double nyquist = std::numbers::pi / h_v;
      if (T <= 0.5 * nyquist) break;
      n_v *= 2;
    }
    const double h_v = W / static_cast<double>(n_v);

    // 2. tau-step: halve until the step-h and step-2h rules agree at probe points.
    const double probes[] = {x_min, std::sqrt(x_min * x_max), x_max};
    double h_target = 0.5;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 12) throw Error(ErrorCode::QuadratureFailure, "Mellin contour: tau step did not converge");
      const std::size_t N = detail::next_pow2(std::max(2.0 * (n_v + 1), 2.0 * std::numbers::pi / (h_target * h_v)));
      if (N > kMaxContourPoints) throw Error(ErrorCode::ResourceLimit, "Mellin contour grid too large");
      h_ = 2.0 * std::numbers::pi / (static_cast<double>(N) * h_v);
      J_ = static_cast<std::size_t>(std::ceil(T / h_));
      J_ += J_ % 2;  // even so the coarse subgrid is symmetric
      const auto fine_spectrum = detail::forward_dft(sample_g(n_v, N));
      amp_.assign(2 * J_ + 1, Complex{0.0, 0.0});
      for (std::size_t idx = 0; idx <= 2 * J_; ++idx) {
        const auto j = static_cast<std::int64_t>(idx) - static_cast<std::int64_t>(J_);
        const double tau = static_cast<double>(j) * h_;
        const Complex ft = h_v * std::exp(Complex{0.0, -tau * v0}) *
                           fine_spectrum[static_cast<std::size_t>(mod(j, static_cast<std::int64_t>(N)))];
        amp_[idx] = rho(Complex{sigma, tau}) * ft;
      }
      double worst = 0.0;
      for (double x : probes) {
        const auto [fine, fine_abs] = evaluate(x, 1);
        const auto [coarse, coarse_abs] = evaluate(x, 2);
        worst = std::max(worst, std::abs(fine - coarse) / std::max(fine_abs, 1e-300));
      }
      if (worst <= tol) break;
      h_target *= 0.5;
    }
  }

  Complex operator()(double x) const { return evaluate(x, 1).first; }

  /// Sum of |terms| at x, the scale against which roundoff is measured.
  double magnitude_scale(double x) const { return evaluate(x, 1).second; }

  double height() const { return static_cast<double>(J_) * h_; }
  double step() const { return h_; }
  double sigma() const { return sigma_; }

 private:
  std::pair<Complex, double> evaluate(double x, std::size_t stride) const {
    const double L = std::log(std::numbers::pi * std::numbers::pi * x);
    const double h = h_ * static_cast<double>(stride);
    const Complex rot = std::exp(Complex{0.0, -h * L});
    Complex sum{0.0, 0.0};
    double abs_sum = 0.0;
    Complex z{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t idx = 0; idx <= 2 * J_; idx += stride, ++count) {
      if (count % 256 == 0) {
        const double tau = (static_cast<double>(idx) - static_cast<double>(J_)) * h_;
        z = std::exp(Complex{0.0, -tau * L});
      }
      sum += amp_[idx] * z;
      abs_sum += std::abs(amp_[idx]);
      z *= rot;
    }
    const Complex pref = i_power(kappa_) / (2.0 * std::numbers::pi * std::numbers::pi) * h *
                         std::pow(std::numbers::pi * std::numbers::pi * x, -sigma_);
    return {pref * sum, std::abs(pref) * abs_sum};
  }

  int kappa_;
  double sigma_;
  double h_ = 0.0;
  std::size_t J_ = 0;
  std::vector<Complex> amp_;
};

/// Single-point convenience wrapper around MellinPhi.
inline Complex phi_mellin(double x, const TestFunction& phi, int kappa, double sigma = -0.5) {
  return MellinPhi(phi, kappa, sigma, x, x)(x);
}

/// Phi(x) = 2 pi i^k x int phi(y) J_{k-1}(4 pi sqrt(xy)) dy, trapezoid with
/// doubling. The integrand vanishes to all orders at both ends of the support.
inline Complex phi_bessel_oracle(double x, const TestFunction& phi, int kappa, double tol = 1e-11) {
  if (kappa < 2 || kappa % 2 != 0) throw Error(ErrorCode::OutOfRange, "Bessel oracle needs even weight >= 2");
  const double lo = phi.support_lo(), hi = phi.support_hi();
  const double nu = kappa - 1;
  auto integrand = [&](double y) {
    const Complex f = phi(y);
    if (f == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
    return f * std::cyl_bessel_j(nu, 4.0 * std::numbers::pi * std::sqrt(x * y));
  };
  const double oscillations = 2.0 * std::sqrt(x) * (std::sqrt(hi) - std::sqrt(lo));
  std::size_t n = std::max<std::size_t>(512, detail::next_pow2(16.0 * (oscillations + phi.R() * (hi - lo) / phi.X)));
  double h = (hi - lo) / static_cast<double>(n);
  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const Complex f = integrand(lo + static_cast<double>(k) * h);
    sum += f;
    abs_sum += std::abs(f);
  }
  Complex prev = sum * h;
  for (int level = 0; level < 12; ++level) {
    Complex add{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const Complex f = integrand(lo + (static_cast<double>(k) + 0.5) * h);
      add += f;
      abs_sum += std::abs(f);
    }
    sum += add;
    n *= 2;
    h *= 0.5;
    const Complex cur = sum * h;
    if (std::abs(cur - prev) <= tol * abs_sum * h) {
      return 2.0 * std::numbers::pi * i_power(kappa) * x * cur;
    }
    prev = cur;
  }
  throw Error(ErrorCode::QuadratureFailure, "Bessel oracle did not converge");
}

// Regime thresholds. The decay statements hold up to unspecified constants and
// an arbitrarily small epsilon in the exponent. Measured for the plateau
// weights at kappa = 12: |Phi| stays below 1e-4 of its regime-2 peak once
// xX >= (16 R)^2, for Delta in {1, 2, 4, 8} with and without a twist.
inline constexpr double kRegimeEpsilon = 0.1;
inline constexpr double kNegligibleConstant = 16.0;

/// Start of the negligible range, (c R)^2 R^eps / X.
inline double negligible_threshold(const TestFunction& phi) {
  const double R = phi.R();
  return kNegligibleConstant * kNegligibleConstant * std::pow(R, 2.0 + kRegimeEpsilon) / phi.X;
}

struct VoronoiReport {
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double residual = 0.0;      // |lhs - rhs| / scale
  double scale = 0.0;         // max(|lhs|, |rhs|, 1e-10 sum |lambda phi|)
  double last_block = 0.0;    // |contribution of n in (7n*/8, n*]| / scale
  std::size_t truncation = 0;
};

/// Dual-sum length q^2 times the negligible threshold, rounded up.
inline std::size_t voronoi_truncation(std::int64_t q, const TestFunction& phi) {
  const double qq = static_cast<double>(q) * static_cast<double>(q);
  return static_cast<std::size_t>(std::ceil(qq * negligible_threshold(phi))) + 1;
}

/// Both sides of the Voronoi formula. `truncation` defaults to voronoi_truncation.
inline VoronoiReport voronoi_identity(std::int64_t a, std::int64_t q, const TestFunction& phi, const FormTable& t,
                                      std::optional<std::size_t> truncation = std::nullopt,
                                      const MellinPhi* transform = nullptr) {
  if (q < 1) throw Error(ErrorCode::OutOfRange, "voronoi: q must be >= 1");
  if (gcd(a, q) != 1) throw Error(ErrorCode::NotInvertible, "voronoi: (a, q) must be 1");
  VoronoiReport rep;
  rep.truncation = truncation.value_or(voronoi_truncation(q, phi));
  const auto lo = static_cast<std::size_t>(std::floor(phi.support_lo())) + 1;
  const auto hi = static_cast<std::size_t>(std::ceil(phi.support_hi()));
  if (t.N < std::max(hi, rep.truncation)) throw Error(ErrorCode::TableTooShort, "voronoi: table too short");

  double lhs_abs = 0.0;
  for (std::size_t n = lo; n <= hi; ++n) {
    const Complex term = t[n] * unit_root(mulmod(a, static_cast<std::int64_t>(n), q), q) * phi(static_cast<double>(n));
    rep.lhs += term;
    lhs_abs += std::abs(term);
  }

  const double qq = static_cast<double>(q) * static_cast<double>(q);
  std::optional<MellinPhi> own;
  if (transform == nullptr) {
    own.emplace(phi, t.weight, -0.5, 1.0 / qq, static_cast<double>(rep.truncation) / qq);
    transform = &*own;
  }
  const std::int64_t abar = inverse_or_zero(a, q);
  Complex tail{0.0, 0.0};
  for (std::size_t n = 1; n <= rep.truncation; ++n) {
    const Complex term = static_cast<double>(q) * t[n] / static_cast<double>(n) *
                         unit_root(-mulmod(abar, static_cast<std::int64_t>(n), q), q) *
                         (*transform)(static_cast<double>(n) / qq);
    rep.rhs += term;
    if (8 * n > 7 * rep.truncation) tail += term;
  }
  rep.scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-10 * lhs_abs});
  rep.residual = std::abs(rep.lhs - rep.rhs) / rep.scale;
  rep.last_block = std::abs(tail) / rep.scale;
  return rep;
}

inline constexpr double kVoronoiTolerance = 1e-3;

/// Relative discrepancy of the Voronoi formula at the default truncation.
inline double voronoi_identity_residual(std::int64_t a, std::int64_t q, const TestFunction& phi, const FormTable& t) {
  const auto rep = voronoi_identity(a, q, phi, t);
  if (rep.last_block > kVoronoiTolerance)
    throw Error(ErrorCode::TruncationTooSmall, "voronoi: last block of the dual sum exceeds the tolerance budget");
  return rep.residual;
}

/// Mellin route against the Bessel oracle after fixing the constant at x0.
struct CalibrationReport {
  Complex constant{0.0, 0.0};  // phi_mellin(x0) / phi_bessel_oracle(x0)
  double max_relative_error = 0.0;
  std::size_t points = 0;
};

/// Compares both routes on `points` log-spaced x in [x_lo, x_hi] after
/// calibrating at their geometric mean.
inline CalibrationReport phi_calibration(const TestFunction& phi, int kappa, double x_lo, double x_hi,
                                         std::size_t points = 25) {
  if (!(x_lo > 0.0) || x_hi <= x_lo || points < 2) throw Error(ErrorCode::OutOfRange, "phi_calibration: bad range");
  const MellinPhi mellin(phi, kappa, -0.5, x_lo, x_hi);
  const double x0 = std::sqrt(x_lo * x_hi);
  CalibrationReport rep;
  rep.constant = mellin(x0) / phi_bessel_oracle(x0, phi, kappa);
  rep.points = points;
  for (std::size_t k = 0; k < points; ++k) {
    const double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(k) / static_cast<double>(points - 1));
    const Complex m = mellin(x);
    const Complex b = rep.constant * phi_bessel_oracle(x, phi, kappa);
    rep.max_relative_error = std::max(rep.max_relative_error, std::abs(m - b) / std::abs(m));
  }
  return rep;
}

/// Behaviour of Phi_beta across the three x-ranges, all in units of xX.
struct PhiRegimeReport {
  double R = 0.0;
  double negligible_from = 0.0;  // xX where the negligible range starts
  double regime2_peak = 0.0;     // max |Phi| sampled in regime 2
  double suppression = 0.0;      // max |Phi| on [start, 4 start] of the negligible range / regime2_peak
  FitResult regime2;             // octave maxima of |Phi| against xX
  FitResult regime3;             // |Phi| against xX for xX in [1e-2, 1e-1]
  double regime3_bound = 0.0;    // max |Phi| / (xX)^(1/2) over regime 3
};

namespace detail {
inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k)
    out[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(points - 1));
  return out;
}
}  // namespace detail

/// Samples Phi_beta for the plateau weight of parameter delta. Regime 2 is the
/// octave range xX in [4, R^2/8], regime 3 uses a contour far to the left
/// (sigma = -6) so that tiny values are not lost to cancellation.
inline PhiRegimeReport phi_beta_regimes(double beta, double delta, double X, int kappa) {
  const TestFunction phi = plateau_test_function(X, delta, beta);
  PhiRegimeReport rep;
  rep.R = phi.R();
  rep.negligible_from = negligible_threshold(phi) * X;
  const double r2_hi = rep.R * rep.R / 8.0;
  if (r2_hi < 32.0) throw Error(ErrorCode::DegenerateGrid, "phi_beta_regimes: regime 2 shorter than three octaves");

  const MellinPhi main(phi, kappa, -0.5, 4.0 / X, 4.0 * rep.negligible_from / X);
  std::vector<std::pair<double, double>> octaves;
  for (double lo = 4.0; 2.0 * lo <= r2_hi * (1.0 + 1e-12); lo *= 2.0) {
    double mx = 0.0;
    for (double u : detail::log_grid(lo, 2.0 * lo, 33)) mx = std::max(mx, std::abs(main(u / X)));
    octaves.emplace_back(lo * std::numbers::sqrt2, mx);
    rep.regime2_peak = std::max(rep.regime2_peak, mx);
  }
  rep.regime2 = fit_exponent(octaves);

  double tail = 0.0;
  for (double u : detail::log_grid(rep.negligible_from, 4.0 * rep.negligible_from, 129))
    tail = std::max(tail, std::abs(main(u / X)));
  rep.suppression = tail / rep.regime2_peak;

  const MellinPhi left(phi, kappa, -6.0, 1e-2 / X, 1e-1 / X);
  std::vector<std::pair<double, double>> small;
  for (double u : detail::log_grid(1e-2, 1e-1, 11)) {
    const double v = std::abs(left(u / X));
    small.emplace_back(u, v);
    rep.regime3_bound = std::max(rep.regime3_bound, v / std::sqrt(u));
  }
  rep.regime3 = fit_exponent(small);
  return rep;
}

/// Log-log slope of sum_{n <= x} |lambda(n)| (n, q)^(1/2) over dyadic x in grid.
inline FitResult gcd_weighted_slope(const FormTable& t, std::int64_t q, const std::vector<std::size_t>& grid) {
  if (q < 1) throw Error(ErrorCode::OutOfRange, "gcd_weighted_slope: q must be >= 1");
  std::vector<std::pair<double, double>> samples;
  double sum = 0.0;
  std::size_t n = 1;
  for (std::size_t x : grid) {
    if (x > t.N) throw Error(ErrorCode::TableTooShort, "gcd_weighted_slope: grid exceeds table");
    for (; n <= x; ++n) sum += std::abs(t[n]) * std::sqrt(static_cast<double>(gcd(static_cast<std::int64_t>(n), q)));
    samples.emplace_back(static_cast<double>(x), sum);
  }
  return fit_exponent(samples);
}

}  // namespace thetatwist
