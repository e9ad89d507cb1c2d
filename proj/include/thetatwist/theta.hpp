#pragma once

// Representation counts r_l(n) = #{ m in Z^l : m_1^2 + ... + m_l^2 = n }.

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "thetatwist/errors.hpp"
#include "thetatwist/fit.hpp"
#include "thetatwist/ntheory.hpp"

namespace thetatwist {

inline constexpr std::size_t kMaxThetaLength = std::size_t{1} << 24;

struct ThetaCounts {
  int ell = 1;
  std::size_t N = 0;                  // counts cover n = 0..N
  std::vector<std::int64_t> counts;   // counts[n]
  bool truncated = false;             // box-restricted coordinates
  std::optional<std::int64_t> box;    // |m_i| <= box when truncated

  std::int64_t operator[](std::size_t n) const { return n < counts.size() ? counts[n] : 0; }
};

/// floor(sqrt(X)) for real X >= 0.
inline std::int64_t isqrt_floor(double X) {
  if (X < 0) return 0;
  auto m = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(X)));
  while (static_cast<long double>(m + 1) * (m + 1) <= X) ++m;
  while (m > 0 && static_cast<long double>(m) * m > X) --m;
  return m;
}

namespace detail {

/// base * r_1 restricted to |m| <= M, truncated at degree N. Exact 64-bit.
inline std::vector<std::int64_t> multiply_by_squares(const std::vector<std::int64_t>& base, std::int64_t M,
                                                     std::size_t N) {
  std::vector<std::int64_t> out(N + 1, 0);
  for (std::int64_t m = 0; m <= M; ++m) {
    const auto sq = static_cast<std::size_t>(m * m);
    if (sq > N) break;
    const std::int64_t weight = m == 0 ? 1 : 2;
    for (std::size_t i = 0; i + sq <= N && i < base.size(); ++i) {
      if (base[i] == 0) continue;
      std::int64_t term, sum;
      if (__builtin_mul_overflow(base[i], weight, &term) || __builtin_add_overflow(out[i + sq], term, &sum))
        throw Error(ErrorCode::ResourceLimit, "representation count overflows 64 bits");
      out[i + sq] = sum;
    }
  }
  return out;
}

inline ThetaCounts fold_squares(int ell, std::int64_t M, std::size_t N) {
  if (ell < 1) throw Error(ErrorCode::OutOfRange, "ell must be >= 1");
  if (N > kMaxThetaLength) throw Error(ErrorCode::ResourceLimit, "theta truncation exceeds configured maximum");
  std::vector<std::int64_t> c(N + 1, 0);
  c[0] = 1;
  for (int k = 0; k < ell; ++k) c = multiply_by_squares(c, M, N);
  ThetaCounts out;
  out.ell = ell;
  out.N = N;
  out.counts = std::move(c);
  return out;
}

}  // namespace detail

/// Unrestricted counts r_l(0..N).
inline ThetaCounts r_ell(int ell, std::size_t N) {
  return detail::fold_squares(ell, isqrt_floor(static_cast<double>(N)), N);
}

/// Counts with every |m_i| <= floor(sqrt(X)); these are the coefficients of
/// F(alpha)^l. By default the whole support [0, l*M^2] is produced; `limit`
/// truncates it (the total-mass identity then no longer applies).
inline ThetaCounts r_ell_box(int ell, double X, std::optional<std::size_t> limit = std::nullopt) {
  if (X < 0) throw Error(ErrorCode::OutOfRange, "r_ell_box: X must be >= 0");
  const std::int64_t M = isqrt_floor(X);
  const auto support = static_cast<std::size_t>(ell) * static_cast<std::size_t>(M * M);
  const std::size_t N = limit ? std::min(*limit, support) : support;
  auto out = detail::fold_squares(ell, M, N);
  out.truncated = true;
  out.box = M;
  return out;
}

/// r_2(n) = 4 * sum_{d | n} chi_{-4}(d), independent of any convolution.
inline std::int64_t r2_oracle(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::OutOfRange, "r2_oracle: n must be >= 1");
  std::int64_t s = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    auto chi = [](std::int64_t k) -> std::int64_t { return k % 2 == 0 ? 0 : (k % 4 == 1 ? 1 : -1); };
    s += chi(d);
    if (d != n / d) s += chi(n / d);
  }
  return 4 * s;
}

/// Log-log slope of max_{n <= X} r_l(n) over dyadic X = 64, 128, ..., <= N.
inline FitResult r_bound_slope(int ell, std::size_t N) {
  if (N < 100) throw Error(ErrorCode::DegenerateGrid, "r_bound_slope needs N >= 100");
  const auto counts = r_ell(ell, N);
  std::vector<std::pair<double, double>> samples;
  std::int64_t running = 0;
  std::size_t n = 0;
  for (std::size_t X = 64; X <= N; X *= 2) {
    for (; n <= X; ++n) running = std::max(running, counts.counts[n]);
    samples.emplace_back(static_cast<double>(X), static_cast<double>(running));
  }
  return fit_exponent(samples);
}

}  // namespace thetatwist
