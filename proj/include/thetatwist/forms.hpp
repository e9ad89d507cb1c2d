#pragma once

// Fourier coefficients of the weight-12 level-1 cusp form (the discriminant
// function) and the coefficient properties used by the circle-method bounds.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "thetatwist/errors.hpp"
#include "thetatwist/fit.hpp"
#include "thetatwist/int128.hpp"
#include "thetatwist/ntheory.hpp"

namespace thetatwist {

inline constexpr std::size_t kMaxFormLength = std::size_t{1} << 20;

/// Integer coefficients and normalized Hecke eigenvalues, both indexed by n
/// (slot 0 is an unused zero so that a[n] is a(n)).
struct FormTable {
  int weight = 12;
  std::size_t N = 0;
  std::vector<Int128> a;
  std::vector<double> lambda;

  double operator[](std::size_t n) const { return lambda[n]; }
};

namespace detail {

/// Signed exponents of Euler's pentagonal expansion of prod (1 - q^n) up to degree limit.
inline std::vector<std::pair<std::size_t, int>> pentagonal_terms(std::size_t limit) {
  std::vector<std::pair<std::size_t, int>> terms;
  terms.emplace_back(0, 1);
  for (std::int64_t k = 1;; ++k) {
    const auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    const auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (e1 > limit) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    terms.emplace_back(e1, sign);
    if (e2 <= limit) terms.emplace_back(e2, sign);
  }
  return terms;
}

inline void check_length(std::size_t N) {
  if (N < 1) throw Error(ErrorCode::OutOfRange, "coefficient table needs N >= 1");
  if (N > kMaxFormLength) throw Error(ErrorCode::ResourceLimit, "coefficient table length exceeds configured maximum");
}

}  // namespace detail

/// tau(1..N) from twenty-four sparse multiplications by the pentagonal series.
/// Result slot n holds tau(n); slot 0 is zero.
inline std::vector<Int128> delta_coefficients(std::size_t N) {
  detail::check_length(N);
  const std::size_t deg = N - 1;  // tau(n) is the coefficient of q^(n-1) in prod (1-q^k)^24
  const auto terms = detail::pentagonal_terms(deg);
  std::vector<Int128> cur(deg + 1, 0), next(deg + 1, 0);
  cur[0] = 1;
  for (int fold = 0; fold < 24; ++fold) {
    std::fill(next.begin(), next.end(), Int128{0});
    for (const auto& [e, sign] : terms) {
      for (std::size_t i = 0; i + e <= deg; ++i) {
        if (cur[i] == 0) continue;
        next[i + e] = sign > 0 ? checked_add(next[i + e], cur[i]) : checked_sub(next[i + e], cur[i]);
      }
    }
    std::swap(cur, next);
  }
  std::vector<Int128> tau(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) tau[n] = cur[n - 1];
  return tau;
}

/// Independent construction: dense repeated squaring of prod (1 - q^n),
/// eta^24 = eta^16 * eta^8. Quadratic cost, meant for cross-checks.
inline std::vector<Int128> delta_coefficients_by_squaring(std::size_t N) {
  detail::check_length(N);
  const std::size_t deg = N - 1;
  auto multiply = [deg](const std::vector<Int128>& x, const std::vector<Int128>& y) {
    std::vector<Int128> z(deg + 1, 0);
    for (std::size_t i = 0; i <= deg; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; i + j <= deg; ++j) z[i + j] = checked_add(z[i + j], checked_mul(x[i], y[j]));
    }
    return z;
  };
  std::vector<Int128> eta(deg + 1, 0);
  for (const auto& [e, sign] : detail::pentagonal_terms(deg)) eta[e] = sign;
  const auto eta2 = multiply(eta, eta);
  const auto eta4 = multiply(eta2, eta2);
  const auto eta8 = multiply(eta4, eta4);
  const auto eta16 = multiply(eta8, eta8);
  const auto eta24 = multiply(eta16, eta8);
  std::vector<Int128> tau(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) tau[n] = eta24[n - 1];
  return tau;
}

/// Divides a(n) by n^((k-1)/2). `a` is indexed from 1 (slot 0 ignored).
inline FormTable normalize(std::vector<Int128> a, int weight) {
  if (a.size() < 2 || a[1] != 1) throw Error(ErrorCode::BadLeadingCoefficient, "normalize requires a(1) = 1");
  FormTable t;
  t.weight = weight;
  t.N = a.size() - 1;
  t.lambda.assign(a.size(), 0.0);
  const long double half = (static_cast<long double>(weight) - 1.0L) / 2.0L;
  for (std::size_t n = 1; n <= t.N; ++n) {
    t.lambda[n] = static_cast<double>(static_cast<long double>(a[n]) / std::pow(static_cast<long double>(n), half));
  }
  a[0] = 0;
  t.a = std::move(a);
  return t;
}

inline FormTable delta_form(std::size_t N) { return normalize(delta_coefficients(N), 12); }

/// |lambda(mn) - sum_{d | (m,n)} mu(d) lambda(m/d) lambda(n/d)|.
inline double hecke_residual(const FormTable& t, std::size_t m, std::size_t n) {
  if (m < 1 || n < 1 || m * n > t.N) throw Error(ErrorCode::OutOfRange, "hecke_residual: m*n beyond table");
  const auto g = static_cast<std::size_t>(gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)));
  double rhs = 0.0;
  for (std::size_t d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    const int mu = moebius(static_cast<std::int64_t>(d));
    if (mu != 0) rhs += mu * t.lambda[m / d] * t.lambda[n / d];
  }
  return std::abs(t.lambda[m * n] - rhs);
}

/// Exact version on the integer coefficients:
/// a(mn) - sum_{d | (m,n)} mu(d) d^(k-1) a(m/d) a(n/d).
inline Int128 hecke_residual_exact(const FormTable& t, std::size_t m, std::size_t n) {
  if (t.a.empty()) throw Error(ErrorCode::OutOfRange, "hecke_residual_exact: table has no integer coefficients");
  if (m < 1 || n < 1 || m * n > t.N) throw Error(ErrorCode::OutOfRange, "hecke_residual_exact: m*n beyond table");
  const auto g = static_cast<std::size_t>(gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)));
  Int128 rhs = 0;
  for (std::size_t d = 1; d <= g; ++d) {
    if (g % d != 0) continue;
    const int mu = moebius(static_cast<std::int64_t>(d));
    if (mu == 0) continue;
    Int128 dpow = 1;
    for (int i = 0; i < t.weight - 1; ++i) dpow = checked_mul(dpow, static_cast<Int128>(d));
    const Int128 term = checked_mul(checked_mul(dpow, t.a[m / d]), t.a[n / d]);
    rhs = mu > 0 ? checked_add(rhs, term) : checked_sub(rhs, term);
  }
  return checked_sub(t.a[m * n], rhs);
}

/// max_n |lambda(n)| / d(n); Deligne's theorem makes this at most 1.
inline double deligne_max_ratio(const FormTable& t) {
  const auto d = divisor_count_table(static_cast<std::int64_t>(t.N));
  double worst = 0.0;
  for (std::size_t n = 1; n <= t.N; ++n) worst = std::max(worst, std::abs(t.lambda[n]) / static_cast<double>(d[n]));
  return worst;
}

/// Log-log slope of sum_{n <= X} lambda(n)^2 over the grid.
inline FitResult rankin_selberg_slope(const FormTable& t, const std::vector<std::size_t>& grid) {
  if (grid.size() < 3) throw Error(ErrorCode::DegenerateGrid, "rankin_selberg_slope needs at least 3 grid points");
  std::vector<std::pair<double, double>> samples;
  double partial = 0.0;
  std::size_t n = 0;
  for (std::size_t X : grid) {
    if (X > t.N) throw Error(ErrorCode::OutOfRange, "rankin_selberg_slope: grid exceeds table");
    if (X < n) throw Error(ErrorCode::DegenerateGrid, "rankin_selberg_slope: grid must be increasing");
    for (; n < X; ) {
      ++n;
      partial += t.lambda[n] * t.lambda[n];
    }
    samples.emplace_back(static_cast<double>(X), partial);
  }
  return fit_exponent(samples);
}

/// sum_{x < n <= x + y} |lambda(n)|
inline double short_interval_sum(const FormTable& t, std::size_t x, std::size_t y) {
  if (x + y > t.N) throw Error(ErrorCode::OutOfRange, "short_interval_sum: interval beyond table");
  double s = 0.0;
  for (std::size_t n = x + 1; n <= x + y; ++n) s += std::abs(t.lambda[n]);
  return s;
}

// Cache format: one integer per line, line n holds tau(n).

inline void write_tau_cache(const std::filesystem::path& path, const std::vector<Int128>& tau) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Config, "cannot write tau cache " + path.string());
  for (std::size_t n = 1; n < tau.size(); ++n) out << to_string(tau[n]) << '\n';
}

inline std::vector<Int128> read_tau_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read tau cache " + path.string());
  std::vector<Int128> tau{0};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    tau.push_back(parse_int128(line));
  }
  return tau;
}

/// Builds tau(1..N), reusing <dir>/tau_<N>.txt when present.
inline std::vector<Int128> cached_delta_coefficients(std::size_t N, const std::filesystem::path& dir) {
  const auto path = dir / ("tau_" + std::to_string(N) + ".txt");
  if (std::filesystem::exists(path)) {
    auto tau = read_tau_cache(path);
    if (tau.size() == N + 1) return tau;
  }
  auto tau = delta_coefficients(N);
  std::filesystem::create_directories(dir);
  write_tau_cache(path, tau);
  return tau;
}

}  // namespace thetatwist
