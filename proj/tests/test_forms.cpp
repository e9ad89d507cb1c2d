#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "thetatwist/forms.hpp"
#include "thetatwist/ntheory.hpp"

using namespace thetatwist;

namespace {

Int128 sigma_pow(std::int64_t n, int k) {
  Int128 s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int128 p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s;
}

// 756 tau(n) = 65 sigma_11(n) + 691 sigma_5(n) - 691 * 252 * sum_{k<n} sigma_5(k) sigma_5(n-k),
// an identity between Eisenstein series that never touches the eta product.
std::vector<Int128> tau_by_divisor_sums(std::int64_t N) {
  std::vector<Int128> s5(static_cast<std::size_t>(N + 1));
  for (std::int64_t n = 1; n <= N; ++n) s5[static_cast<std::size_t>(n)] = sigma_pow(n, 5);
  std::vector<Int128> tau(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t n = 1; n <= N; ++n) {
    Int128 conv = 0;
    for (std::int64_t k = 1; k < n; ++k) conv += s5[static_cast<std::size_t>(k)] * s5[static_cast<std::size_t>(n - k)];
    const Int128 num = 65 * sigma_pow(n, 11) + 691 * s5[static_cast<std::size_t>(n)] - 691 * 252 * conv;
    EXPECT_EQ(num % 756, 0);
    tau[static_cast<std::size_t>(n)] = num / 756;
  }
  return tau;
}

}  // namespace

TEST(Delta, LeadingAndSmallCoefficients) {
  const auto a1 = delta_coefficients(1);
  ASSERT_EQ(a1.size(), 2u);
  EXPECT_EQ(a1[1], 1);
  const auto a = delta_coefficients(12);
  EXPECT_EQ(a[2], -24);
  EXPECT_EQ(a[3], 252);
  EXPECT_EQ(a[4], -1472);
  EXPECT_EQ(a[6], -6048);
  EXPECT_EQ(a[6], a[2] * a[3]);
}

TEST(Delta, MatchesDivisorSumOracle) {
  const auto oracle = tau_by_divisor_sums(150);
  const auto a = delta_coefficients(150);
  for (std::size_t n = 1; n <= 150; ++n) ASSERT_EQ(a[n], oracle[n]) << n;
}

TEST(Delta, TwoConstructionsAgreeUpTo10k) {
  const auto a = delta_coefficients(10000);
  const auto b = delta_coefficients_by_squaring(10000);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t n = 1; n <= 10000; ++n) ASSERT_EQ(a[n], b[n]) << n;
}

TEST(Delta, LengthLimit) {
  try {
    delta_coefficients(kMaxFormLength + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
}

TEST(Normalize, Examples) {
  const auto one = normalize({0, 1}, 12);
  EXPECT_DOUBLE_EQ(one[1], 1.0);
  const auto t = delta_form(4);
  EXPECT_NEAR(t[2], -24.0 / std::pow(2.0, 5.5), 1e-15);
  EXPECT_NEAR(t[2], -0.530330, 1e-6);
  EXPECT_DOUBLE_EQ(t[4], -0.71875);
  try {
    normalize({0, 2, 3}, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadLeadingCoefficient);
  }
}

TEST(Hecke, Examples) {
  const auto t = delta_form(1000);
  for (std::size_t k = 1; k <= 1000; k += 37) EXPECT_EQ(hecke_residual(t, 1, k), 0.0);
  EXPECT_EQ(hecke_residual_exact(t, 2, 3), 0);
  EXPECT_EQ(hecke_residual_exact(t, 2, 2), 0);
  EXPECT_NEAR(t[4], t[2] * t[2] - 1.0, 1e-12);
  EXPECT_LE(hecke_residual(t, 2, 2), 1e-12);
  EXPECT_THROW(hecke_residual(t, 40, 40), Error);
}

TEST(Hecke, ExactForAllPairsUpTo5000) {
  const auto t = delta_form(5000);
  for (std::size_t m = 1; m <= 70; ++m)
    for (std::size_t n = m; m * n <= 5000; ++n) ASSERT_EQ(hecke_residual_exact(t, m, n), 0) << m << "," << n;
}

TEST(Hecke, PrimeSquares) {
  const auto t = delta_form(300 * 300);
  for (std::size_t p = 2; p <= 300; ++p) {
    if (!is_prime(static_cast<std::int64_t>(p))) continue;
    ASSERT_NEAR(t[p * p], t[p] * t[p] - 1.0, 1e-10) << p;
  }
}

TEST(Deligne, Bounds) {
  EXPECT_DOUBLE_EQ(deligne_max_ratio(delta_form(1)), 1.0);
  EXPECT_LE(deligne_max_ratio(delta_form(100)), 1.0);
  EXPECT_LE(deligne_max_ratio(delta_form(20000)), 1.0);
}

TEST(RankinSelberg, ConstantSequenceAndDelta) {
  FormTable ones;
  ones.N = 1000;
  ones.lambda.assign(1001, 1.0);
  EXPECT_NEAR(rankin_selberg_slope(ones, {10, 100, 1000}).slope, 1.0, 1e-12);
  const auto t = delta_form(1 << 14);
  const double s = rankin_selberg_slope(t, {1024, 2048, 4096, 8192, 16384}).slope;
  EXPECT_GE(s, 0.9);
  EXPECT_LE(s, 1.1);
  try {
    rankin_selberg_slope(t, {1024, 2048});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGrid);
  }
}

TEST(ShortInterval, Examples) {
  const auto t = delta_form(10100);
  EXPECT_EQ(short_interval_sum(t, 500, 0), 0.0);
  double sq = 0.0;
  for (std::size_t n = 1; n <= t.N; ++n) sq += t[n] * t[n];
  EXPECT_LE(short_interval_sum(t, 0, t.N), std::sqrt(static_cast<double>(t.N) * sq) * (1 + 1e-12));
  EXPECT_LE(short_interval_sum(t, 10000, 100), 10.0 * std::pow(1e6, 0.55));
  EXPECT_THROW(short_interval_sum(t, 10000, 200), Error);
}

TEST(TauCache, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "thetatwist_tau_cache_test";
  std::filesystem::remove_all(dir);
  const auto first = cached_delta_coefficients(500, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "tau_500.txt"));
  const auto second = cached_delta_coefficients(500, dir);
  EXPECT_EQ(first, second);
  EXPECT_EQ(second[6], -6048);
  std::filesystem::remove_all(dir);
}
