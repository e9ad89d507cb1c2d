#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "thetatwist/characters.hpp"

using namespace thetatwist;

namespace {

constexpr double kTol = 1e-10;

void expect_complex_near(Complex a, Complex b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

// Kloosterman sum with floating phases only: an oracle that shares nothing
// with the exact-reduction path in the library.
Complex kloosterman_float(std::int64_t a, std::int64_t b, std::int64_t q) {
  if (q == 1) return {1.0, 0.0};
  Complex s{0.0, 0.0};
  for (std::int64_t x = 1; x < q; ++x) {
    if (std::gcd(x, q) != 1) continue;
    std::int64_t xbar = 1;
    while ((x * xbar) % q != 1) ++xbar;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(a * x + b * xbar) / static_cast<double>(q);
    s += Complex{std::cos(t), std::sin(t)};
  }
  return s;
}

}  // namespace

TEST(BuildChar, Examples) {
  const auto c3 = build_char(3, 1);
  expect_complex_near(c3(1), 1.0, kTol);
  expect_complex_near(c3(2), -1.0, kTol);
  expect_complex_near(c3(0), 0.0, 0.0);
  const auto c5 = build_char(5, 2);
  EXPECT_EQ(c5.g, 2);
  expect_complex_near(c5(4), 1.0, kTol);
  expect_complex_near(c5(2), -1.0, kTol);
  expect_complex_near(c5(3), -1.0, kTol);
  const auto t = build_char(7, 0);
  EXPECT_TRUE(t.trivial());
  try {
    gauss_sum(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TrivialCharacter);
  }
  EXPECT_THROW(build_char(9, 1), Error);
  EXPECT_THROW(build_char(7, 6), Error);
}

TEST(BuildChar, MultiplicativeUpTo101) {
  for (std::int64_t p = 3; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t j = 0; j < p - 1; j += (p < 20 ? 1 : 5)) {
      const auto chi = build_char(p, j);
      ASSERT_NEAR(std::abs(chi(1) - Complex{1.0, 0.0}), 0.0, kTol);
      for (std::int64_t m = 0; m < p; ++m)
        for (std::int64_t n = 0; n < p; ++n)
          ASSERT_NEAR(std::abs(chi(m * n) - chi(m) * chi(n)), 0.0, 1e-12) << p << " " << j;
    }
  }
}

TEST(GaussSum, Examples) {
  expect_complex_near(build_char(5, 2).gauss, std::sqrt(5.0), 1e-12);
  expect_complex_near(build_char(3, 1).gauss, Complex{0.0, std::sqrt(3.0)}, 1e-12);
  for (std::int64_t p = 3; p <= 101; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t j = 1; j < p - 1; ++j) {
      const auto tau = build_char(p, j).gauss;
      ASSERT_NEAR(std::abs(tau), std::sqrt(static_cast<double>(p)), kTol);
      ASSERT_NEAR((tau * std::conj(tau)).real(), static_cast<double>(p), 1e-9);
    }
  }
}

TEST(CharFourier, Examples) {
  EXPECT_LE(char_fourier_check(build_char(5, 2), 1), 1e-12);
  EXPECT_LE(char_fourier_check(build_char(7, 1), 14), 1e-12);
  for (std::int64_t j = 1; j < 12; ++j) {
    const auto chi = build_char(13, j);
    for (std::int64_t n = 0; n < 13; ++n) ASSERT_LE(char_fourier_check(chi, n), kTol);
  }
}

TEST(Kloosterman, Examples) {
  EXPECT_EQ(kloosterman(3, 5, 1), 1.0);
  EXPECT_NEAR(kloosterman(1, 1, 2), 1.0, 1e-12);
  EXPECT_NEAR(kloosterman(1, 1, 3), -1.0, 1e-12);
  EXPECT_NEAR(weil_ratio(1, 1, 3), 1.0 / (2.0 * std::sqrt(3.0)), 1e-12);
}

TEST(Kloosterman, AgreesWithFloatOracleAndIsSymmetric) {
  for (std::int64_t q = 1; q <= 50; ++q)
    for (std::int64_t a = 0; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b) {
        const double s = kloosterman(a, b, q);
        ASSERT_NEAR(s, kloosterman_float(a, b, q).real(), 1e-9);
        ASSERT_NEAR(s, kloosterman(b, a, q), 1e-10);
      }
}

TEST(Kloosterman, WeilBoundSmallModuli) {
  for (std::int64_t q = 1; q <= 40; ++q) {
    EXPECT_LE(weil_ratio(0, 0, q), 1.0);
    for (std::int64_t a = 0; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b) ASSERT_LE(weil_ratio(a, b, q), 1.0 + 1e-12);
  }
}

TEST(Charsum, Examples) {
  const auto chi = build_char(5, 2);
  expect_complex_near(charsum_brute(1, 1, 2, chi), charsum_closed(1, 1, 2, chi), kTol);
  // q = 1: the a-sum is trivial.
  Complex direct{0.0, 0.0};
  for (std::int64_t b = 1; b < 5; ++b) {
    const std::int64_t bbar = mod_inverse(b, 5).value;
    direct += chi.conj(b) * unit_root(-bbar * 3, 5);
  }
  expect_complex_near(charsum_brute(3, 7, 1, chi), direct, kTol);
  expect_complex_near(charsum_closed(3, 7, 1, chi), chi.conj(-3) * chi.gauss, kTol);
  for (std::int64_t q : {1, 2, 3, 4, 7})
    for (std::int64_t M : {0, 1, 5}) {
      expect_complex_near(charsum_brute(10, M, q, chi), 0.0, kTol);
      expect_complex_near(charsum_closed(10, M, q, chi), 0.0, kTol);
    }
  try {
    charsum_brute(1, 1, 10, chi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModuliNotCoprime);
  }
  EXPECT_THROW(charsum_closed(1, 1, 5, chi), Error);
  EXPECT_THROW(charsum_closed(1, 1, 2, build_char(5, 0)), Error);
}

TEST(Charsum, ClosedFormOnSmallGrid) {
  for (std::int64_t p : {5, 7}) {
    for (std::int64_t j = 1; j < p - 1; ++j) {
      const auto chi = build_char(p, j);
      for (std::int64_t q = 1; q <= 12; ++q) {
        if (q % p == 0) continue;
        for (std::int64_t n = 1; n <= 15; ++n)
          for (std::int64_t M = 0; M <= 15; ++M)
            ASSERT_LE(std::abs(charsum_brute(n, M, q, chi) - charsum_closed(n, M, q, chi)), kTol)
                << p << " " << j << " " << q << " " << n << " " << M;
      }
    }
  }
}

TEST(Charsum, BoundRatio) {
  for (std::int64_t p : {5, 7, 11, 13}) {
    const auto chi = build_char(p, 1);
    EXPECT_NEAR(charsum_bound_ratio(2, 3, 1, chi), 1.0, 1e-12);
    for (std::int64_t q = 1; q <= 20; ++q) {
      if (q % p == 0) continue;
      for (std::int64_t n = 1; n <= 40; ++n)
        for (std::int64_t M = 0; M <= 10; ++M) ASSERT_LE(charsum_bound_ratio(n, M, q, chi), 1.0 + 1e-12);
      ASSERT_LE(charsum_bound_ratio(q * 3, 2, q, chi), 1.0 + 1e-12);
    }
  }
}
