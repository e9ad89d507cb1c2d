#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "thetatwist/fit.hpp"
#include "thetatwist/int128.hpp"
#include "thetatwist/ntheory.hpp"

using namespace thetatwist;

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(0, 7), 7);
  EXPECT_EQ(gcd(12, 18), 6);
  EXPECT_EQ(gcd(35, 64), 1);
  EXPECT_EQ(gcd(0, 0), 0);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(gcd3(12, 18, 8), 2);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(1, 9).value, 1);
  EXPECT_EQ(mod_inverse(3, 7).value, 5);
  EXPECT_EQ(mod_inverse(3, 7).modulus, 7);
  EXPECT_EQ(mod_inverse(-3, 7).value, 2);
  try {
    mod_inverse(4, 6);
    FAIL() << "expected NotInvertible";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvertible);
  }
  EXPECT_THROW(mod_inverse(1, 1), Error);
}

TEST(ModInverse, RoundTripUpTo10k) {
  for (std::int64_t m = 2; m <= 10000; m += (m < 200 ? 1 : 97)) {
    for (std::int64_t a = 1; a < m; a += (m < 200 ? 1 : 13)) {
      if (gcd(a, m) != 1) continue;
      const auto r = mod_inverse(a, m);
      ASSERT_GE(r.value, 0);
      ASSERT_LT(r.value, m);
      ASSERT_EQ(mulmod(a, r.value, m), 1) << a << " mod " << m;
    }
  }
}

TEST(InverseOrZero, ModulusOne) {
  EXPECT_EQ(inverse_or_zero(5, 1), 0);
  EXPECT_EQ(inverse_or_zero(3, 7), 5);
}

TEST(Arithmetic, ModAndPowmod) {
  EXPECT_EQ(mod(-1, 5), 4);
  EXPECT_EQ(mod(10, 5), 0);
  EXPECT_EQ(powmod(2, 10, 1000), 24);
  EXPECT_EQ(powmod(3, 0, 7), 1);
  EXPECT_EQ(mulmod(std::int64_t{1} << 40, std::int64_t{1} << 40, 1000000007),
            static_cast<std::int64_t>((static_cast<__int128>(1) << 80) % 1000000007));
}

TEST(DivisorCount, Examples) {
  EXPECT_EQ(divisor_count(1), 1);
  EXPECT_EQ(divisor_count(12), 6);
  EXPECT_EQ(divisor_count(97), 2);
  EXPECT_EQ(divisor_count(360), 24);
}

TEST(DivisorCount, MultiplicativeUpTo10k) {
  const auto table = divisor_count_table(10000);
  for (std::int64_t n = 1; n <= 10000; ++n) ASSERT_EQ(table[static_cast<std::size_t>(n)], divisor_count(n));
  for (std::int64_t m = 1; m <= 100; ++m)
    for (std::int64_t n = 1; m * n <= 10000; ++n)
      if (gcd(m, n) == 1) {
        ASSERT_EQ(divisor_count(m * n), divisor_count(m) * divisor_count(n));
      }
}

TEST(Moebius, Examples) {
  EXPECT_EQ(moebius(1), 1);
  EXPECT_EQ(moebius(30), -1);
  EXPECT_EQ(moebius(12), 0);
  EXPECT_EQ(moebius(6), 1);
}

TEST(Moebius, DivisorSumIsIndicatorOfOne) {
  for (std::int64_t n = 1; n <= 10000; ++n) {
    int s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      s += moebius(d);
      if (d != n / d) s += moebius(n / d);
    }
    ASSERT_EQ(s, n == 1 ? 1 : 0) << n;
  }
}

TEST(EulerPhi, SmallValues) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(12), 4);
  EXPECT_EQ(euler_phi(13), 12);
}

TEST(Primes, TrialDivision) {
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
  EXPECT_TRUE(is_prime(999983));
}

TEST(PrimitiveRoot, Examples) {
  EXPECT_EQ(primitive_root(3), 2);
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_EQ(primitive_root(13), 2);
  EXPECT_EQ(primitive_root(23), 5);
  try {
    primitive_root(8);
    FAIL() << "expected NotPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrime);
  }
}

TEST(PrimitiveRoot, GeneratesGroupAndIsSmallest) {
  for (std::int64_t p = 3; p < 400; ++p) {
    if (!is_prime(p)) continue;
    const auto g = primitive_root(p);
    auto order = [p](std::int64_t x) {
      std::int64_t k = 1, y = x;
      while (y != 1) y = mulmod(y, x, p), ++k;
      return k;
    };
    ASSERT_EQ(order(g), p - 1);
    for (std::int64_t h = 2; h < g; ++h) ASSERT_LT(order(h), p - 1);
  }
}

TEST(Int128, RoundTripAndOverflow) {
  const Int128 big = checked_mul(static_cast<Int128>(1) << 62, static_cast<Int128>(1) << 62);
  EXPECT_EQ(parse_int128(to_string(big)), big);
  EXPECT_EQ(to_string(static_cast<Int128>(-6048)), "-6048");
  EXPECT_EQ(parse_int128("-24"), -24);
  EXPECT_THROW(checked_mul(big, big), Error);
  EXPECT_THROW(parse_int128("12a"), Error);
}

TEST(FitExponent, Examples) {
  const auto sq = fit_exponent({{2, 4}, {4, 16}, {8, 64}});
  EXPECT_NEAR(sq.slope, 2.0, 1e-12);
  EXPECT_NEAR(sq.residual, 0.0, 1e-12);
  EXPECT_NEAR(fit_exponent({{2, 5}, {4, 5}, {8, 5}}).slope, 0.0, 1e-12);
  try {
    fit_exponent({{2, 4}, {4, 16}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGrid);
  }
  try {
    fit_exponent({{2, 4}, {4, 0}, {8, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonpositiveMagnitude);
  }
}
