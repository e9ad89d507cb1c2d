#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include "thetatwist/theta.hpp"

using namespace thetatwist;

namespace {

// Brute-force enumeration of ell-tuples with |m_i| <= M and sum m_i^2 = n.
std::vector<std::int64_t> enumerate_box(int ell, std::int64_t M) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(ell * M * M + 1), 0);
  std::vector<std::int64_t> m(static_cast<std::size_t>(ell), -M);
  while (true) {
    std::int64_t s = 0;
    for (auto v : m) s += v * v;
    ++counts[static_cast<std::size_t>(s)];
    std::size_t k = 0;
    while (k < m.size() && m[k] == M) m[k++] = -M;
    if (k == m.size()) break;
    ++m[k];
  }
  return counts;
}

}  // namespace

TEST(REll, Examples) {
  EXPECT_EQ(r_ell(1, 10)[4], 2);
  EXPECT_EQ(r_ell(2, 10)[5], 8);
  EXPECT_EQ(r_ell(4, 10)[1], 8);
  for (int ell = 1; ell <= 6; ++ell) EXPECT_EQ(r_ell(ell, 5)[0], 1);
}

TEST(REll, MatchesEnumeration) {
  for (int ell : {1, 2, 3, 4}) {
    const std::int64_t M = 5;
    const auto brute = enumerate_box(ell, M);
    const auto counts = r_ell(ell, static_cast<std::size_t>(M * M));
    // Below (M+1)^2 no coordinate can leave the box.
    for (std::size_t n = 0; n <= static_cast<std::size_t>(M * M); ++n) ASSERT_EQ(counts[n], brute[n]) << ell << " " << n;
  }
}

TEST(REll, ConvolutionConsistency) {
  const std::size_t N = 10000;
  std::vector<ThetaCounts> r;
  for (int ell = 0; ell <= 6; ++ell) r.push_back(ell == 0 ? ThetaCounts{} : r_ell(ell, N));
  for (int ell = 2; ell <= 6; ++ell) {
    const int a = ell / 2, b = ell - a;
    for (std::size_t n = 0; n <= N; n += (n < 500 ? 1 : 7)) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k <= n; ++k) s += r[static_cast<std::size_t>(a)][k] * r[static_cast<std::size_t>(b)][n - k];
      ASSERT_EQ(s, r[static_cast<std::size_t>(ell)][n]) << ell << " " << n;
    }
  }
}

TEST(R2Oracle, Examples) {
  EXPECT_EQ(r2_oracle(1), 4);
  EXPECT_EQ(r2_oracle(3), 0);
  EXPECT_EQ(r2_oracle(25), 12);
  EXPECT_THROW(r2_oracle(0), Error);
}

TEST(R2Oracle, AgreesWithConvolutionUpTo1e5) {
  const auto r2 = r_ell(2, 100000);
  for (std::size_t n = 1; n <= 100000; ++n) ASSERT_EQ(r2[n], r2_oracle(static_cast<std::int64_t>(n))) << n;
}

TEST(REllBox, Examples) {
  const auto one = r_ell_box(1, 4);
  EXPECT_EQ(one[0], 1);
  EXPECT_EQ(one[1], 2);
  EXPECT_EQ(one[4], 2);
  EXPECT_EQ(one.box, 2);
  EXPECT_TRUE(one.truncated);
  std::int64_t total = 0;
  for (auto c : r_ell_box(2, 2).counts) total += c;
  EXPECT_EQ(total, 9);
  const auto three = r_ell_box(3, 10);
  const auto free = r_ell(3, 9);
  for (std::size_t n = 0; n <= 9; ++n) EXPECT_EQ(three[n], free[n]);
}

TEST(REllBox, MassAndEnumeration) {
  for (int ell : {1, 2, 3, 4}) {
    for (double X : {1.0, 7.0, 30.0}) {
      const auto box = r_ell_box(ell, X);
      const auto brute = enumerate_box(ell, *box.box);
      ASSERT_EQ(box.counts.size(), brute.size());
      std::int64_t total = 0, expect = 1;
      for (std::size_t n = 0; n < brute.size(); ++n) {
        ASSERT_EQ(box[n], brute[n]);
        total += box[n];
      }
      for (int i = 0; i < ell; ++i) expect *= 2 * *box.box + 1;
      EXPECT_EQ(total, expect);
    }
  }
}

TEST(REllBox, UnrestrictiveBelowBoxSquare) {
  for (int ell : {2, 3, 5}) {
    const double X = 400.0;
    const auto box = r_ell_box(ell, X);
    const auto free = r_ell(ell, 400);
    for (std::size_t n = 0; n <= 400; ++n) ASSERT_EQ(box[n], free[n]);
  }
}

TEST(RBoundSlope, Contracts) {
  EXPECT_LE(r_bound_slope(4, 1 << 14).slope, 1.15);
  EXPECT_LE(r_bound_slope(3, 1 << 14).slope, 0.65);
  EXPECT_LE(r_bound_slope(8, 1 << 12).slope, 3.15);
  try {
    r_bound_slope(3, 50);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGrid);
  }
}

TEST(Theta, LengthLimit) {
  try {
    r_ell(2, kMaxThetaLength + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
}
