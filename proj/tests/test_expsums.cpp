#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "thetatwist/circle.hpp"
#include "thetatwist/expsums.hpp"

using namespace thetatwist;

namespace {

void expect_complex_near(Complex a, Complex b, double tol) {
  EXPECT_NEAR(a.real(), b.real(), tol);
  EXPECT_NEAR(a.imag(), b.imag(), tol);
}

}  // namespace

TEST(Weight, Examples) {
  EXPECT_EQ(make_weight(1)(0.75), 1.0);
  for (double d : {1.0, 2.5, 64.0}) {
    const auto w = make_weight(d);
    EXPECT_EQ(w(0.5), 0.0);
    EXPECT_EQ(w(1.0), 0.0);
    EXPECT_EQ(w(0.2), 0.0);
    EXPECT_EQ(w(1.3), 0.0);
  }
  const double mid = make_weight(4)(0.5 + 1.0 / 64.0);
  EXPECT_GT(mid, 0.0);
  EXPECT_LT(mid, 1.0);
  EXPECT_NEAR(mid, 0.5, 1e-12);
  try {
    make_weight(0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadDelta);
  }
}

TEST(Weight, RangeAndMonotoneRamps) {
  for (double d : {1.0, 3.0, 16.0}) {
    const auto w = make_weight(d);
    const double h = w.ramp_width();
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 0.5 + h * i / 1000.0;
      const double v = w(t);
      ASSERT_GE(v, prev);
      ASSERT_LE(v, 1.0);
      prev = v;
    }
    prev = 1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 1.0 - h + h * i / 1000.0;
      const double v = w(t);
      ASSERT_LE(v, prev);
      ASSERT_GE(v, 0.0);
      prev = v;
    }
    for (double t = 0.5 + h; t <= 1.0 - h; t += 0.01) ASSERT_EQ(w(t), 1.0);
  }
}

TEST(Weight, DerivativeConstantsStableUnderDoubling) {
  const auto c1 = weight_derivative_constants(make_weight(2));
  const auto c2 = weight_derivative_constants(make_weight(4));
  const auto c3 = weight_derivative_constants(make_weight(8));
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_GT(c1[j], 0.0);
    EXPECT_NEAR(c2[j] / c1[j], 1.0, 0.02) << j;
    EXPECT_NEAR(c3[j] / c2[j], 1.0, 0.02) << j;
  }
}

TEST(FEval, Examples) {
  EXPECT_NEAR(std::abs(F_eval(0.0, 50.0) - Complex{15.0, 0.0}), 0.0, 1e-12);
  expect_complex_near(F_eval(0.5, 16.0), 1.0, 1e-12);
  expect_complex_near(F_eval(0.25, 4.0), Complex{3.0, 2.0}, 1e-12);
  EXPECT_THROW(F_eval(0.1, 0.5), Error);
}

TEST(FEval, SymmetryAndPeriodicity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const Complex f = F_eval(a, 900.0);
    expect_complex_near(F_eval(-a, 900.0), std::conj(f), 1e-9);
    expect_complex_near(F_eval(a + 1.0, 900.0), f, 1e-9);
  }
}

TEST(FCoeffs, AgreesWithDirectSum) {
  const auto f = F_coeffs(500.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng);
    expect_complex_near(f(a), F_eval(a, 500.0), 1e-9);
  }
}

TEST(GEval, Examples) {
  const auto t = delta_form(2048);
  const auto chi = build_char(13, 1);
  const auto w = make_weight(2);
  // The window (X/2, X] holds no n with w(n/X) > 0 until X exceeds 1.
  EXPECT_EQ(G_eval(0.3, 0.5, t, chi, w), Complex(0.0, 0.0));
  EXPECT_EQ(G_eval(0.3, 1.0, t, chi, w), Complex(0.0, 0.0));
  expect_complex_near(G_eval(0.0, 1.5, t, chi, w), 1.0, 1e-15);
  Complex direct{0.0, 0.0};
  for (std::size_t n = 1; n <= 1024; ++n)
    direct += t[n] * chi(static_cast<std::int64_t>(n)) * w(static_cast<double>(n) / 1024.0);
  expect_complex_near(G_eval(0.0, 1024.0, t, chi, w), direct, 1e-10);
  try {
    G_eval(0.1, 4096.0, t, chi, w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TableTooShort);
  }
}

TEST(GEval, TriangleInequality) {
  const auto t = delta_form(2048);
  const auto chi = build_char(7, 2);
  const auto w = make_weight(1);
  double bound = 0.0;
  for (std::size_t n = 1025; n <= 2048; ++n) bound += std::abs(t[n]);
  for (int k = 0; k < 100; ++k) ASSERT_LE(std::abs(G_eval(k / 97.0, 2048.0, t, chi, w)), bound);
}

TEST(GCoeffs, SupportAndAgreement) {
  const auto t = delta_form(1024);
  const auto chi = build_char(5, 1);
  const auto w = make_weight(1);
  const auto g4 = G_coeffs(4.0, t, chi, w);
  EXPECT_EQ(g4.lo, -4);
  EXPECT_EQ(g4.hi(), -3);
  const auto g = G_coeffs(1024.0, t, chi, w);
  EXPECT_GE(g.lo, -1024);
  EXPECT_LT(g.hi(), -512);
  for (std::int64_t n = 515; n <= 1024; n += 5) EXPECT_EQ(g.coefficient(-n), Complex(0.0, 0.0));
  EXPECT_LE(std::abs(g(0.317) - G_eval(0.317, 1024.0, t, chi, w)), 1e-10);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng);
    ASSERT_LE(std::abs(g(a) - G_eval(a, 1024.0, t, chi, w)), 1e-10);
  }
}

TEST(GMeanSquare, ParsevalAgainstQuadrature) {
  const auto t = delta_form(256);
  const auto chi = build_char(7, 3);
  const auto w = make_weight(2);
  const double exact = g_mean_square(256.0, t, chi, w);
  // |G|^2 has bandwidth < 256, so 512 equispaced samples integrate it exactly.
  double q = 0.0;
  for (int k = 0; k < 512; ++k) q += std::norm(G_eval(k / 512.0, 256.0, t, chi, w));
  EXPECT_NEAR(q / 512.0, exact, 1e-9 * exact);
}

TEST(WeylRatio, Examples) {
  EXPECT_NEAR(weyl_ratio(0.0, 1, 1e4), 2.0, 0.02);
  EXPECT_LT(weyl_ratio(0.5, 2, 1e4), 0.05);
}

TEST(WeylRatio, MinorArcMaximumGrowsSlowly) {
  auto max_ratio = [](double X) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double P = std::pow(X, 0.25), Q = std::sqrt(X);
    double best = 0.0;
    for (int i = 0; i < 4000; ++i) {
      const double a = u(rng);
      const auto r = dirichlet_approx(a, Q);
      if (static_cast<double>(r.q) <= P) continue;
      best = std::max(best, weyl_ratio(a, r.q, X));
    }
    return best;
  };
  const double r14 = max_ratio(16384.0), r15 = max_ratio(32768.0);
  EXPECT_LT(r15 / r14, std::pow(2.0, 0.1));
}

TEST(Hua, Examples) {
  EXPECT_EQ(hua_count(1.0), 33);
  EXPECT_EQ(hua_count(0.5), 1);
}

TEST(Hua, QuadratureMatchesCount) {
  for (double X = 1; X <= 256; X += 1) ASSERT_EQ(hua_quadrature(X), hua_count(X)) << X;
}

TEST(Hua, SlopeNearLinear) {
  std::vector<std::pair<double, double>> pts;
  for (double X = 256; X <= 65536; X *= 2) pts.emplace_back(X, static_cast<double>(hua_count(X)));
  const double s = fit_exponent(pts).slope;
  EXPECT_GE(s, 1.0);
  EXPECT_LE(s, 1.15);
}

TEST(TrigPoly, IntegrateMatchesNumericQuadrature) {
  TrigPoly p;
  p.lo = -3;
  p.coeffs = {Complex{1.0, 2.0}, 0.5, Complex{0.0, -1.0}, 2.0, 0.0, Complex{3.0, 1.0}};
  const double u = 0.13, v = 0.71;
  const int n = 20000;
  Complex num{0.0, 0.0};
  for (int k = 0; k < n; ++k) num += p(u + (v - u) * (k + 0.5) / n);
  num *= (v - u) / n;
  expect_complex_near(p.integrate(u, v), num, 1e-7);
  expect_complex_near(p.integrate(0.0, 1.0), p.coefficient(0), 1e-14);
}

TEST(TrigPoly, MultiplyIsPointwise) {
  const auto f = F_coeffs(30.0);
  const auto f2 = multiply(f, f);
  for (double a : {0.0, 0.1, 0.37, 0.9}) expect_complex_near(f2(a), f(a) * f(a), 1e-9);
}
