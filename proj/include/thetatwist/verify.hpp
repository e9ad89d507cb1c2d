#pragma once

// The verification grid shared by `verify` and the acceptance binary. Each
// check records the measured value and the bound it was held to.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <string>
#include <vector>

#include "json.hpp"
#include "thetatwist/characters.hpp"
#include "thetatwist/circle.hpp"
#include "thetatwist/expsums.hpp"
#include "thetatwist/fit.hpp"
#include "thetatwist/forms.hpp"
#include "thetatwist/harness.hpp"
#include "thetatwist/parallel.hpp"
#include "thetatwist/theta.hpp"
#include "thetatwist/voronoi.hpp"

namespace thetatwist {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string id;    // criterion number plus letter, e.g. "5b"
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;    // upper end for "in"
  std::string relation;  // "<=", "==" or "in"
  std::string detail;
  double lower = 0.0;    // lower end for "in"
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Quick;
  std::vector<CheckResult> checks;
  std::string timestamp;  // the only field that changes between runs

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {
inline CheckResult at_most(std::string id, std::string name, double value, double bound, std::string detail = {}) {
  return {std::move(id), std::move(name), value <= bound, value, bound, "<=", std::move(detail)};
}

inline CheckResult between(std::string id, std::string name, double value, double lo, double hi,
                           std::string detail = {}) {
  return {std::move(id), std::move(name), value >= lo && value <= hi, value, hi, "in", std::move(detail), lo};
}

inline std::vector<std::size_t> dyadic(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> g;
  for (std::size_t x = lo; x <= hi; x *= 2) g.push_back(x);
  return g;
}

inline std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 3; p <= limit; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}
}  // namespace detail

/// 1: integral_total against direct_sum on the (X, l, p, j) grid.
inline std::vector<CheckResult> check_orthogonality(const FormTable& t) {
  double worst = 0.0;
  for (double X : {512.0, 2048.0})
    for (int ell : {3, 4})
      for (auto [p, j] : {std::pair<std::int64_t, std::int64_t>{5, 2}, {13, 1}}) {
        const auto chi = build_char(p, j);
        const auto w = make_weight(1.0);
        const Complex d = direct_sum(X, ell, t, chi, w);
        const Complex i = integral_total(X, ell, t, chi, w);
        worst = std::max(worst, std::abs(i - d) / (1.0 + std::abs(d)));
      }
  return {detail::at_most("1", "orthogonality identity", worst, 1e-9)};
}

/// 2: brute-force character sum against its closed form.
inline std::vector<CheckResult> check_charsum(VerifyLevel level, unsigned threads) {
  const bool full = level == VerifyLevel::Full;
  const std::vector<std::int64_t> primes = full ? std::vector<std::int64_t>{5, 7, 11, 13} : std::vector<std::int64_t>{5, 7};
  const std::int64_t qmax = full ? 20 : 8, nmax = full ? 50 : 12;
  struct Job {
    std::int64_t p, j, q;
  };
  std::vector<Job> jobs;
  for (auto p : primes)
    for (std::int64_t j = 1; j < p - 1; ++j)
      for (std::int64_t q = 1; q <= qmax; ++q)
        if (gcd(q, p) == 1) jobs.push_back({p, j, q});
  const auto diffs = parallel_map(jobs.size(), threads, [&](std::size_t k) {
    const auto chi = build_char(jobs[k].p, jobs[k].j);
    double worst = 0.0;
    for (std::int64_t n = 1; n <= nmax; ++n)
      for (std::int64_t M = 0; M <= nmax; ++M)
        worst = std::max(worst, std::abs(charsum_brute(n, M, jobs[k].q, chi) - charsum_closed(n, M, jobs[k].q, chi)));
    return worst;
  });
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, d);
  return {detail::at_most("2", "character sum closed form", worst, 1e-10,
                          std::to_string(jobs.size()) + " (p, j, q) triples, n and M up to " + std::to_string(nmax))};
}

/// 3: Gauss sum moduli and the Fourier expansion of characters.
inline std::vector<CheckResult> check_gauss() {
  double gauss = 0.0;
  for (auto p : detail::small_primes(101))
    for (std::int64_t j = 1; j < p - 1; ++j)
      gauss = std::max(gauss, std::abs(std::abs(build_char(p, j).gauss) - std::sqrt(static_cast<double>(p))));
  double fourier = 0.0;
  for (auto p : detail::small_primes(13))
    for (std::int64_t j = 1; j < p - 1; ++j) {
      const auto chi = build_char(p, j);
      for (std::int64_t n = 0; n < p; ++n) fourier = std::max(fourier, char_fourier_check(chi, n));
    }
  return {detail::at_most("3a", "Gauss sum modulus sqrt(p), p <= 101", gauss, 1e-10),
          detail::at_most("3b", "character Fourier expansion, p <= 13", fourier, 1e-10)};
}

/// 4: Weil bound for Kloosterman sums, exhaustive in a, b.
inline std::vector<CheckResult> check_weil(VerifyLevel level) {
  const std::int64_t qmax = level == VerifyLevel::Full ? 100 : 30;
  double worst = 0.0;
  for (std::int64_t q = 1; q <= qmax; ++q)
    for (std::int64_t a = 0; a < q; ++a)
      for (std::int64_t b = 0; b < q; ++b) worst = std::max(worst, weil_ratio(a, b, q));
  return {detail::at_most("4", "Weil bound, q <= " + std::to_string(qmax), worst, 1.0)};
}

/// 5: Deligne bound, exact Hecke relations, Rankin-Selberg growth.
inline std::vector<CheckResult> check_coefficients(VerifyLevel level) {
  const bool full = level == VerifyLevel::Full;
  const std::size_t N = full ? 100000 : 16384;
  const std::size_t slope_top = full ? (std::size_t{1} << 17) : (std::size_t{1} << 14);
  const FormTable t = delta_form(std::max(N, slope_top));
  double deligne = 0.0;
  {
    const auto d = divisor_count_table(static_cast<std::int64_t>(N));
    for (std::size_t n = 1; n <= N; ++n) deligne = std::max(deligne, std::abs(t[n]) / static_cast<double>(d[n]));
  }
  std::int64_t failures = 0, pairs = 0;
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t n = 1; m * n <= N; ++n) {
      if (gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)) != 1) continue;
      ++pairs;
      if (hecke_residual_exact(t, m, n) != 0) ++failures;
    }
  const auto rs = rankin_selberg_slope(t, detail::dyadic(1024, slope_top));
  return {detail::at_most("5a", "Deligne ratio, n <= " + std::to_string(N), deligne, 1.0),
          {"5b", "exact Hecke relation, coprime mn <= " + std::to_string(N), failures == 0,
           static_cast<double>(failures), 0.0, "==", std::to_string(pairs) + " pairs"},
          detail::between("5c", "Rankin-Selberg slope", rs.slope, 0.9, 1.1)};
}

/// 6: theta counts against the divisor-sum oracle, box mass, growth of r_l.
inline std::vector<CheckResult> check_theta(VerifyLevel level) {
  const bool full = level == VerifyLevel::Full;
  const std::size_t N = full ? 100000 : 10000;
  const auto r2 = r_ell(2, N);
  std::int64_t mismatches = 0;
  for (std::size_t n = 1; n <= N; ++n)
    if (r2[n] != r2_oracle(static_cast<std::int64_t>(n))) ++mismatches;
  std::int64_t mass_failures = 0;
  for (int ell : {1, 2, 3, 4, 8})
    for (double X : {10.0, 100.0, 1000.0}) {
      const auto box = r_ell_box(ell, X);
      std::int64_t total = 0, expect = 1;
      for (auto c : box.counts) total += c;
      for (int i = 0; i < ell; ++i) expect *= 2 * *box.box + 1;
      if (total != expect) ++mass_failures;
    }
  std::vector<CheckResult> out{
      {"6a", "r_2 convolution equals divisor-sum oracle, n <= " + std::to_string(N), mismatches == 0,
       static_cast<double>(mismatches), 0.0, "==", {}},
      {"6b", "box mass identity", mass_failures == 0, static_cast<double>(mass_failures), 0.0, "==", {}}};
  const std::size_t slopeN = full ? (std::size_t{1} << 16) : (std::size_t{1} << 14);
  for (int ell : {3, 4, 8}) {
    const double bound = ell / 2.0 - 1.0 + 0.15;
    out.push_back(detail::at_most("6c", "r_" + std::to_string(ell) + " growth slope", r_bound_slope(ell, slopeN).slope,
                                  bound));
  }
  return out;
}

/// 7: Hua's fourth moment.
inline std::vector<CheckResult> check_hua(VerifyLevel level) {
  const bool full = level == VerifyLevel::Full;
  std::int64_t mismatches = 0;
  for (int X = 1; X <= 256; ++X)
    if (hua_count(X) != hua_quadrature(X)) ++mismatches;
  std::vector<std::pair<double, double>> pts;
  const int top = full ? 16 : 14;
  for (int e = 8; e <= top; ++e) {
    const double X = std::ldexp(1.0, e);
    pts.emplace_back(X, static_cast<double>(hua_count(X)));
  }
  const double slope = fit_exponent(pts).slope;
  const auto h1 = hua_count(1);
  return {{"7a", "hua_count(1) = 33", h1 == 33, static_cast<double>(h1), 33.0, "==", {}},
          {"7b", "hua_count equals Parseval quadrature, X <= 256", mismatches == 0, static_cast<double>(mismatches), 0.0,
           "==", {}},
          detail::between("7c", "Hua moment slope", slope, 1.0, 1.15)};
}

/// 8: Voronoi summation at X = 2000 with the plateau weight (delta = 1).
inline std::vector<CheckResult> check_voronoi(VerifyLevel level) {
  const double X = 2000.0;
  const TestFunction phi = plateau_test_function(X, 1.0);
  const std::vector<std::int64_t> moduli =
      level == VerifyLevel::Full ? std::vector<std::int64_t>{1, 2, 3, 5} : std::vector<std::int64_t>{1, 3};
  const std::size_t need = voronoi_truncation(moduli.back(), phi);
  const FormTable t = delta_form(std::max<std::size_t>(need, 2000));
  double worst = 0.0, worst_ratio = 0.0;
  std::string failure;
  for (auto q : moduli) {
    const std::size_t nstar = voronoi_truncation(q, phi);
    const MellinPhi transform(phi, t.weight, -0.5, 1.0 / static_cast<double>(q * q),
                              static_cast<double>(nstar) / static_cast<double>(q * q));
    for (std::int64_t a = 1; a <= q; ++a) {
      if (gcd(a, q) != 1) continue;
      const auto r4 = voronoi_identity(a, q, phi, t, nstar / 4, &transform);
      const auto r2 = voronoi_identity(a, q, phi, t, nstar / 2, &transform);
      const auto r1 = voronoi_identity(a, q, phi, t, nstar, &transform);
      if (r1.last_block > kVoronoiTolerance && failure.empty())
        failure = "truncation too small at q = " + std::to_string(q);
      worst = std::max(worst, r1.residual);
      worst_ratio = std::max({worst_ratio, r1.residual / r2.residual, r2.residual / r4.residual});
    }
  }
  std::string qs;
  for (auto q : moduli) qs += (qs.empty() ? "" : ",") + std::to_string(q);
  auto main = detail::at_most("8a", "Voronoi residual, q in {" + qs + "}", worst, kVoronoiTolerance, failure);
  if (!failure.empty()) main.passed = false;
  return {main, detail::at_most("8b", "Voronoi residual ratio under doubling of n*", worst_ratio, 0.5)};
}

/// 9: the three ranges of Phi and the Mellin/Bessel agreement.
inline std::vector<CheckResult> check_phi_regimes() {
  const double X = 2000.0, delta = 8.0;
  const auto cal = phi_calibration(plateau_test_function(X, delta), 12, 1.0 / X, 100.0 / X);
  const auto reg = phi_beta_regimes(0.0, delta, X, 12);
  return {detail::at_most("9a", "Mellin/Bessel agreement over two decades", cal.max_relative_error, 1e-3),
          detail::between("9b", "regime-2 envelope exponent", reg.regime2.slope, 0.15, 0.35),
          detail::between("9c", "regime-3 exponent", reg.regime3.slope, 0.4, 0.6,
                         "|Phi| vanishes like (xX)^((k+1)/2) as x -> 0"),
          detail::at_most("9d", "negligible-range suppression", reg.suppression, 1e-4),
          detail::at_most("9e", "regime-3 size relative to (xX)^(1/2)", reg.regime3_bound, 1.0)};
}

/// 10: desk-scale studies of both sums.
inline std::vector<CheckResult> check_theorems(VerifyLevel level, unsigned threads) {
  const double xmax = level == VerifyLevel::Full ? 65536.0 : 8192.0;
  ExperimentConfig a;
  a.ell = 4;
  a.p = 13;
  a.j = 1;
  a.delta = 1.0;
  a.xmin = 1024;
  a.xmax = xmax;
  a.threads = threads;
  const auto r11 = thm11_experiment(a);
  ExperimentConfig b;
  b.ell = 3;
  b.p = 5;
  b.j = 1;
  b.delta_optimal = true;
  b.xmin = 1024;
  b.xmax = xmax;
  b.threads = threads;
  const auto r12 = thm12_experiment(b);
  return {detail::at_most("10a", "smooth sum slope, l = 4, p = 13", r11.fit.slope, r11.slope_bound,
                          "reference exponent " + std::to_string(r11.thm_exp)),
          detail::at_most("10b", "sharp sum slope, l = 3, p = 5", r12.fit.slope, r12.slope_bound,
                          "reference exponent " + std::to_string(r12.thm_exp))};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline VerifyReport verify_all(VerifyLevel level, unsigned threads = 1) {
  VerifyReport rep;
  rep.level = level;
  rep.timestamp = utc_timestamp();
  auto add = [&](std::vector<CheckResult> v) {
    for (auto& c : v) rep.checks.push_back(std::move(c));
  };
  const FormTable t = delta_form(2048);
  add(check_orthogonality(t));
  add(check_charsum(level, threads));
  add(check_gauss());
  add(check_weil(level));
  add(check_coefficients(level));
  add(check_theta(level));
  add(check_hua(level));
  add(check_voronoi(level));
  add(check_phi_regimes());
  add(check_theorems(level, threads));
  return rep;
}

/// JSON with the timestamp isolated under "meta".
inline nlohmann::ordered_json to_json(const VerifyReport& rep) {
  nlohmann::ordered_json j;
  j["meta"] = {{"timestamp", rep.timestamp}};
  j["level"] = rep.level == VerifyLevel::Full ? "full" : "quick";
  j["passed"] = rep.passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"value", c.value},
                   {"bound", c.bound},
                   {"relation", c.relation},
                   {"detail", c.detail}});
    if (c.relation == "in") arr.back()["lower"] = c.lower;
  }
  j["checks"] = std::move(arr);
  return j;
}

/// One human-readable line per check.
inline std::string format_line(const CheckResult& c) {
  char buf[96];
  if (c.relation == "in")
    std::snprintf(buf, sizeof buf, "%.6g in [%.6g, %.6g]", c.value, c.lower, c.bound);
  else
    std::snprintf(buf, sizeof buf, "%.6g %s %.6g", c.value, c.relation.c_str(), c.bound);
  std::string line = std::string(c.passed ? "PASS " : "FAIL ") + c.id + "  " + c.name + "  [" + buf + "]";
  if (!c.detail.empty()) line += "  " + c.detail;
  return line;
}

}  // namespace thetatwist
