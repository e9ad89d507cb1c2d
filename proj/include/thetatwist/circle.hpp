#pragma once

// Circle-method machinery for
//   S(X) = sum_n lambda(n) chi(n) w(n/X) r_l(n) = int_0^1 F(alpha)^l G(alpha) d alpha:
// rational approximation, major/minor arcs, exact arc-wise integration and the
// parameter choices for P, Q and Delta.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "thetatwist/characters.hpp"
#include "thetatwist/errors.hpp"
#include "thetatwist/expsums.hpp"
#include "thetatwist/forms.hpp"
#include "thetatwist/ntheory.hpp"
#include "thetatwist/theta.hpp"
#include "thetatwist/trigpoly.hpp"
#include "thetatwist/unity.hpp"

namespace thetatwist {

struct RationalApprox {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double beta = 0.0;
};

namespace detail {
inline bool approx_ok(double alpha, std::int64_t a, std::int64_t q, double Q) {
  const double beta = alpha - static_cast<double>(a) / static_cast<double>(q);
  return a >= 1 && a <= q && gcd(a, q) == 1 && std::abs(beta) <= (1.0 + 1e-9) / (static_cast<double>(q) * Q);
}
}  // namespace detail

/// a/q with q <= Q and |alpha - a/q| <= 1/(qQ). An alpha outside [1/Q, 1 + 1/Q]
/// is first moved into it by an integer; inside, alpha = a/q + beta.
inline RationalApprox dirichlet_approx(double alpha, double Q) {
  if (!(Q >= 1.0)) throw Error(ErrorCode::OutOfRange, "dirichlet_approx: Q must be >= 1");
  if (alpha < 1.0 / Q || alpha > 1.0 + 1.0 / Q) alpha -= std::floor(alpha - 1.0 / Q);
  const auto qmax = static_cast<std::int64_t>(std::floor(Q));

  // Last continued-fraction convergent with denominator <= Q.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = alpha;
  for (int step = 0; step < 64; ++step) {
    const double fl = std::floor(x);
    const auto c = static_cast<std::int64_t>(fl);
    const std::int64_t p2 = c * p1 + p0;
    const std::int64_t q2 = c * q1 + q0;
    if (q2 > qmax) break;
    p0 = p1, q0 = q1, p1 = p2, q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
    if (x > 1e15) break;
  }
  std::int64_t a = p1, q = q1;
  if (q >= 1) {
    const std::int64_t g = gcd(a, q);
    a /= g, q /= g;
    if (a == q) a = q = 1;
  }
  if (q < 1 || !detail::approx_ok(alpha, a, q, Q)) {
    // Exhaustive fallback: smallest admissible denominator.
    bool found = false;
    for (std::int64_t d = 1; d <= qmax && !found; ++d) {
      const auto n = static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(d)));
      for (std::int64_t cand : {n, n - 1, n + 1}) {
        if (detail::approx_ok(alpha, cand, d, Q)) {
          a = cand, q = d, found = true;
          break;
        }
      }
    }
    if (!found) a = q = 1;
  }
  return {a, q, alpha - static_cast<double>(a) / static_cast<double>(q)};
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct MajorArc {
  std::int64_t a = 1;
  std::int64_t q = 1;
  double center = 1.0;
  Interval span;  // clipped to the domain
};

/// Major arcs around a/q (q <= P) of radius 1/(qQ) inside [1/Q, 1 + 1/Q].
struct ArcDecomposition {
  double P = 1.0;
  double Q = 2.0;
  Interval domain;
  std::vector<MajorArc> arcs;   // sorted by center
  std::vector<Interval> major;  // union of the arcs, disjoint and sorted
  std::vector<Interval> minor;  // domain minus major
  bool overlap_possible = false;  // 2 P^2 > Q: disjointness is not guaranteed
  std::size_t overlaps = 0;       // adjacent arc pairs that actually intersect

  double major_measure() const {
    double s = 0.0;
    for (const auto& iv : major) s += iv.length();
    return s;
  }
  double minor_measure() const {
    double s = 0.0;
    for (const auto& iv : minor) s += iv.length();
    return s;
  }
};

inline ArcDecomposition build_arcs(double P, double Q, double X) {
  if (!(P >= 1.0) || !(P < Q) || !(Q <= X)) throw Error(ErrorCode::BadParameters, "build_arcs needs 1 <= P < Q <= X");
  ArcDecomposition d;
  d.P = P;
  d.Q = Q;
  d.domain = {1.0 / Q, 1.0 + 1.0 / Q};
  d.overlap_possible = 2.0 * P * P > Q;
  const auto qmax = static_cast<std::int64_t>(std::floor(P));
  for (std::int64_t q = 1; q <= qmax; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) {
      if (gcd(a, q) != 1) continue;
      const double c = static_cast<double>(a) / static_cast<double>(q);
      const double r = 1.0 / (static_cast<double>(q) * Q);
      d.arcs.push_back({a, q, c, {std::max(c - r, d.domain.lo), std::min(c + r, d.domain.hi)}});
    }
  }
  std::sort(d.arcs.begin(), d.arcs.end(), [](const MajorArc& x, const MajorArc& y) {
    return x.a * y.q < y.a * x.q;
  });
  for (const auto& arc : d.arcs) {
    if (!d.major.empty() && arc.span.lo <= d.major.back().hi) {
      ++d.overlaps;
      d.major.back().hi = std::max(d.major.back().hi, arc.span.hi);
    } else {
      d.major.push_back(arc.span);
    }
  }
  if (!d.overlap_possible && d.overlaps != 0)
    throw Error(ErrorCode::BadParameters, "build_arcs: arcs intersect although 2P^2 <= Q");
  double cursor = d.domain.lo;
  for (const auto& iv : d.major) {
    if (iv.lo > cursor) d.minor.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < d.domain.hi) d.minor.push_back({cursor, d.domain.hi});
  return d;
}

/// S(X) summed directly with the box-restricted counts r_l(n), |m_i| <= sqrt X.
inline Complex direct_sum(double X, int ell, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  if (ell < 1) throw Error(ErrorCode::OutOfRange, "direct_sum: l must be >= 1");
  detail::require_table(t, X);
  const auto [lo, hi] = detail::g_support(X);
  const auto counts = r_ell_box(ell, X, hi);
  Complex s{0.0, 0.0};
  for (std::size_t n = lo; n <= hi; ++n) {
    if (counts[n] == 0) continue;
    s += t[n] * chi(static_cast<std::int64_t>(n)) * w(static_cast<double>(n) / X) * static_cast<double>(counts[n]);
  }
  return s;
}

/// F(alpha)^l as a trig polynomial, by repeated multiplication with F.
inline TrigPoly F_power(double X, int ell) {
  if (ell < 0) throw Error(ErrorCode::OutOfRange, "F_power: l must be >= 0");
  TrigPoly one;
  one.coeffs = {Complex{1.0, 0.0}};
  if (ell == 0) return one;
  const TrigPoly f = F_coeffs(X);
  TrigPoly acc = f;
  for (int k = 1; k < ell; ++k) acc = multiply(f, acc);
  return acc;
}

/// F^l G as one trig polynomial.
inline TrigPoly integrand_poly(double X, int ell, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  return multiply(G_coeffs(X, t, chi, w), F_power(X, ell));
}

/// int_0^1 F^l G: the frequency-0 coefficient of F^l G.
inline Complex integral_total(double X, int ell, const FormTable& t, const CharTable& chi, const SmoothWeight& w) {
  return integrand_poly(X, ell, t, chi, w).coefficient(0);
}

/// The same integral as the mean of F^l G over K equally spaced points,
/// K larger than the bandwidth of F^l G so that no aliasing occurs.
inline Complex integral_total_quadrature(double X, int ell, const FormTable& t, const CharTable& chi,
                                         const SmoothWeight& w) {
  if (ell < 0) throw Error(ErrorCode::OutOfRange, "integral_total_quadrature: l must be >= 0");
  const TrigPoly f = F_coeffs(X);
  const TrigPoly g = G_coeffs(X, t, chi, w);
  const std::int64_t K = static_cast<std::int64_t>(ell) * f.hi() - g.lo + 1;
  const RootTable roots(K);
  Complex s{0.0, 0.0};
  for (std::int64_t k = 0; k < K; ++k) {
    Complex fk = f.at_fraction(k, roots);
    Complex pw{1.0, 0.0};
    for (int i = 0; i < ell; ++i) pw *= fk;
    s += pw * g.at_fraction(k, roots);
  }
  return s / static_cast<double>(K);
}

struct ArcIntegrals {
  Complex major{0.0, 0.0};
  Complex minor{0.0, 0.0};             // integrated over the minor intervals
  Complex minor_complement{0.0, 0.0};  // total - major
  Complex total{0.0, 0.0};
};

inline ArcIntegrals arc_integrals(int ell, double X, const FormTable& t, const CharTable& chi, const SmoothWeight& w,
                                  const ArcDecomposition& arcs) {
  if (arcs.major.empty() && arcs.minor.empty()) throw Error(ErrorCode::BadParameters, "arc_integrals: empty decomposition");
  const TrigPoly h = integrand_poly(X, ell, t, chi, w);
  ArcIntegrals out;
  out.total = h.coefficient(0);
  for (const auto& iv : arcs.major) out.major += h.integrate(iv.lo, iv.hi);
  for (const auto& iv : arcs.minor) out.minor += h.integrate(iv.lo, iv.hi);
  out.minor_complement = out.total - out.major;
  return out;
}

struct ArcParameters {
  double P = 1.0;
  double Q = 1.0;
};

/// Q = p^(2/(l+3)) X^((l+1)/(l+3)) Delta^(1/(l+3)), P = X/Q, both clamped to [1, X].
inline ArcParameters choose_Q(double p, double X, double delta, int ell) {
  if (p >= X) throw Error(ErrorCode::HypothesisViolated, "choose_Q requires p < X");
  if (ell < 3 || !(delta >= 1.0)) throw Error(ErrorCode::BadParameters, "choose_Q requires l >= 3 and delta >= 1");
  const double k = ell + 3;
  double Q = std::pow(p, 2.0 / k) * std::pow(X, (ell + 1) / k) * std::pow(delta, 1.0 / k);
  Q = std::clamp(Q, 1.0, X);
  const double P = std::clamp(X / Q, 1.0, X);
  if (!(P < Q)) throw Error(ErrorCode::BadParameters, "choose_Q: P < Q fails");
  return {P, Q};
}

/// Delta = p^(2(2-l)/(2l+1)) X^(2(l-2)/(2l+1)), at least 1.
inline double choose_Delta(double p, double X, int ell) {
  if (p >= X) throw Error(ErrorCode::HypothesisViolated, "choose_Delta requires p < X");
  if (ell < 3) throw Error(ErrorCode::BadParameters, "choose_Delta requires l >= 3");
  const double k = 2.0 * ell + 1.0;
  const double d = std::pow(p, 2.0 * (2 - ell) / k) * std::pow(X, 2.0 * (ell - 2) / k);
  return std::max(1.0, d);
}

}  // namespace thetatwist
