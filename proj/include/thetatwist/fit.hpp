#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "thetatwist/errors.hpp"

namespace thetatwist {

/// Least-squares line through (log X, log |value|).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square deviation in log space
  std::vector<std::pair<double, double>> points;
};

inline FitResult fit_exponent(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 3) throw Error(ErrorCode::DegenerateGrid, "fit_exponent needs at least 3 points");
  FitResult fit;
  fit.points.reserve(samples.size());
  for (const auto& [x, magnitude] : samples) {
    if (!(x > 0.0) || !(magnitude > 0.0))
      throw Error(ErrorCode::NonpositiveMagnitude, "fit_exponent needs positive abscissae and magnitudes");
    fit.points.emplace_back(std::log(x), std::log(magnitude));
  }
  const double n = static_cast<double>(fit.points.size());
  double sx = 0, sy = 0;
  for (const auto& [lx, ly] : fit.points) {
    sx += lx;
    sy += ly;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [lx, ly] : fit.points) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (sxx <= 0.0) throw Error(ErrorCode::DegenerateGrid, "fit_exponent abscissae are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (const auto& [lx, ly] : fit.points) {
    const double e = ly - (fit.intercept + fit.slope * lx);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace thetatwist
