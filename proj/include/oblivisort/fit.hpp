#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

#include "oblivisort/contract.hpp"

namespace oblivisort {

/// Least-squares power-law fit on the log-log plane.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of ln(y) against ln(n) over (n, y) points.
inline SlopeFit loglog_slope(std::span<const std::pair<double, double>> points) {
  require(points.size() >= 3, "loglog_slope: need at least 3 points");
  double sum_x = 0.0, sum_y = 0.0;
  for (const auto& [n, y] : points) {
    require(n >= 2.0, "loglog_slope: need n >= 2");
    require(y > 0.0, "loglog_slope: need y > 0");
    sum_x += std::log(n);
    sum_y += std::log(y);
  }
  const double count = static_cast<double>(points.size());
  const double mean_x = sum_x / count;
  const double mean_y = sum_y / count;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - mean_y);
  }
  require(sxx > 0.0, "loglog_slope: degenerate fit (all n equal)");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [n, y] : points) {
    const double ly = std::log(y);
    const double predicted = fit.intercept + fit.slope * std::log(n);
    ss_res += (ly - predicted) * (ly - predicted);
    ss_tot += (ly - mean_y) * (ly - mean_y);
  }
  fit.r_squared = ss_tot <= 0.0 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  return fit;
}

}  // namespace oblivisort
