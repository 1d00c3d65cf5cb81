// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/fit.hpp"

#include "lemtrap/error.hpp"

#include <cstddef>

namespace lemtrap {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimension, "fit.fit_line", "x and y lengths differ");
  }
  const std::size_t count = x.size();
  if (count < 2) throw Error(ErrorKind::kInsufficientData, "fit.fit_line", "need at least two points");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    mean_x += x[k];
    mean_y += y[k];
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);

  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double dx = x[k] - mean_x;
    const double dy = y[k] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::kInsufficientData, "fit.fit_line", "all x values are equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace lemtrap
