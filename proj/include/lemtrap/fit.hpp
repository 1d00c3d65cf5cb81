// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

namespace lemtrap {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;  ///< 1 when all y are equal and fitted exactly
};

/// Ordinary least squares y = intercept + slope * x. Needs at least two
/// distinct x values; throws kInsufficientData otherwise.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace lemtrap
