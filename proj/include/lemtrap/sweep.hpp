// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Grids over cluster size n and coupling ratio r = max(C, g) / A_typ.
 *
 * For every grid point the family supplies the classical couplings; A_typ is
 * the typical level spacing at the classical ground state, and both the
 * tunneling C_i and the noise amplitudes f_i = g_i are set to r * A_typ.
 * A failing channel marks its row with an error code and leaves the
 * remaining rows untouched.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/error.hpp"
#include "lemtrap/transition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lemtrap {

struct UniformFamily {
  double coupling = -1.0;
  double bias = 0.1;
};

/// Fixed J and B for a single n; tunneling in the stored params is ignored.
struct ExplicitFamily {
  ClusterParams base;
};

struct SweepChannels {
  bool overlaps = false;
  bool rates = false;
  bool pathsum = false;
  bool dynamics = false;

  friend bool operator==(const SweepChannels&, const SweepChannels&) = default;
};

struct DynamicsSettings {
  int trajectory_count = 200;
  int sample_count = 2000;
  NoiseKind kind = NoiseKind::kOrnsteinUhlenbeck;
  /// Correlation time in units of 1 / A_typ.
  double correlation_time_units = 10.0;
};

struct SweepGrid {
  std::vector<int> n_values;
  std::vector<double> ratio_values;
  std::variant<UniformFamily, ExplicitFamily> family = UniformFamily{};
  SweepChannels channels;
  DynamicsSettings dynamics;
  std::uint64_t seed = 0;
};

struct SweepRow {
  int n = 0;
  double ratio = 0.0;
  double typical_spacing = 0.0;
  std::optional<double> matrix_element;
  std::optional<double> rate_ratio;
  std::optional<double> eq4_bound;
  std::optional<double> bound_margin;
  std::optional<double> overlap_slope;
  std::optional<double> pathsum_slope;
  std::optional<double> fitted_dynamics_rate;
  std::uint64_t seed = 0;
  std::optional<ErrorKind> error;  ///< first failing channel, if any
  std::string error_detail;
};

/// Throws kValidation / kCapacity only for an invalid grid.
std::vector<SweepRow> run_sweep(const SweepGrid& grid);

struct SizeScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int used = 0;
  int excluded = 0;  ///< rows with a missing, zero or non-finite value
};

/// Least squares of log10(column) against n. Columns: "matrix_element",
/// "rate_ratio", "eq4_bound", "fitted_dynamics_rate" (absolute values).
SizeScalingFit fit_size_scaling(const std::vector<SweepRow>& rows, const std::string& column);

}  // namespace lemtrap
