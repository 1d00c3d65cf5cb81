// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Sectioned key-value run configuration.
 *
 * Format:
 *
 *     # comment
 *     [section]
 *     key = value            # scalars, words, or whitespace-separated vectors
 *     key = 1 2 3            # a vector may continue on following lines
 *           4 5 6            # that hold only values
 *
 * Sections and keys (times are in units of 1 / A_typ):
 *
 *     [run]       seed
 *     [cluster]   n, B, C (scalar broadcast or n values), A_typ, ground, lem
 *     [couplings] uniform (all pairs) | J (upper triangle, row-major,
 *                 n(n-1)/2 values) | matrix (n*n values, symmetric)
 *     [noise]     f, g (scalar broadcast or n values), kind = ou|white, tau
 *     [dynamics]  time_step, total_time (number or auto), trajectories,
 *                 samples, calibration
 *     [sweep]     n, ratio, family = uniform|explicit, coupling, bias,
 *                 channels (overlaps rates pathsum dynamics)
 *     [output]    path
 *
 * J is summed once per unordered pair. Unknown sections or keys are errors.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/sweep.hpp"
#include "lemtrap/transition.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lemtrap {

struct NoiseSection {
  std::vector<double> f;  ///< resolved to length n
  std::vector<double> g;
  NoiseKind kind = NoiseKind::kOrnsteinUhlenbeck;
  double tau = 10.0;  ///< units of 1 / A_typ

  friend bool operator==(const NoiseSection&, const NoiseSection&) = default;
};

struct DynamicsSection {
  double time_step = 0.01;              ///< units of 1 / A_typ
  std::optional<double> total_time;     ///< units of 1 / A_typ; empty = adaptive
  int trajectories = 200;
  int samples = 2000;
  std::optional<double> calibration;    ///< fitted rate per unit rate_ratio (R0)

  friend bool operator==(const DynamicsSection&, const DynamicsSection&) = default;
};

struct SweepSection {
  std::vector<int> n_values;
  std::vector<double> ratio_values;
  bool explicit_family = false;
  double coupling = -1.0;
  double bias = 0.1;
  SweepChannels channels;

  friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<ClusterParams> cluster;
  std::optional<double> typical_spacing;  ///< A_typ override
  std::optional<SpinConfiguration> ground;
  std::optional<SpinConfiguration> lem;
  std::optional<NoiseSection> noise;
  DynamicsSection dynamics;
  std::optional<SweepSection> sweep;
  std::optional<std::string> output_path;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  /// Noise amplitudes as a CouplingSpec with tau converted to absolute time.
  CouplingSpec coupling(double typical_spacing) const;
  SweepGrid sweep_grid() const;
};

/// Throws kValidation (syntax, unknown key, with line numbers) or
/// kDimension (vector length vs n, naming the key).
RunConfig parse_config(std::string_view text);

/// Canonical text with every default written out; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);

/// Shortest text that reads back to exactly the same double.
std::string format_number(double value);

}  // namespace lemtrap
