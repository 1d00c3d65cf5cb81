// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file perturbation.hpp
 * @brief Stationary first-order amplitudes and the shortest-path multiphoton
 *        sum, used as independent estimates of what exact diagonalization
 *        produces.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/transition.hpp"

#include <utility>
#include <vector>

namespace lemtrap {

/// Path enumeration budget: at most 8 flips (8! orderings).
inline constexpr int kMaxPathOrder = 8;

struct PathSumResult {
  SpinConfiguration source;
  SpinConfiguration target;
  int order = 0;                 ///< Hamming distance source -> target
  double amplitude = 0.0;        ///< effective order-d matrix element, energy units
  std::uint64_t path_count = 0;  ///< d!
  double rate_ratio = 0.0;       ///< amplitude^2 / g_typ^2, g_typ = max_i g_i (0 if g == 0)
};

/// C_i / (E(anchor) - E(z)) for z one flip (spin i) away from the anchor.
/// Pass a negative tolerance to use the default degeneracy tolerance.
double rs_amplitude_first_order(const ClusterParams& params, const SpinConfiguration& anchor,
                                const SpinConfiguration& z, double tolerance = -1.0);

/// Sum over all orderings of the d differing spins of
///   prod_k g_{i_k} / prod_{k=1}^{d-1} (E(source) - E(Z_k)),
/// Z_k being the configuration after the first k flips. Evaluated by dynamic
/// programming over flip subsets; every ordering is counted exactly once.
PathSumResult multiphoton_path_sum(const ClusterParams& params, const CouplingSpec& coupling,
                                   const SpinConfiguration& source, const SpinConfiguration& target,
                                   double tolerance = -1.0);

/// Least-squares slope of log10|amplitude| against order d. Needs three
/// distinct orders; zero amplitudes are rejected.
double scaling_exponent(const std::vector<std::pair<int, double>>& amplitudes);

}  // namespace lemtrap
