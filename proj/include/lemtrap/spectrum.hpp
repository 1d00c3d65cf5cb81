// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectrum.hpp
 * @brief Exact diagonalization, classical landscape analysis and dressed
 *        eigenstates anchored on number states.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace lemtrap {

/// Ascending eigenvalues; column k of `vectors` belongs to values(k).
/// Each column is signed so that its largest-magnitude entry is positive.
struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(values.size()); }
  int n() const noexcept;
};

struct LocalMinimum {
  SpinConfiguration config;
  double energy = 0.0;
  int distance_to_global = 0;
};

struct LandscapeReport {
  SpinConfiguration global_minimum;
  double global_energy = 0.0;
  std::vector<LocalMinimum> local_minima;  ///< excludes the global minimum, ascending basis index
  bool degenerate = false;
  double tolerance = 0.0;  ///< the epsilon used for strictness / degeneracy

  /// The metastable state used as the second logical state: largest Hamming
  /// distance to the global minimum, then lower energy, then lower index.
  std::optional<LocalMinimum> primary_lem() const;
};

struct DressedState {
  SpinConfiguration anchor;
  int eigenindex = 0;
  double eigenvalue = 0.0;
  double overlap2 = 0.0;
  /// <Z|psi> indexed by basis index Z; signed so amplitudes(anchor) > 0.
  Eigen::VectorXd amplitudes;
};

struct OverlapDecay {
  struct Point {
    int distance = 0;
    double max_amplitude = 0.0;
    bool clamped = false;  ///< below kAmplitudeFloor, excluded from the fit
  };
  std::vector<Point> points;     ///< distances 1..n
  std::optional<double> slope;   ///< d log10(max amplitude) / d distance; empty if < 2 usable points
  std::optional<double> intercept;
};

inline constexpr double kAmplitudeFloor = 1e-300;
inline constexpr double kPerturbativeOverlap = 0.5;

EigenSystem diagonalize(const HamiltonianMatrix& h);

/// 1e-9 times the spread between the highest and lowest classical energy.
double default_degeneracy_tolerance(const std::vector<double>& energies);

/// Exhaustive single-flip scan of all 2^n configurations. Pass a negative
/// tolerance to use default_degeneracy_tolerance.
LandscapeReport find_local_minima(const ClusterParams& params, double tolerance = -1.0);

DressedState dress(const EigenSystem& eig, const SpinConfiguration& anchor);

OverlapDecay overlap_decay(const DressedState& state);

/// Geometric mean of |E(flip_i(anchor)) - E(anchor)| over the n spins.
/// Throws kDegeneracy when a gap is within `tolerance` of zero (negative:
/// default tolerance).
double typical_level_spacing(const ClusterParams& params, const SpinConfiguration& anchor,
                             double tolerance = -1.0);

}  // namespace lemtrap
