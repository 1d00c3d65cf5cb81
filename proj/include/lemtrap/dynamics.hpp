// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Stochastic trajectories of a ground + metastable superposition
 *        driven by classical noise, and the coherence decay rate they yield.
 *
 * Each trajectory integrates  i d|psi>/dt = [H + sum_i f_i xi_i(t) sz_i
 * + sum_i g_i eta_i(t) sx_i] |psi>  with a fixed-step RK4 scheme (noise held
 * constant across a step) and renormalizes after every step. The recorded
 * coherence is |<X'|rho(t)|Y'>| with rho averaged over trajectories and the
 * deterministic rotation at the X'-Y' splitting removed.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/spectrum.hpp"
#include "lemtrap/transition.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace lemtrap {

inline constexpr int kMaxDynamicsSpins = 8;
inline constexpr std::int64_t kMaxSteps = 1'000'000;
inline constexpr double kStabilityLimit = 0.05;     ///< time_step * eigenvalue spread
inline constexpr double kNormDriftLimit = 1e-3;     ///< per step, before renormalization
inline constexpr double kFitWindowLow = 0.1;
inline constexpr double kFitWindowHigh = 0.45;

struct TrajectoryConfig {
  double time_step = 0.0;
  double total_time = 0.0;
  int trajectory_count = 200;
  std::uint64_t seed = 0;
  CouplingSpec noise = CouplingSpec::uniform(1, 0.0, 0.0);
  int sample_count = 2000;  ///< recorded points, evenly spaced in steps (t = 0 included)
  /// Logical states; defaults to the global minimum and the primary LEM.
  std::optional<std::pair<SpinConfiguration, SpinConfiguration>> anchors;
};

enum class FitStatus {
  kFitted,      ///< exponential fitted over the coherence window
  kUpperLimit,  ///< coherence never left the top of the window; fitted_rate is an upper bound
  kNoiseless,   ///< all noise amplitudes zero; fitted_rate is 0
};

struct CoherenceTrace {
  std::vector<double> times;
  std::vector<double> coherence;        ///< |mean over trajectories of rho_{X'Y'}|
  std::vector<double> coherence_error;  ///< Monte-Carlo standard error of the mean
  double fitted_rate = 0.0;
  double fit_quality = 0.0;  ///< R^2 of the log-linear fit
  FitStatus status = FitStatus::kFitted;
  int fit_points = 0;
  double splitting = 0.0;  ///< E(Y') - E(X')
  double time_step = 0.0;
  double total_time = 0.0;
  std::int64_t steps = 0;
  int trajectory_count = 0;
  std::uint64_t seed = 0;
  SpinConfiguration ground_anchor;
  SpinConfiguration lem_anchor;
};

/// Golden-rule estimate of the coherence decay rate of (X' + Y')/sqrt(2):
/// pure dephasing from the difference of diagonal elements at zero frequency
/// plus half the total escape rate out of X' and out of Y', each noise
/// channel weighted by its spectral density at the transition frequency.
double predicted_decoherence_rate(const EigenSystem& eig, const DressedState& ground, const DressedState& lem,
                                  const CouplingSpec& noise);

/// Defaults: time_step = 0.01 / A_typ, 200 trajectories, total_time =
/// 20 / predicted_decoherence_rate capped at kMaxSteps steps.
TrajectoryConfig default_trajectory_config(const ClusterParams& params, const EigenSystem& eig,
                                           const CouplingSpec& noise, std::uint64_t seed,
                                           std::optional<std::pair<SpinConfiguration, SpinConfiguration>> anchors =
                                               std::nullopt);

/// Resolves the logical pair: explicit anchors, or global minimum + primary LEM.
std::pair<SpinConfiguration, SpinConfiguration> resolve_anchors(
    const ClusterParams& params, const std::optional<std::pair<SpinConfiguration, SpinConfiguration>>& anchors);

CoherenceTrace evolve_superposition(const ClusterParams& params, const EigenSystem& eig,
                                    const TrajectoryConfig& config);

/// R0: fitted decoherence rate per unit of rate_ratio, taken from one
/// reference point.
struct Calibration {
  double rate_per_ratio = 0.0;
};

/// Throws kNumerical when the reference trace is not a usable fit.
Calibration calibrate(const CoherenceTrace& reference, const RateReport& reference_report);

enum class Consistency { kConsistent, kInconsistent, kInconclusive };

struct RateComparison {
  double fitted_rate = 0.0;
  double predicted_rate = 0.0;
  double ratio = 0.0;  ///< fitted / predicted; 1 when both vanish
  Consistency verdict = Consistency::kInconclusive;
};

inline constexpr double kConsistencyFactor = 3.0;
inline constexpr double kMinFitQuality = 0.9;

RateComparison rate_vs_prediction(const CoherenceTrace& trace, const RateReport& report,
                                  const Calibration& calibration);

/// Worker threads for trajectory batches: LEMTRAP_WORKERS if set, else the
/// hardware concurrency.
unsigned worker_count();

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace lemtrap
