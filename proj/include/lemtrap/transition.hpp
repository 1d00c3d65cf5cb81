// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file transition.hpp
 * @brief Golden-rule matrix element between the dressed ground state and the
 *        dressed metastable state under the noise coupling
 *        H'(t) = sum_i f_i xi_i(t) sz_i + sum_i g_i eta_i(t) sx_i,
 *        and the size-scaling bound on the resulting rate.
 */

#pragma once

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/spectrum.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace lemtrap {

enum class NoiseKind {
  kWhite,              ///< <xi(t) xi(t')> = delta(t - t')
  kOrnsteinUhlenbeck,  ///< <xi(t) xi(t')> = exp(-|t - t'| / tau)
};

/// Noise amplitudes per spin and the statistics of the unit-variance
/// processes that multiply them.
class CouplingSpec {
 public:
  /// f: sz channel amplitudes, g: sx channel amplitudes. Both length n,
  /// finite, non-negative. correlation_time is ignored for white noise and
  /// must be positive otherwise.
  CouplingSpec(Eigen::VectorXd f, Eigen::VectorXd g, NoiseKind kind = NoiseKind::kOrnsteinUhlenbeck,
               double correlation_time = 1.0);

  static CouplingSpec uniform(int n, double f, double g, NoiseKind kind = NoiseKind::kOrnsteinUhlenbeck,
                              double correlation_time = 1.0);

  int n() const noexcept { return static_cast<int>(f_.size()); }
  const Eigen::VectorXd& f() const noexcept { return f_; }
  const Eigen::VectorXd& g() const noexcept { return g_; }
  NoiseKind kind() const noexcept { return kind_; }
  double correlation_time() const noexcept { return correlation_time_; }

  /// max(max_i f_i, max_i g_i).
  double scale() const noexcept;
  bool silent() const noexcept { return scale() == 0.0; }

  /// Power spectral density of one unit-variance noise process,
  /// S(w) = integral <xi(t) xi(0)> e^{iwt} dt.
  double spectral_density(double omega) const noexcept;

  CouplingSpec scaled(double f_factor, double g_factor) const;

  friend bool operator==(const CouplingSpec& a, const CouplingSpec& b) {
    return a.f_ == b.f_ && a.g_ == b.g_ && a.kind_ == b.kind_ &&
           a.correlation_time_ == b.correlation_time_;
  }

 private:
  Eigen::VectorXd f_;
  Eigen::VectorXd g_;
  NoiseKind kind_;
  double correlation_time_;
};

struct ChannelContribution {
  int spin = 0;
  double sigma_z = 0.0;  ///< f_i <ground| sz_i |lem>
  double sigma_x = 0.0;  ///< g_i <ground| sx_i |lem>
};

struct RateReport {
  SpinConfiguration ground_anchor;
  SpinConfiguration lem_anchor;
  double matrix_element = 0.0;  ///< <ground|H'|lem> for a unit noise snapshot, energy units
  double coupling_scale = 0.0;  ///< CouplingSpec::scale()
  double rate_ratio = 0.0;      ///< (matrix_element / coupling_scale)^2, the R/R0 proxy
  std::vector<ChannelContribution> channels;
};

struct BoundVerdict {
  double typical_spacing = 0.0;  ///< A_typ used
  double ratio = 0.0;            ///< max(C_typ, g_typ) / A_typ
  double bound = 0.0;            ///< ratio^n
  bool satisfied = false;        ///< rate_ratio <= bound * safety_factor
  double margin = 0.0;           ///< log10(bound / rate_ratio); +inf when rate_ratio == 0
};

inline constexpr double kBoundSafetyFactor = 1e2;

RateReport matrix_element(const DressedState& ground, const DressedState& lem, const CouplingSpec& coupling);

/// A_typ defaults to typical_level_spacing at the report's ground anchor.
BoundVerdict check_bound(const RateReport& report, const ClusterParams& params, const CouplingSpec& coupling,
                         std::optional<double> typical_spacing = std::nullopt);

/// Orders of magnitude gained in lifetime, n * log10(1 / ratio); ratio in (0, 1).
double lifetime_extension(int n, double ratio);

}  // namespace lemtrap
