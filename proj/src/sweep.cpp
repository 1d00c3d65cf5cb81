// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/sweep.hpp"

#include "lemtrap/dynamics.hpp"
#include "lemtrap/fit.hpp"
#include "lemtrap/perturbation.hpp"
#include "lemtrap/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace lemtrap {

namespace {

ClusterParams classical_params(const SweepGrid& grid, int n) {
  if (const auto* uniform = std::get_if<UniformFamily>(&grid.family)) {
    return ClusterParams::uniform(n, uniform->coupling, uniform->bias, 0.0);
  }
  return std::get<ExplicitFamily>(grid.family).base.with_tunneling(Eigen::VectorXd::Zero(n));
}

void validate(const SweepGrid& grid) {
  constexpr const char* where = "sweep.run_sweep";
  if (grid.n_values.empty() || grid.ratio_values.empty()) {
    throw Error(ErrorKind::kValidation, where, "grid needs at least one n and one ratio");
  }
  for (double r : grid.ratio_values) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::kValidation, where, "ratios must lie in (0, 1)");
  }
  const bool small_channels = grid.channels.pathsum || grid.channels.dynamics;
  for (int n : grid.n_values) {
    if (n < 1) throw Error(ErrorKind::kValidation, where, "n must be positive");
    if (n > kMaxSpins) throw Error(ErrorKind::kCapacity, where, "n=" + std::to_string(n) + " exceeds 14");
    if (small_channels && n > kMaxDynamicsSpins) {
      throw Error(ErrorKind::kCapacity, where,
                  "n=" + std::to_string(n) + " exceeds 8, the limit for path sums and trajectories");
    }
    if (const auto* fixed = std::get_if<ExplicitFamily>(&grid.family); fixed && fixed->base.n() != n) {
      throw Error(ErrorKind::kValidation, where, "explicit family has n=" + std::to_string(fixed->base.n()));
    }
  }
  if (grid.channels.dynamics && (grid.dynamics.trajectory_count < 1 || grid.dynamics.sample_count < 2 ||
                                 !(grid.dynamics.correlation_time_units > 0.0))) {
    throw Error(ErrorKind::kValidation, where, "invalid dynamics settings");
  }
}

template <typename Fn>
void guarded(SweepRow& row, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (!row.error) {
      row.error = e.kind();
      row.error_detail = e.what();
    }
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepGrid& grid) {
  validate(grid);
  std::vector<SweepRow> rows;
  rows.reserve(grid.n_values.size() * grid.ratio_values.size());

  for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
    for (std::size_t ri = 0; ri < grid.ratio_values.size(); ++ri) {
      SweepRow& row = rows.emplace_back();
      row.n = grid.n_values[ni];
      row.ratio = grid.ratio_values[ri];
      row.seed = derive_seed(grid.seed, (static_cast<std::uint64_t>(ni) << 32) | ri);

      guarded(row, [&] {
        const int n = row.n;
        const ClusterParams classical = classical_params(grid, n);
        const LandscapeReport landscape = find_local_minima(classical);
        const SpinConfiguration ground_anchor = landscape.global_minimum;
        row.typical_spacing = typical_level_spacing(classical, ground_anchor);

        const auto& ch = grid.channels;
        if (!(ch.overlaps || ch.rates || ch.pathsum || ch.dynamics)) return;

        const double strength = row.ratio * row.typical_spacing;
        const ClusterParams params = classical.with_tunneling(Eigen::VectorXd::Constant(n, strength));
        const CouplingSpec coupling = CouplingSpec::uniform(
            n, strength, strength, grid.dynamics.kind, grid.dynamics.correlation_time_units / row.typical_spacing);
        const auto lem = landscape.primary_lem();

        std::optional<EigenSystem> eig;
        if (ch.overlaps || ch.rates || ch.dynamics) eig = diagonalize(build_hamiltonian(params));

        if (ch.rates) {
          guarded(row, [&] {
            if (!lem) throw Error(ErrorKind::kDomain, "sweep.run_sweep", "no local energy minimum");
            const RateReport report = matrix_element(dress(*eig, ground_anchor), dress(*eig, lem->config), coupling);
            const BoundVerdict verdict = check_bound(report, params, coupling, row.typical_spacing);
            row.matrix_element = report.matrix_element;
            row.rate_ratio = report.rate_ratio;
            row.eq4_bound = verdict.bound;
            row.bound_margin = verdict.margin;
          });
        }
        if (ch.overlaps) {
          guarded(row, [&] {
            const OverlapDecay decay = overlap_decay(dress(*eig, ground_anchor));
            if (!decay.slope) throw Error(ErrorKind::kInsufficientData, "sweep.run_sweep", "no overlap slope");
            row.overlap_slope = decay.slope;
          });
        }
        if (ch.pathsum) {
          guarded(row, [&] {
            if (!lem) throw Error(ErrorKind::kDomain, "sweep.run_sweep", "no local energy minimum");
            std::vector<std::pair<int, double>> amplitudes;
            std::uint32_t bits = ground_anchor.bits();
            const std::uint32_t differing = ground_anchor.bits() ^ lem->config.bits();
            for (int i = 0; i < n; ++i) {
              if (!((differing >> i) & 1U)) continue;
              bits ^= 1U << i;
              const PathSumResult path =
                  multiphoton_path_sum(params, coupling, ground_anchor, SpinConfiguration(n, bits));
              amplitudes.emplace_back(path.order, path.amplitude);
            }
            row.pathsum_slope = scaling_exponent(amplitudes);
          });
        }
        if (ch.dynamics) {
          guarded(row, [&] {
            TrajectoryConfig config = default_trajectory_config(params, *eig, coupling, row.seed);
            config.trajectory_count = grid.dynamics.trajectory_count;
            config.sample_count = grid.dynamics.sample_count;
            row.fitted_dynamics_rate = evolve_superposition(params, *eig, config).fitted_rate;
          });
        }
      });
    }
  }
  return rows;
}

SizeScalingFit fit_size_scaling(const std::vector<SweepRow>& rows, const std::string& column) {
  constexpr const char* where = "sweep.fit_size_scaling";
  auto pick = [&](const SweepRow& row) -> std::optional<double> {
    if (column == "matrix_element") return row.matrix_element;
    if (column == "rate_ratio") return row.rate_ratio;
    if (column == "eq4_bound") return row.eq4_bound;
    if (column == "fitted_dynamics_rate") return row.fitted_dynamics_rate;
    throw Error(ErrorKind::kValidation, where, "column '" + column + "' cannot be fitted");
  };

  SizeScalingFit out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows) {
    const auto value = pick(row);
    if (!value || !std::isfinite(*value) || std::abs(*value) < 1e-300) {
      ++out.excluded;
      continue;
    }
    xs.push_back(row.n);
    ys.push_back(std::log10(std::abs(*value)));
  }
  std::vector<double> distinct(xs);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (xs.size() < 3 || distinct.size() < 2) {
    throw Error(ErrorKind::kInsufficientData, where,
                "need at least three usable rows spanning distinct n (have " + std::to_string(xs.size()) + ")");
  }
  const LineFit fit = fit_line(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  out.used = static_cast<int>(xs.size());
  return out;
}

}  // namespace lemtrap
