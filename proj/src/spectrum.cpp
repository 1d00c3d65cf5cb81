// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/spectrum.hpp"

#include "lemtrap/error.hpp"
#include "lemtrap/fit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace lemtrap {

int EigenSystem::n() const noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(dim()));
}

std::optional<LocalMinimum> LandscapeReport::primary_lem() const {
  std::optional<LocalMinimum> best;
  for (const auto& m : local_minima) {
    if (!best || m.distance_to_global > best->distance_to_global ||
        (m.distance_to_global == best->distance_to_global && m.energy < best->energy)) {
      best = m;
    }
  }
  return best;
}

EigenSystem diagonalize(const HamiltonianMatrix& h) {
  constexpr const char* where = "spectrum.diagonalize";
  const Eigen::MatrixXd& m = h.entries;
  if (m.rows() != m.cols()) throw Error(ErrorKind::kValidation, where, "matrix is not square");
  if (m.rows() == 0) throw Error(ErrorKind::kValidation, where, "matrix is empty");
  if (m.rows() > (Eigen::Index{1} << kMaxSpins)) {
    throw Error(ErrorKind::kCapacity, where, "dimension exceeds 2^" + std::to_string(kMaxSpins));
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (max |H - H^T| = " << asymmetry << ")";
    throw Error(ErrorKind::kValidation, where, msg.str());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigensolver did not converge (dim=" << m.rows() << ", max |H|=" << scale << ")";
    throw Error(ErrorKind::kNumerical, where, msg.str());
  }

  EigenSystem eig{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < eig.vectors.cols(); ++k) {
    Eigen::Index pivot = 0;
    eig.vectors.col(k).cwiseAbs().maxCoeff(&pivot);
    if (eig.vectors(pivot, k) < 0.0) eig.vectors.col(k) *= -1.0;
  }
  return eig;
}

double default_degeneracy_tolerance(const std::vector<double>& energies) {
  const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
  return 1e-9 * (*hi - *lo);
}

LandscapeReport find_local_minima(const ClusterParams& params, double tolerance) {
  const int n = params.n();
  const std::vector<double> energies = classical_energies(params);
  const double eps = tolerance < 0.0 ? default_degeneracy_tolerance(energies) : tolerance;

  const auto global_it = std::min_element(energies.begin(), energies.end());
  const auto global_index = static_cast<std::uint32_t>(global_it - energies.begin());

  LandscapeReport report;
  report.global_minimum = SpinConfiguration(n, global_index);
  report.global_energy = *global_it;
  report.tolerance = eps;

  std::vector<double> minima_energies{report.global_energy};
  for (std::uint32_t x = 0; x < energies.size(); ++x) {
    if (x == global_index) continue;
    bool strict = true;
    for (int i = 0; i < n && strict; ++i) {
      strict = energies[x ^ (1U << i)] - energies[x] > eps;
    }
    if (!strict) continue;
    const SpinConfiguration config(n, x);
    report.local_minima.push_back({config, energies[x], hamming_distance(config, report.global_minimum)});
    minima_energies.push_back(energies[x]);
  }

  std::sort(minima_energies.begin(), minima_energies.end());
  for (std::size_t k = 1; k < minima_energies.size(); ++k) {
    if (minima_energies[k] - minima_energies[k - 1] <= eps) report.degenerate = true;
  }
  return report;
}

DressedState dress(const EigenSystem& eig, const SpinConfiguration& anchor) {
  constexpr const char* where = "spectrum.dress";
  if (eig.dim() == 0) throw Error(ErrorKind::kValidation, where, "empty eigensystem");
  if (anchor.width() != eig.n()) {
    throw Error(ErrorKind::kDimension, where,
                "anchor width " + std::to_string(anchor.width()) + " != n=" + std::to_string(eig.n()));
  }
  const auto row = static_cast<Eigen::Index>(anchor.index());
  Eigen::Index best = 0;
  eig.vectors.row(row).cwiseAbs2().maxCoeff(&best);

  DressedState state;
  state.anchor = anchor;
  state.eigenindex = static_cast<int>(best);
  state.eigenvalue = eig.values(best);
  state.amplitudes = eig.vectors.col(best);
  if (state.amplitudes(row) < 0.0) state.amplitudes *= -1.0;
  state.overlap2 = state.amplitudes(row) * state.amplitudes(row);
  if (state.overlap2 < kPerturbativeOverlap) {
    std::ostringstream msg;
    msg << "anchor " << anchor.to_string() << " has maximal overlap^2 " << state.overlap2
        << " < " << kPerturbativeOverlap << "; the state is strongly mixed";
    throw Error(ErrorKind::kStrongMixing, where, msg.str());
  }
  return state;
}

OverlapDecay overlap_decay(const DressedState& state) {
  const int n = state.anchor.width();
  OverlapDecay decay;
  decay.points.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) decay.points[static_cast<std::size_t>(k - 1)].distance = k;

  for (Eigen::Index z = 0; z < state.amplitudes.size(); ++z) {
    const int k = std::popcount(static_cast<std::uint32_t>(z) ^ state.anchor.bits());
    if (k == 0) continue;
    auto& point = decay.points[static_cast<std::size_t>(k - 1)];
    point.max_amplitude = std::max(point.max_amplitude, std::abs(state.amplitudes(z)));
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (auto& point : decay.points) {
    if (point.max_amplitude < kAmplitudeFloor) {
      point.clamped = true;
      point.max_amplitude = std::max(point.max_amplitude, 0.0);
      continue;
    }
    xs.push_back(point.distance);
    ys.push_back(std::log10(point.max_amplitude));
  }
  if (xs.size() >= 2) {
    const LineFit fit = fit_line(xs, ys);
    decay.slope = fit.slope;
    decay.intercept = fit.intercept;
  }
  return decay;
}

double typical_level_spacing(const ClusterParams& params, const SpinConfiguration& anchor, double tolerance) {
  constexpr const char* where = "spectrum.typical_level_spacing";
  const int n = params.n();
  if (anchor.width() != n) {
    throw Error(ErrorKind::kDimension, where,
                "anchor width " + std::to_string(anchor.width()) + " != n=" + std::to_string(n));
  }
  double eps = tolerance;
  if (eps < 0.0) eps = default_degeneracy_tolerance(classical_energies(params));

  const double e0 = classical_energy(params, anchor);
  double log_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double gap = std::abs(classical_energy(params, apply_sigma_x(i, anchor)) - e0);
    if (gap <= eps) {
      throw Error(ErrorKind::kDegeneracy, where,
                  "single-flip gap of spin " + std::to_string(i) + " at " + anchor.to_string() + " vanishes");
    }
    log_sum += std::log(gap);
  }
  return std::exp(log_sum / n);
}

}  // namespace lemtrap
