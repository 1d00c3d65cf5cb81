// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/perturbation.hpp"

#include "lemtrap/error.hpp"
#include "lemtrap/fit.hpp"
#include "lemtrap/spectrum.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace lemtrap {

namespace {

void require_width(const ClusterParams& params, const SpinConfiguration& config, const char* where) {
  if (config.width() != params.n()) {
    throw Error(ErrorKind::kDimension, where,
                "configuration width " + std::to_string(config.width()) + " != n=" + std::to_string(params.n()));
  }
}

}  // namespace

double rs_amplitude_first_order(const ClusterParams& params, const SpinConfiguration& anchor,
                                const SpinConfiguration& z, double tolerance) {
  constexpr const char* where = "perturbation.rs_amplitude_first_order";
  require_width(params, anchor, where);
  require_width(params, z, where);
  if (hamming_distance(anchor, z) != 1) {
    throw Error(ErrorKind::kDomain, where, "configurations must differ by exactly one flip");
  }
  const int spin = std::countr_zero(anchor.bits() ^ z.bits());
  const double denominator = classical_energy(params, anchor) - classical_energy(params, z);
  const double eps = tolerance < 0.0 ? default_degeneracy_tolerance(classical_energies(params)) : tolerance;
  if (std::abs(denominator) <= eps) {
    throw Error(ErrorKind::kDegeneracy, where,
                anchor.to_string() + " and " + z.to_string() + " are degenerate");
  }
  return params.tunneling()(spin) / denominator;
}

PathSumResult multiphoton_path_sum(const ClusterParams& params, const CouplingSpec& coupling,
                                   const SpinConfiguration& source, const SpinConfiguration& target,
                                   double tolerance) {
  constexpr const char* where = "perturbation.multiphoton_path_sum";
  require_width(params, source, where);
  require_width(params, target, where);
  if (coupling.n() != params.n()) {
    throw Error(ErrorKind::kDimension, where, "coupling length differs from n");
  }
  if (params.n() > kMaxPathOrder) {
    throw Error(ErrorKind::kCapacity, where,
                "n=" + std::to_string(params.n()) + " exceeds the path budget n <= " + std::to_string(kMaxPathOrder));
  }
  const int order = hamming_distance(source, target);
  if (order < 1) throw Error(ErrorKind::kDomain, where, "source and target coincide");

  std::vector<int> spins;
  for (int i = 0; i < params.n(); ++i) {
    if (source.bit(i) != target.bit(i)) spins.push_back(i);
  }

  const std::vector<double> energies = classical_energies(params);
  const double eps = tolerance < 0.0 ? default_degeneracy_tolerance(energies) : tolerance;
  const double e_source = energies[source.index()];

  // weight[S]: sum over orderings of the flips in S of the path product up to
  // and including the energy denominator of the intermediate state reached.
  const std::uint32_t full = (1U << order) - 1U;
  std::vector<double> weight(std::size_t{1} << order, 0.0);
  weight[0] = 1.0;
  for (std::uint32_t subset = 1; subset <= full; ++subset) {
    std::uint32_t flipped = source.bits();
    double sum = 0.0;
    for (int k = 0; k < order; ++k) {
      if (!((subset >> k) & 1U)) continue;
      flipped ^= 1U << spins[static_cast<std::size_t>(k)];
      sum += weight[subset ^ (1U << k)] * coupling.g()(spins[static_cast<std::size_t>(k)]);
    }
    if (subset != full) {
      const double denominator = e_source - energies[flipped];
      if (std::abs(denominator) <= eps) {
        std::ostringstream msg;
        msg << "intermediate state " << SpinConfiguration(params.n(), flipped).to_string()
            << " on the path " << source.to_string() << " -> " << target.to_string()
            << " (flipping spins";
        for (int k = 0; k < order; ++k) {
          if ((subset >> k) & 1U) msg << ' ' << spins[static_cast<std::size_t>(k)];
        }
        msg << ") is degenerate with the source";
        throw Error(ErrorKind::kDegeneracy, where, msg.str());
      }
      sum /= denominator;
    }
    weight[subset] = sum;
  }

  PathSumResult result;
  result.source = source;
  result.target = target;
  result.order = order;
  result.amplitude = weight[full];
  result.path_count = 1;
  for (int k = 2; k <= order; ++k) result.path_count *= static_cast<std::uint64_t>(k);
  const double g_typ = coupling.g().maxCoeff();
  result.rate_ratio = g_typ > 0.0 ? (result.amplitude / g_typ) * (result.amplitude / g_typ) : 0.0;
  return result;
}

double scaling_exponent(const std::vector<std::pair<int, double>>& amplitudes) {
  constexpr const char* where = "perturbation.scaling_exponent";
  std::set<int> orders;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [d, amplitude] : amplitudes) {
    if (!(std::abs(amplitude) > 0.0) || !std::isfinite(amplitude)) {
      throw Error(ErrorKind::kDomain, where, "amplitude at order " + std::to_string(d) + " is zero or not finite");
    }
    orders.insert(d);
    xs.push_back(d);
    ys.push_back(std::log10(std::abs(amplitude)));
  }
  if (orders.size() < 3) {
    throw Error(ErrorKind::kInsufficientData, where, "need at least three distinct orders");
  }
  return fit_line(xs, ys).slope;
}

}  // namespace lemtrap
