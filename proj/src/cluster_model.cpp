// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/cluster_model.hpp"

#include "lemtrap/error.hpp"
#include "lemtrap/kernels.hpp"

#include <bit>
#include <cmath>

namespace lemtrap {

namespace {

void check_width(int width, const char* where) {
  if (width < 1 || width > 32) {
    throw Error(ErrorKind::kDimension, where, "bit width must be in [1, 32], got " + std::to_string(width));
  }
}

void check_spin_index(int i, int n, const char* where) {
  if (i < 0 || i >= n) {
    throw Error(ErrorKind::kDomain, where,
                "spin index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

SpinConfiguration::SpinConfiguration(int width, std::uint32_t bits) : width_(width), bits_(bits) {
  check_width(width, "cluster_model.SpinConfiguration");
  if (width < 32 && (bits >> width) != 0) {
    throw Error(ErrorKind::kDimension, "cluster_model.SpinConfiguration",
                "bits set above width " + std::to_string(width));
  }
}

SpinConfiguration SpinConfiguration::parse(std::string_view text) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint32_t{1} << i;
    } else if (text[i] != '0') {
      throw Error(ErrorKind::kValidation, "cluster_model.SpinConfiguration",
                  "configuration must be a string of 0/1, got '" + std::string(text) + "'");
    }
  }
  return SpinConfiguration(static_cast<int>(text.size()), bits);
}

std::string SpinConfiguration::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i) {
    if (bit(i)) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

ClusterParams::ClusterParams(Eigen::MatrixXd coupling, Eigen::VectorXd bias, Eigen::VectorXd tunneling)
    : coupling_(std::move(coupling)), bias_(std::move(bias)), tunneling_(std::move(tunneling)) {
  constexpr const char* where = "cluster_model.ClusterParams";
  const auto n = bias_.size();
  if (n < 1) throw Error(ErrorKind::kDimension, where, "n must be at least 1");
  if (n > kMaxSpins) {
    throw Error(ErrorKind::kCapacity, where,
                "n=" + std::to_string(n) + " exceeds the dense budget of " + std::to_string(kMaxSpins));
  }
  if (tunneling_.size() != n) {
    throw Error(ErrorKind::kDimension, where,
                "C has length " + std::to_string(tunneling_.size()) + ", expected " + std::to_string(n));
  }
  if (coupling_.rows() != n || coupling_.cols() != n) {
    throw Error(ErrorKind::kDimension, where, "J must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!coupling_.allFinite() || !bias_.allFinite() || !tunneling_.allFinite()) {
    throw Error(ErrorKind::kValidation, where, "all parameters must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (coupling_(i, i) != 0.0) throw Error(ErrorKind::kValidation, where, "J must have zero diagonal");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (coupling_(i, j) != coupling_(j, i)) {
        throw Error(ErrorKind::kValidation, where,
                    "J is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

ClusterParams ClusterParams::uniform(int n, double coupling, double bias, double tunneling) {
  if (n < 1) throw Error(ErrorKind::kDimension, "cluster_model.ClusterParams", "n must be at least 1");
  if (n > kMaxSpins) {
    throw Error(ErrorKind::kCapacity, "cluster_model.ClusterParams",
                "n=" + std::to_string(n) + " exceeds the dense budget of " + std::to_string(kMaxSpins));
  }
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, coupling);
  j.diagonal().setZero();
  return ClusterParams(std::move(j), Eigen::VectorXd::Constant(n, bias), Eigen::VectorXd::Constant(n, tunneling));
}

ClusterParams ClusterParams::with_tunneling(Eigen::VectorXd tunneling) const {
  return ClusterParams(coupling_, bias_, std::move(tunneling));
}

double classical_energy(const ClusterParams& params, const SpinConfiguration& config) {
  const int n = params.n();
  if (config.width() != n) {
    throw Error(ErrorKind::kDimension, "cluster_model.classical_energy",
                "configuration width " + std::to_string(config.width()) + " != n=" + std::to_string(n));
  }
  auto spin = [&](int i) { return config.bit(i) ? 1.0 : -1.0; };
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) energy += params.coupling()(i, j) * spin(i) * spin(j);
  }
  for (int i = 0; i < n; ++i) energy += params.bias()(i) * spin(i);
  return energy;
}

std::vector<double> classical_energies(const ClusterParams& params) {
  const int n = params.n();
  std::vector<double> energies(params.dim(), 0.0);
  const auto& kernels = kernels::active();
  // Same term order as classical_energy: pairs first, then biases.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double c = params.coupling()(i, j);
      if (c != 0.0) kernels.accumulate_parity(energies, c, (1U << i) | (1U << j));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (params.bias()(i) != 0.0) kernels.accumulate_parity(energies, params.bias()(i), 1U << i);
  }
  return energies;
}

int hamming_distance(const SpinConfiguration& x, const SpinConfiguration& y) {
  if (x.width() != y.width()) {
    throw Error(ErrorKind::kDimension, "cluster_model.hamming_distance",
                "widths differ: " + std::to_string(x.width()) + " vs " + std::to_string(y.width()));
  }
  return std::popcount(x.bits() ^ y.bits());
}

SignedConfiguration apply_sigma_z(int i, const SpinConfiguration& config) {
  check_spin_index(i, config.width(), "cluster_model.apply_sigma_z");
  return {config.bit(i) ? 1 : -1, config};
}

SpinConfiguration apply_sigma_x(int i, const SpinConfiguration& config) {
  check_spin_index(i, config.width(), "cluster_model.apply_sigma_x");
  return SpinConfiguration(config.width(), config.bits() ^ (std::uint32_t{1} << i));
}

HamiltonianMatrix build_hamiltonian(const ClusterParams& params) {
  const int n = params.n();
  if (n > kMaxSpins) {
    throw Error(ErrorKind::kCapacity, "cluster_model.build_hamiltonian", "n exceeds the dense budget");
  }
  const auto dim = static_cast<Eigen::Index>(params.dim());
  HamiltonianMatrix h{n, Eigen::MatrixXd::Zero(dim, dim)};
  const std::vector<double> diagonal = classical_energies(params);
  for (Eigen::Index x = 0; x < dim; ++x) {
    h.entries(x, x) = diagonal[static_cast<std::size_t>(x)];
    for (int i = 0; i < n; ++i) {
      h.entries(x, x ^ (Eigen::Index{1} << i)) = params.tunneling()(i);
    }
  }
  return h;
}

}  // namespace lemtrap
