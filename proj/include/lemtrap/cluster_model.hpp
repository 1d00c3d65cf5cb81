// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cluster_model.hpp
 * @brief Pseudo-spin cluster parameters, number-state basis and the dense
 *        Hamiltonian  H = sum_{i<j} J_ij sz_i sz_j + sum_i B_i sz_i + sum_i C_i sx_i.
 *
 * Conventions:
 * - Basis index X is the configuration read as an unsigned integer; bit i is
 *   spin i. Index 0 is |00...0>.
 * - Bit value 1 <-> sz eigenvalue +1, bit value 0 <-> -1.
 * - Pair couplings are summed once per unordered pair (i<j). Coefficients A_ij
 *   of a double sum over i != j correspond to J_ij = 2 A_ij.
 * - Text form of a configuration lists spin 0 first: "100" has bit 0 set.
 */

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lemtrap {

/// Dense storage budget: 2^14 x 2^14 doubles.
inline constexpr int kMaxSpins = 14;

class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  SpinConfiguration(int width, std::uint32_t bits);

  /// Parses "0101" (spin 0 first). Throws kValidation on bad characters.
  static SpinConfiguration parse(std::string_view text);

  int width() const noexcept { return width_; }
  std::uint32_t bits() const noexcept { return bits_; }
  std::size_t index() const noexcept { return bits_; }
  bool bit(int i) const noexcept { return (bits_ >> i) & 1U; }

  std::string to_string() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  int width_ = 0;
  std::uint32_t bits_ = 0;
};

/// Result of sz_i acting on a number state: the state is unchanged, only a sign.
struct SignedConfiguration {
  int sign;
  SpinConfiguration config;
};

class ClusterParams {
 public:
  /// Validates: n in [1, kMaxSpins], J square symmetric with zero diagonal,
  /// |B| = |C| = n, every entry finite.
  ClusterParams(Eigen::MatrixXd coupling, Eigen::VectorXd bias, Eigen::VectorXd tunneling);

  /// Fully connected cluster with J_ij = coupling for every pair and
  /// broadcast scalar bias / tunneling.
  static ClusterParams uniform(int n, double coupling, double bias, double tunneling);

  int n() const noexcept { return static_cast<int>(bias_.size()); }
  std::size_t dim() const noexcept { return std::size_t{1} << n(); }

  const Eigen::MatrixXd& coupling() const noexcept { return coupling_; }
  const Eigen::VectorXd& bias() const noexcept { return bias_; }
  const Eigen::VectorXd& tunneling() const noexcept { return tunneling_; }

  /// Same J and B, new tunneling vector (length n).
  ClusterParams with_tunneling(Eigen::VectorXd tunneling) const;

  friend bool operator==(const ClusterParams& a, const ClusterParams& b) {
    return a.coupling_ == b.coupling_ && a.bias_ == b.bias_ && a.tunneling_ == b.tunneling_;
  }

 private:
  Eigen::MatrixXd coupling_;
  Eigen::VectorXd bias_;
  Eigen::VectorXd tunneling_;
};

struct HamiltonianMatrix {
  int n = 0;
  Eigen::MatrixXd entries;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

double classical_energy(const ClusterParams& params, const SpinConfiguration& config);

/// All 2^n diagonal energies, indexed by basis index. Uses the active
/// SIMD kernel table.
std::vector<double> classical_energies(const ClusterParams& params);

int hamming_distance(const SpinConfiguration& x, const SpinConfiguration& y);

SignedConfiguration apply_sigma_z(int i, const SpinConfiguration& config);
SpinConfiguration apply_sigma_x(int i, const SpinConfiguration& config);

HamiltonianMatrix build_hamiltonian(const ClusterParams& params);

}  // namespace lemtrap
