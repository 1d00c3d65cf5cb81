// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/cluster_model.hpp"
#include "lemtrap/error.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace lemtrap;

namespace {

ClusterParams pair_params(double j12, double c = 0.0) {
  Eigen::MatrixXd j(2, 2);
  j << 0, j12, j12, 0;
  return ClusterParams(j, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Constant(2, c));
}

SpinConfiguration cfg(const char* s) { return SpinConfiguration::parse(s); }

}  // namespace

TEST_CASE("string form lists spin 0 first", "[cluster_model]") {
  const SpinConfiguration x = cfg("100");
  CHECK(x.width() == 3);
  CHECK(x.bits() == 1U);
  CHECK(x.bit(0));
  CHECK_FALSE(x.bit(2));
  CHECK(x.to_string() == "100");
  CHECK(SpinConfiguration(4, 0b0110).to_string() == "0110");
  CHECK_THROWS_AS(SpinConfiguration::parse("10a"), Error);
  CHECK_THROWS_AS(SpinConfiguration::parse(""), Error);
}

TEST_CASE("classical energies of small clusters", "[cluster_model]") {
  CHECK(classical_energy(pair_params(-1), cfg("11")) == -1.0);
  CHECK(classical_energy(pair_params(-1), cfg("01")) == 1.0);
  const ClusterParams ferro = ClusterParams::uniform(3, -1.0, 0.1, 0.0);
  CHECK(classical_energy(ferro, cfg("111")) == Catch::Approx(-2.7).epsilon(1e-15));
  for (std::uint32_t x = 0; x < 8; ++x) {
    CHECK(classical_energy(ferro, SpinConfiguration(3, x)) == Catch::Approx(oracle::energy(ferro, x)).epsilon(1e-15));
  }
}

TEST_CASE("classical energy rejects a width mismatch", "[cluster_model]") {
  const ClusterParams ferro = ClusterParams::uniform(3, -1.0, 0.1, 0.0);
  try {
    classical_energy(ferro, cfg("11"));
    FAIL("expected a dimension error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDimension);
  }
}

TEST_CASE("cluster parameters are validated", "[cluster_model]") {
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0.5, 0;
  CHECK_THROWS_AS(ClusterParams(asym, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)), Error);
  Eigen::MatrixXd diag(2, 2);
  diag << 1, 0, 0, 0;
  CHECK_THROWS_AS(ClusterParams(diag, Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)), Error);
  CHECK_THROWS_AS(ClusterParams(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2)),
                  Error);
  try {
    ClusterParams::uniform(15, -1.0, 0.0, 0.0);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCapacity);
  }
}

TEST_CASE("hamming distance", "[cluster_model]") {
  CHECK(hamming_distance(cfg("0000"), cfg("1111")) == 4);
  CHECK(hamming_distance(cfg("0101"), cfg("0101")) == 0);
  CHECK(hamming_distance(cfg("0101"), cfg("0110")) == 2);
  CHECK_THROWS_AS(hamming_distance(cfg("01"), cfg("011")), Error);
}

TEST_CASE("hamming distance is a metric", "[cluster_model][property]") {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.integer(1, 14);
    const SpinConfiguration x(n, rng.bits(n));
    const SpinConfiguration y(n, rng.bits(n));
    const SpinConfiguration z(n, rng.bits(n));
    CHECK(hamming_distance(x, y) == hamming_distance(y, x));
    CHECK(hamming_distance(x, z) <= hamming_distance(x, y) + hamming_distance(y, z));
    CHECK(hamming_distance(x, y) == oracle::popcount(x.bits() ^ y.bits()));
  }
}

TEST_CASE("pauli actions on number states", "[cluster_model]") {
  const SignedConfiguration up = apply_sigma_z(0, cfg("100"));
  CHECK(up.sign == 1);
  CHECK(up.config == cfg("100"));
  CHECK(apply_sigma_z(1, cfg("100")).sign == -1);
  CHECK(apply_sigma_x(0, cfg("000")) == cfg("100"));
  CHECK(apply_sigma_x(2, cfg("111")) == cfg("110"));
  CHECK_THROWS_AS(apply_sigma_x(3, cfg("111")), Error);
  CHECK_THROWS_AS(apply_sigma_z(-1, cfg("111")), Error);

  oracle::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(1, 10);
    const SpinConfiguration x(n, rng.bits(n));
    const int i = rng.integer(0, n - 1);
    CHECK(apply_sigma_x(i, apply_sigma_x(i, x)) == x);
    CHECK(hamming_distance(x, apply_sigma_x(i, x)) == 1);
    const SignedConfiguration once = apply_sigma_z(i, x);
    CHECK(once.sign * apply_sigma_z(i, once.config).sign == 1);
  }
}

TEST_CASE("hamiltonian of one and two spins", "[cluster_model]") {
  const ClusterParams one(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, 0.3),
                          Eigen::VectorXd::Constant(1, 0.2));
  Eigen::MatrixXd expected(2, 2);
  // Index 0 is s = -1, so the bias enters as -b there.
  expected << -0.3, 0.2, 0.2, 0.3;
  CHECK(build_hamiltonian(one).entries == expected);

  const HamiltonianMatrix h = build_hamiltonian(pair_params(-1.0, 0.25));
  CHECK(h.entries.diagonal() == Eigen::Vector4d(-1, 1, 1, -1));
  Eigen::Matrix4d off;
  off << 0, 0.25, 0.25, 0, 0.25, 0, 0, 0.25, 0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0;
  CHECK(Eigen::MatrixXd(h.entries - Eigen::MatrixXd(h.entries.diagonal().asDiagonal())) == Eigen::MatrixXd(off));
}

TEST_CASE("hamiltonian matches a kronecker-product construction", "[cluster_model][property]") {
  oracle::Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(1, 6);
    const ClusterParams p = oracle::random_params(rng, n, 1.0, 0.4, 0.3);
    const HamiltonianMatrix h = build_hamiltonian(p);
    const Eigen::MatrixXd reference = oracle::hamiltonian_by_kron(p);
    CHECK((h.entries - reference).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(h.entries == h.entries.transpose());

    int nonzero_off_diagonal = 0;
    for (Eigen::Index r = 0; r < h.entries.rows(); ++r) {
      CHECK(h.entries(r, r) == classical_energy(p, SpinConfiguration(n, static_cast<std::uint32_t>(r))));
      double row_sum = 0.0;
      for (Eigen::Index c = 0; c < h.entries.cols(); ++c) {
        if (r == c) continue;
        if (h.entries(r, c) != 0.0) ++nonzero_off_diagonal;
        if (oracle::popcount(static_cast<std::uint32_t>(r ^ c)) >= 2) CHECK(h.entries(r, c) == 0.0);
        row_sum += std::abs(h.entries(r, c));
      }
      CHECK(row_sum == Catch::Approx(p.tunneling().cwiseAbs().sum()).epsilon(1e-14));
    }
    CHECK(nonzero_off_diagonal == n * (1 << n));
  }
}

TEST_CASE("global spin flip with negated bias preserves energies", "[cluster_model][property]") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(1, 8);
    const ClusterParams p = oracle::random_params(rng, n);
    const ClusterParams flipped(p.coupling(), -p.bias(), p.tunneling());
    const std::uint32_t all = (1U << n) - 1U;
    std::vector<double> a = classical_energies(p);
    std::vector<double> b = classical_energies(flipped);
    for (std::uint32_t x = 0; x <= all; ++x) {
      CHECK(classical_energy(p, SpinConfiguration(n, x)) ==
            Catch::Approx(classical_energy(flipped, SpinConfiguration(n, x ^ all))).margin(1e-13));
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == Catch::Approx(b[k]).margin(1e-12));
  }
}

TEST_CASE("bulk energies agree with the definition", "[cluster_model][property]") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(1, 10);
    const ClusterParams p = oracle::random_params(rng, n);
    const std::vector<double> e = classical_energies(p);
    REQUIRE(e.size() == p.dim());
    for (std::uint32_t x = 0; x < e.size(); ++x) CHECK(e[x] == Catch::Approx(oracle::energy(p, x)).margin(1e-12));
  }
}
