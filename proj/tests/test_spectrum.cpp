// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/spectrum.hpp"
#include "lemtrap/error.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace lemtrap;

namespace {

EigenSystem solve(const ClusterParams& p) { return diagonalize(build_hamiltonian(p)); }

SpinConfiguration cfg(const char* s) { return SpinConfiguration::parse(s); }

ClusterParams single(double b, double c) {
  return ClusterParams(Eigen::MatrixXd::Zero(1, 1), Eigen::VectorXd::Constant(1, b), Eigen::VectorXd::Constant(1, c));
}

ClusterParams pair(double j12, Eigen::Vector2d b, double c) {
  Eigen::MatrixXd j(2, 2);
  j << 0, j12, j12, 0;
  return ClusterParams(j, b, Eigen::VectorXd::Constant(2, c));
}

}  // namespace

TEST_CASE("single spin eigenvalues", "[spectrum]") {
  const EigenSystem eig = solve(single(0.3, 0.4));
  CHECK(eig.values(0) == Catch::Approx(-0.5).margin(1e-14));
  CHECK(eig.values(1) == Catch::Approx(0.5).margin(1e-14));
}

TEST_CASE("two spin spectrum matches jacobi rotations", "[spectrum]") {
  const ClusterParams p = pair(-1.0, Eigen::Vector2d::Zero(), 0.1);
  const EigenSystem eig = solve(p);
  const std::vector<double> reference = oracle::jacobi_eigenvalues(oracle::hamiltonian_by_kron(p));
  for (int k = 0; k < 4; ++k) CHECK(eig.values(k) == Catch::Approx(reference[static_cast<std::size_t>(k)]).margin(1e-12));
  const double split = eig.values(1) - eig.values(0);
  CHECK(split > 0.005);
  CHECK(split < 0.02);
}

TEST_CASE("eigenvectors are orthonormal with small residuals", "[spectrum][property]") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 6);
    const ClusterParams p = oracle::random_params(rng, n, 1.0, 0.3, 0.2);
    const HamiltonianMatrix h = build_hamiltonian(p);
    const EigenSystem eig = diagonalize(h);
    const auto dim = static_cast<Eigen::Index>(eig.dim());
    CHECK((eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd residual = h.entries * eig.vectors - eig.vectors * eig.values.asDiagonal();
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-10);
    for (Eigen::Index k = 1; k < dim; ++k) CHECK(eig.values(k - 1) <= eig.values(k));
    for (Eigen::Index k = 0; k < dim; ++k) {
      Eigen::Index largest = 0;
      eig.vectors.col(k).cwiseAbs().maxCoeff(&largest);
      CHECK(eig.vectors(largest, k) > 0.0);
    }
  }
}

TEST_CASE("diagonalize rejects asymmetric input", "[spectrum]") {
  HamiltonianMatrix h{1, Eigen::MatrixXd(2, 2)};
  h.entries << 0, 1, 0.5, 0;
  try {
    diagonalize(h);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
  }
}

TEST_CASE("without tunneling the spectrum is the classical energy multiset", "[spectrum][property]") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ClusterParams p = oracle::random_params(rng, rng.integer(1, 7));
    std::vector<double> e = classical_energies(p);
    std::sort(e.begin(), e.end());
    const EigenSystem eig = solve(p);
    for (std::size_t k = 0; k < e.size(); ++k) CHECK(eig.values(static_cast<Eigen::Index>(k)) == Catch::Approx(e[k]).margin(1e-12));
  }
}

TEST_CASE("lowest eigenvalue lies below every classical energy", "[spectrum][property]") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const ClusterParams p = oracle::random_params(rng, rng.integer(1, 6), 1.0, 0.3, 0.5);
    const std::vector<double> e = classical_energies(p);
    CHECK(solve(p).values(0) <= *std::min_element(e.begin(), e.end()) + 1e-12);
  }
}

TEST_CASE("landscape of the three spin ferromagnet", "[spectrum]") {
  const LandscapeReport r = find_local_minima(ClusterParams::uniform(3, -1.0, 0.1, 0.0));
  CHECK(r.global_minimum == cfg("000"));
  CHECK(r.global_energy == Catch::Approx(-3.3).epsilon(1e-15));
  REQUIRE(r.local_minima.size() == 1);
  CHECK(r.local_minima[0].config == cfg("111"));
  CHECK(r.local_minima[0].energy == Catch::Approx(-2.7).epsilon(1e-15));
  CHECK(r.local_minima[0].distance_to_global == 3);
  CHECK_FALSE(r.degenerate);
  REQUIRE(r.primary_lem());
  CHECK(r.primary_lem()->config == cfg("111"));
}

TEST_CASE("degenerate and trivial landscapes", "[spectrum]") {
  CHECK(find_local_minima(pair(-1.0, Eigen::Vector2d::Zero(), 0.0)).degenerate);
  const LandscapeReport one = find_local_minima(single(0.5, 0.0));
  CHECK(one.global_minimum == cfg("0"));
  CHECK(one.local_minima.empty());
  CHECK_FALSE(one.primary_lem());
}

TEST_CASE("landscape matches exhaustive single-flip enumeration", "[spectrum][property]") {
  oracle::Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 6);
    const ClusterParams p = oracle::random_params(rng, n);
    const oracle::Minima expected = oracle::minima_by_enumeration(p);
    const LandscapeReport got = find_local_minima(p);
    CHECK(got.global_minimum.bits() == expected.global);
    std::vector<std::uint32_t> bits;
    for (const auto& m : got.local_minima) {
      bits.push_back(m.config.bits());
      CHECK(m.distance_to_global == oracle::popcount(m.config.bits() ^ expected.global));
    }
    CHECK(bits == expected.local);
  }
}

TEST_CASE("dressing without tunneling is a delta", "[spectrum]") {
  const ClusterParams p = ClusterParams::uniform(3, -1.0, 0.1, 0.0);
  const DressedState d = dress(solve(p), cfg("111"));
  CHECK(d.overlap2 == Catch::Approx(1.0).margin(1e-15));
  CHECK(d.amplitudes(7) == Catch::Approx(1.0).margin(1e-15));
  CHECK(d.amplitudes.cwiseAbs().sum() == Catch::Approx(1.0).margin(1e-14));
  const OverlapDecay decay = overlap_decay(d);
  for (const auto& point : decay.points) {
    CHECK(point.max_amplitude == 0.0);
    CHECK(point.clamped);
  }
  CHECK_FALSE(decay.slope);
}

TEST_CASE("dressed states of the four spin ferromagnet", "[spectrum]") {
  const ClusterParams p = ClusterParams::uniform(4, -1.0, 0.1, 0.01);
  const EigenSystem eig = solve(p);
  const DressedState lem = dress(eig, cfg("1111"));
  CHECK(lem.overlap2 >= 0.999);
  CHECK(lem.amplitudes.squaredNorm() == Catch::Approx(1.0).margin(1e-10));
  const DressedState ground = dress(eig, cfg("0000"));
  CHECK(ground.eigenindex == 0);
  CHECK(ground.eigenindex != lem.eigenindex);

  const double a_typ = typical_level_spacing(p, cfg("0000"));
  const OverlapDecay decay = overlap_decay(ground);
  REQUIRE(decay.slope);
  CHECK(*decay.slope < 0.0);
  REQUIRE(decay.points.size() == 4);

  // First-order amplitude at distance one: C_i / (E(anchor) - E(flip)).
  const double gap = classical_energy(p, cfg("1000")) - classical_energy(p, cfg("0000"));
  CHECK(std::abs(ground.amplitudes(1)) == Catch::Approx(0.01 / gap).epsilon(1e-3));
  CHECK(std::log10(0.01 / a_typ) < 0.0);
}

TEST_CASE("strong mixing is reported", "[spectrum]") {
  const ClusterParams p = pair(-1.0, Eigen::Vector2d::Zero(), 0.1);
  try {
    dress(solve(p), cfg("00"));
    FAIL("expected strong mixing");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kStrongMixing);
  }
}

TEST_CASE("typical level spacing", "[spectrum]") {
  CHECK(typical_level_spacing(ClusterParams::uniform(3, -1.0, 0.1, 0.0), cfg("111")) ==
        Catch::Approx(3.8).epsilon(1e-14));
  CHECK(typical_level_spacing(single(-0.35, 0.0), cfg("1")) == Catch::Approx(0.7).epsilon(1e-14));
  CHECK(typical_level_spacing(pair(-1.5, Eigen::Vector2d::Zero(), 0.0), cfg("00")) == Catch::Approx(3.0).epsilon(1e-14));
  try {
    typical_level_spacing(single(0.0, 0.0), cfg("1"));
    FAIL("expected degeneracy");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDegeneracy);
  }
}

TEST_CASE("overlap slope steepens as tunneling shrinks", "[spectrum][property]") {
  oracle::Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(3, 5);
    const ClusterParams base = ClusterParams::uniform(n, -1.0, rng.uniform(0.05, 0.3), 0.0);
    const SpinConfiguration ground(n, 0);
    const double a_typ = typical_level_spacing(base, ground);
    double previous = 0.0;
    for (double r : {0.1, 0.03, 0.01}) {
      const ClusterParams p = base.with_tunneling(Eigen::VectorXd::Constant(n, r * a_typ));
      const OverlapDecay decay = overlap_decay(dress(solve(p), ground));
      REQUIRE(decay.slope);
      if (r != 0.1) CHECK(*decay.slope < previous);
      previous = *decay.slope;
    }
  }
}

TEST_CASE("amplitudes fall off geometrically with distance", "[spectrum][property]") {
  oracle::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(2, 5);
    const ClusterParams classical = oracle::random_params(rng, n, 1.0, 0.3, 0.0);
    const std::vector<double> e = classical_energies(classical);
    const LandscapeReport landscape = find_local_minima(classical);
    const std::uint32_t anchor = landscape.global_minimum.bits();
    double delta_min = INFINITY;
    for (std::uint32_t x = 0; x < e.size(); ++x) {
      if (x != anchor) delta_min = std::min(delta_min, e[x] - e[anchor]);
    }
    if (delta_min < 1e-3) continue;
    const double c = 0.01 * delta_min;
    const ClusterParams p = classical.with_tunneling(Eigen::VectorXd::Constant(n, c));
    const DressedState d = dress(solve(p), landscape.global_minimum);
    double factorial = 1.0;
    for (int k = 1; k <= n; ++k) {
      factorial *= k;
      for (std::uint32_t x = 0; x < e.size(); ++x) {
        if (oracle::popcount(x ^ anchor) != k) continue;
        CHECK(std::abs(d.amplitudes(x)) <= 2.0 * factorial * std::pow(c / delta_min, k));
      }
    }
  }
}
