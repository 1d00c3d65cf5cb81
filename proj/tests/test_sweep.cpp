// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/sweep.hpp"
#include "lemtrap/dynamics.hpp"
#include "lemtrap/error.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace lemtrap;

namespace {

SweepGrid grid(std::vector<int> n, std::vector<double> r) {
  SweepGrid g;
  g.n_values = std::move(n);
  g.ratio_values = std::move(r);
  g.channels.rates = true;
  g.channels.overlaps = true;
  g.seed = 17;
  return g;
}

}  // namespace

TEST_CASE("rows follow the grid order", "[sweep]") {
  const auto rows = run_sweep(grid({2, 3, 4}, {0.01, 0.02}));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].n == 2);
  CHECK(rows[0].ratio == 0.01);
  CHECK(rows[1].ratio == 0.02);
  CHECK(rows[5].n == 4);
  for (const auto& row : rows) {
    CHECK_FALSE(row.error);
    CHECK(row.typical_spacing > 0.0);
    CHECK(row.rate_ratio);
    CHECK(row.eq4_bound);
    CHECK(row.overlap_slope);
    CHECK_FALSE(row.pathsum_slope);
    CHECK_FALSE(row.fitted_dynamics_rate);
  }
  CHECK(rows[0].seed == derive_seed(17, 0));
  CHECK(rows[3].seed == derive_seed(17, (std::uint64_t{1} << 32) | 1));
}

TEST_CASE("bound column equals ratio to the power n", "[sweep]") {
  const auto rows = run_sweep(grid({2, 3, 4, 5}, {0.01, 0.001}));
  for (const auto& row : rows) {
    REQUIRE(row.eq4_bound);
    CHECK(*row.eq4_bound == Catch::Approx(std::pow(row.ratio, row.n)).epsilon(1e-12));
  }
}

TEST_CASE("failing rows are marked and the rest survive", "[sweep]") {
  SweepGrid g = grid({1, 3}, {0.01});
  g.channels.pathsum = true;
  const auto rows = run_sweep(g);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].error);
  CHECK(*rows[0].error == ErrorKind::kDomain);
  CHECK_FALSE(rows[0].error_detail.empty());
  CHECK(rows[1].rate_ratio);
  CHECK(rows[1].pathsum_slope);
}

TEST_CASE("grid validation", "[sweep]") {
  auto kind_of = [](const SweepGrid& g) {
    try {
      run_sweep(g);
    } catch (const Error& e) {
      return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::kIo;
  };
  CHECK(kind_of(grid({}, {0.1})) == ErrorKind::kValidation);
  CHECK(kind_of(grid({3}, {1.5})) == ErrorKind::kValidation);
  CHECK(kind_of(grid({15}, {0.1})) == ErrorKind::kCapacity);
  SweepGrid paths = grid({9}, {0.1});
  paths.channels.pathsum = true;
  CHECK(kind_of(paths) == ErrorKind::kCapacity);
}

TEST_CASE("size scaling fit", "[sweep]") {
  std::vector<SweepRow> rows;
  for (int n = 2; n <= 6; ++n) {
    SweepRow row;
    row.n = n;
    row.rate_ratio = std::pow(10.0, -3.0 * n + 1.0);
    rows.push_back(row);
  }
  rows.push_back(SweepRow{});
  const SizeScalingFit fit = fit_size_scaling(rows, "rate_ratio");
  CHECK(fit.slope == Catch::Approx(-3.0).epsilon(1e-12));
  CHECK(fit.intercept == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(fit.r_squared == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(fit.used == 5);
  CHECK(fit.excluded == 1);
  CHECK_THROWS_AS(fit_size_scaling(rows, "seed"), Error);
  try {
    fit_size_scaling(std::vector<SweepRow>(rows.begin(), rows.begin() + 2), "rate_ratio");
    FAIL("expected insufficient data");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInsufficientData);
  }
}

TEST_CASE("explicit family uses the given couplings", "[sweep]") {
  Eigen::MatrixXd j(3, 3);
  j << 0, -1.2, -0.8, -1.2, 0, -1.0, -0.8, -1.0, 0;
  SweepGrid g = grid({3}, {0.01});
  g.family = ExplicitFamily{ClusterParams(j, Eigen::Vector3d(0.1, 0.15, 0.05), Eigen::Vector3d::Constant(0.7))};
  const auto rows = run_sweep(g);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].error);
  CHECK(rows[0].rate_ratio);
  SweepGrid wrong = g;
  wrong.n_values = {4};
  CHECK_THROWS_AS(run_sweep(wrong), Error);
}

TEST_CASE("sweeps are reproducible", "[sweep]") {
  SweepGrid g = grid({2, 3}, {0.05});
  g.channels.dynamics = true;
  g.dynamics.trajectory_count = 16;
  g.dynamics.sample_count = 200;
  const auto a = run_sweep(g);
  const auto b = run_sweep(g);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].fitted_dynamics_rate == b[k].fitted_dynamics_rate);
    CHECK(a[k].matrix_element == b[k].matrix_element);
  }
}
