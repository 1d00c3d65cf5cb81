// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/kernels.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <vector>

using namespace lemtrap;

namespace {

std::vector<double> random_vector(oracle::Rng& rng, std::size_t size) {
  std::vector<double> v(size);
  for (auto& x : v) x = rng.normal();
  return v;
}

std::vector<kernels::KernelTable> tables() {
  std::vector<kernels::KernelTable> out{kernels::scalar_table()};
  if (auto avx2 = kernels::avx2_table()) out.push_back(*avx2);
  return out;
}

}  // namespace

TEST_CASE("active table is one of the known tables", "[kernels]") {
  const auto name = kernels::active().name;
  CHECK((name == "scalar" || name == "avx2"));
}

TEST_CASE("scalar kernels match direct loops", "[kernels]") {
  oracle::Rng rng(17);
  const auto& k = kernels::scalar_table();
  for (int n = 1; n <= 8; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> out(dim, 0.0);
    const auto mask = static_cast<std::uint32_t>(rng.bits(n));
    k.accumulate_parity(out, 0.7, mask);
    for (std::uint32_t x = 0; x < dim; ++x) {
      double parity = 1.0;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) parity *= oracle::spin(x, i);
      }
      CHECK(out[x] == 0.7 * parity);
    }

    const auto diag = random_vector(rng, dim);
    const auto flip = random_vector(rng, static_cast<std::size_t>(n));
    const auto in = random_vector(rng, dim);
    std::vector<double> applied(dim);
    k.apply_spin_hamiltonian(diag, flip, in, applied);
    for (std::uint32_t x = 0; x < dim; ++x) {
      double expected = diag[x] * in[x];
      for (int i = 0; i < n; ++i) expected += flip[static_cast<std::size_t>(i)] * in[x ^ (1U << i)];
      CHECK(applied[x] == Catch::Approx(expected).margin(1e-13));
    }

    double dot = 0.0;
    for (std::size_t x = 0; x < dim; ++x) dot += diag[x] * in[x];
    CHECK(k.dot(diag, in) == Catch::Approx(dot).margin(1e-12));

    std::vector<double> axpy(dim);
    k.axpy(axpy, diag, -0.3, in);
    for (std::size_t x = 0; x < dim; ++x) CHECK(axpy[x] == diag[x] + -0.3 * in[x]);
  }
}

TEST_CASE("every table agrees with the scalar reference", "[kernels][property]") {
  oracle::Rng rng(4242);
  const auto& ref = kernels::scalar_table();
  for (const auto& table : tables()) {
    INFO("table " << table.name);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = rng.integer(0, 12);
      const std::size_t dim = std::size_t{1} << n;

      auto a = random_vector(rng, dim);
      auto b = a;
      for (int term = 0; term < 5; ++term) {
        const double coeff = rng.normal();
        const auto mask = n > 0 ? rng.bits(n) : 0U;
        ref.accumulate_parity(a, coeff, mask);
        table.accumulate_parity(b, coeff, mask);
      }
      CHECK(a == b);

      const auto diag = random_vector(rng, dim);
      const auto flip = random_vector(rng, static_cast<std::size_t>(n));
      const auto in = random_vector(rng, dim);
      std::vector<double> out_ref(dim);
      std::vector<double> out(dim);
      ref.apply_spin_hamiltonian(diag, flip, in, out_ref);
      table.apply_spin_hamiltonian(diag, flip, in, out);
      CHECK(out_ref == out);

      std::vector<double> axpy_ref = diag;
      std::vector<double> axpy = diag;
      ref.axpy(axpy_ref, axpy_ref, 1.5, in);
      table.axpy(axpy, axpy, 1.5, in);
      CHECK(axpy_ref == axpy);

      double magnitude = 0.0;
      for (std::size_t x = 0; x < dim; ++x) magnitude += std::abs(diag[x] * in[x]);
      CHECK(std::abs(ref.dot(diag, in) - table.dot(diag, in)) <= 1e-14 * (magnitude + 1.0));
    }
  }
}
