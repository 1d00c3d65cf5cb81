// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernels_internal.hpp"

#include <bit>
#include <cstddef>

namespace lemtrap::kernels::scalar {

void accumulate_parity(std::span<double> out, double coeff, std::uint32_t mask) {
  const int mask_bits = std::popcount(mask);
  for (std::size_t x = 0; x < out.size(); ++x) {
    // Each clear bit under the mask contributes a factor -1.
    const int zeros = mask_bits - std::popcount(static_cast<std::uint32_t>(x) & mask);
    out[x] += (zeros & 1) ? -coeff : coeff;
  }
}

void apply_spin_hamiltonian(std::span<const double> diag, std::span<const double> flip,
                            std::span<const double> in, std::span<double> out) {
  const std::size_t n = flip.size();
  for (std::size_t x = 0; x < in.size(); ++x) {
    double acc = diag[x] * in[x];
    for (std::size_t i = 0; i < n; ++i) {
      acc = acc + flip[i] * in[x ^ (std::size_t{1} << i)];
    }
    out[x] = acc;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) sum += a[x] * b[x];
  return sum;
}

void axpy(std::span<double> out, std::span<const double> x_in, double a, std::span<const double> y) {
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = x_in[x] + a * y[x];
}

}  // namespace lemtrap::kernels::scalar
