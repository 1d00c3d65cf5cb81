// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 (and deliberately without -mfma): every multiply and
// add is issued separately so results match the scalar table bit for bit.

#include "kernels_internal.hpp"

#include <immintrin.h>

#include <bit>
#include <cstddef>

namespace lemtrap::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline int zero_parity(std::uint32_t x, std::uint32_t mask) {
  return (std::popcount(mask) - std::popcount(x & mask)) & 1;
}

}  // namespace

void accumulate_parity(std::span<double> out, double coeff, std::uint32_t mask) {
  if (out.size() < kLanes) {
    scalar::accumulate_parity(out, coeff, mask);
    return;
  }
  // Split the mask: the two low bits vary inside a 4-lane block, the rest is
  // constant per block.
  const std::uint32_t low = mask & 3U;
  const std::uint32_t high = mask & ~3U;
  alignas(32) double pattern[kLanes];
  for (std::uint32_t lane = 0; lane < kLanes; ++lane) {
    pattern[lane] = zero_parity(lane, low) ? -coeff : coeff;
  }
  const __m256d plus = _mm256_load_pd(pattern);
  const __m256d minus = _mm256_sub_pd(_mm256_setzero_pd(), plus);

  double* data = out.data();
  for (std::size_t base = 0; base < out.size(); base += kLanes) {
    const __m256d term = zero_parity(static_cast<std::uint32_t>(base), high) ? minus : plus;
    _mm256_storeu_pd(data + base, _mm256_add_pd(_mm256_loadu_pd(data + base), term));
  }
}

void apply_spin_hamiltonian(std::span<const double> diag, std::span<const double> flip,
                            std::span<const double> in, std::span<double> out) {
  if (in.size() < kLanes) {
    scalar::apply_spin_hamiltonian(diag, flip, in, out);
    return;
  }
  const std::size_t n = flip.size();
  const double* src = in.data();
  for (std::size_t base = 0; base < in.size(); base += kLanes) {
    const __m256d own = _mm256_loadu_pd(src + base);
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(diag.data() + base), own);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = std::size_t{1} << i;
      __m256d partner;
      if (m == 1) {
        partner = _mm256_permute_pd(own, 0b0101);  // lanes 1 0 3 2
      } else if (m == 2) {
        partner = _mm256_permute2f128_pd(own, own, 0x01);  // lanes 2 3 0 1
      } else {
        partner = _mm256_loadu_pd(src + (base ^ m));
      }
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(flip[i]), partner));
    }
    _mm256_storeu_pd(out.data() + base, acc);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() < kLanes) return scalar::dot(a, b);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t x = 0; x < a.size(); x += kLanes) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + x), _mm256_loadu_pd(b.data() + x)));
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void axpy(std::span<double> out, std::span<const double> x_in, double a, std::span<const double> y) {
  if (out.size() < kLanes) {
    scalar::axpy(out, x_in, a, y);
    return;
  }
  const __m256d scale = _mm256_set1_pd(a);
  for (std::size_t x = 0; x < out.size(); x += kLanes) {
    const __m256d v = _mm256_add_pd(_mm256_loadu_pd(x_in.data() + x),
                                    _mm256_mul_pd(scale, _mm256_loadu_pd(y.data() + x)));
    _mm256_storeu_pd(out.data() + x, v);
  }
}

}  // namespace lemtrap::kernels::avx2
