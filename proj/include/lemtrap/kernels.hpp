// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops over the 2^n number-state basis.
 *
 * Each kernel has a scalar reference implementation and, on x86-64, an AVX2
 * implementation. The table in use is picked once at startup from CPUID;
 * configure with -DLEMTRAP_ENABLE_AVX2=OFF to build the scalar table only.
 *
 * Contract shared by both tables:
 * - accumulate_parity, apply_spin_hamiltonian and axpy perform the same
 *   floating-point operations in the same order, so both tables return
 *   bit-identical results.
 * - dot uses four partial sums in the AVX2 table; results agree with the
 *   scalar table to rounding only.
 * - Vector lengths are powers of two (2^n). Spans passed as `out` must not
 *   alias an input span.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace lemtrap::kernels {

/// out[x] += coeff * prod_{i in mask} s_i(x), s_i(x) = +1 if bit i of x is set else -1.
using AccumulateParityFn = void (*)(std::span<double> out, double coeff, std::uint32_t mask);

/// out[x] = diag[x] * in[x] + sum_i flip[i] * in[x ^ (1 << i)].
/// flip.size() is the number of spins n, in/out/diag have length 2^n.
using ApplySpinHamiltonianFn = void (*)(std::span<const double> diag, std::span<const double> flip,
                                        std::span<const double> in, std::span<double> out);

using DotFn = double (*)(std::span<const double> a, std::span<const double> b);

/// out[x] = x_in[x] + a * y[x]. `out` may alias `x_in`.
using AxpyFn = void (*)(std::span<double> out, std::span<const double> x_in, double a,
                        std::span<const double> y);

struct KernelTable {
  std::string_view name;
  AccumulateParityFn accumulate_parity;
  ApplySpinHamiltonianFn apply_spin_hamiltonian;
  DotFn dot;
  AxpyFn axpy;
};

const KernelTable& scalar_table() noexcept;

/// Present only when the library was built with AVX2 support and the CPU has it.
std::optional<KernelTable> avx2_table() noexcept;

/// Table selected for this process.
const KernelTable& active() noexcept;

}  // namespace lemtrap::kernels
