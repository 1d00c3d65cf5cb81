// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lemtrap/kernels.hpp"

namespace lemtrap::kernels {

namespace scalar {
void accumulate_parity(std::span<double> out, double coeff, std::uint32_t mask);
void apply_spin_hamiltonian(std::span<const double> diag, std::span<const double> flip,
                            std::span<const double> in, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(std::span<double> out, std::span<const double> x_in, double a, std::span<const double> y);
}  // namespace scalar

#if defined(LEMTRAP_HAVE_AVX2)
namespace avx2 {
void accumulate_parity(std::span<double> out, double coeff, std::uint32_t mask);
void apply_spin_hamiltonian(std::span<const double> diag, std::span<const double> flip,
                            std::span<const double> in, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
void axpy(std::span<double> out, std::span<const double> x_in, double a, std::span<const double> y);
}  // namespace avx2
#endif

}  // namespace lemtrap::kernels
