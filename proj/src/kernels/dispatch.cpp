// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "kernels_internal.hpp"


namespace lemtrap::kernels {

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", &scalar::accumulate_parity, &scalar::apply_spin_hamiltonian,
                                 &scalar::dot, &scalar::axpy};
  return table;
}

std::optional<KernelTable> avx2_table() noexcept {
#if defined(LEMTRAP_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) {
    return KernelTable{"avx2", &avx2::accumulate_parity, &avx2::apply_spin_hamiltonian, &avx2::dot,
                       &avx2::axpy};
  }
#endif
  return std::nullopt;
}

namespace {

KernelTable select() noexcept {
  if (auto table = avx2_table()) return *table;
  return scalar_table();
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable table = select();
  return table;
}

}  // namespace lemtrap::kernels
