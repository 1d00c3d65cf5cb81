// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/error.hpp"

namespace lemtrap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kDegeneracy: return "degeneracy";
    case ErrorKind::kStrongMixing: return "strong_mixing";
    case ErrorKind::kInsufficientData: return "insufficient_data";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kStepSize: return "step_size";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

int exit_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kValidation:
    case ErrorKind::kDimension:
    case ErrorKind::kDomain:
    case ErrorKind::kIo:
      return 1;
    case ErrorKind::kDegeneracy:
    case ErrorKind::kStrongMixing:
    case ErrorKind::kInsufficientData:
    case ErrorKind::kNumerical:
    case ErrorKind::kStepSize:
      return 2;
    case ErrorKind::kCapacity:
      return 3;
  }
  return 1;
}

}  // namespace lemtrap
