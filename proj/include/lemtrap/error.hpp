// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lemtrap {

/// Failure categories. Every exception thrown by the library carries exactly
/// one of these; the command line maps each to an exit status.
enum class ErrorKind {
  kValidation,       ///< malformed input, config syntax, unknown keys
  kDimension,        ///< vector/matrix sizes disagree with n
  kDomain,           ///< argument outside the operation's domain
  kDegeneracy,       ///< vanishing energy denominator or gap
  kStrongMixing,     ///< dressed state overlap below the perturbative threshold
  kInsufficientData, ///< too few points for a fit
  kNumerical,        ///< eigensolver failure, unresolved fit
  kStepSize,         ///< integrator instability
  kCapacity,         ///< problem exceeds the dense / enumeration budget
  kIo,               ///< destination could not be written
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exit status used by the command line for a given error kind:
/// 1 validation, 2 numerical, 3 capacity.
int exit_status(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), kind_(kind), where_(std::move(where)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// "module.operation" that raised the error.
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::string where_;
};

}  // namespace lemtrap
