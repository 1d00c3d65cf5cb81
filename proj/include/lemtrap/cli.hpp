// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cli.hpp
 * @brief The `lemtrap` command line.
 *
 *     lemtrap <spectrum|landscape|overlaps|rates|pathsum|dynamics|sweep>
 *             --config PATH [--out PATH] [--seed U64] [--quiet]
 *
 * Results go to --out, else to [output] path, else standard output. Exit
 * status: 0 success, 1 invalid input or I/O, 2 numerical failure, 3 problem
 * too large.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lemtrap {

/// `args` excludes the program name.
int command_surface(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lemtrap
