// Copyright 2026 The lemtrap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lemtrap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return lemtrap::command_surface(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
