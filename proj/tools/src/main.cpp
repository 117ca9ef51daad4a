// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "phasescat_cli/app.hpp"

int main(int argc, char** argv) {
  return phasescat::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
