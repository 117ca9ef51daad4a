// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace phasescat::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kConfigError = 2, kVerifyFailed = 3 };

/// Runs the command line (args excludes the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args);

}  // namespace phasescat::cli
