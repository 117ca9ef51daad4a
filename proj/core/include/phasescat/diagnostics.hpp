// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string_view>

namespace phasescat {

using WarningHandler = std::function<void(std::string_view)>;

/// Installs the sink for non-fatal warnings and returns the previous one.
/// The default handler writes to stderr. Passing an empty function restores it.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace phasescat
