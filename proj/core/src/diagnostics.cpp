// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/diagnostics.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

#include "phasescat/grid.hpp"

namespace phasescat {
namespace {

std::mutex g_handler_mutex;

void default_handler(std::string_view message) {
  std::cerr << "phasescat: warning: " << message << '\n';
}

WarningHandler& handler_slot() {
  static WarningHandler handler = default_handler;
  return handler;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(g_handler_mutex);
  if (!handler) handler = default_handler;
  return std::exchange(handler_slot(), std::move(handler));
}

void warn(std::string_view message) {
  WarningHandler handler;
  {
    std::lock_guard lock(g_handler_mutex);
    handler = handler_slot();
  }
  handler(message);
}

std::string_view to_string(Convention c) {
  return c == Convention::frequency_invariant ? "frequency-invariant"
                                              : "time-invariant";
}

Convention convention_from_string(std::string_view name) {
  if (name == "frequency-invariant" || name == "freqinv")
    return Convention::frequency_invariant;
  if (name == "time-invariant" || name == "timeinv")
    return Convention::time_invariant;
  throw std::invalid_argument("unknown STFT convention: " + std::string(name));
}

}  // namespace phasescat
