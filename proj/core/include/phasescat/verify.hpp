// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace phasescat::verify {

/// Bounds for the acceptance checks. Defaults are the release gate; the CLI
/// lets a config override any of them.
struct Tolerances {
  double sinusoid_cif_max_err_hz = 0.5;
  double impulse_lgd_max_err_s = 1e-3;
  double oracle_rel = 1e-3;
  double oracle_min_fraction = 0.99;
  double covariance_rel = 1e-12;
  double roundtrip_rel = 1e-15;
  double crossing_min_fraction = 0.90;
  double monotone_max_violation_fraction = 0.05;
  double channel_tolerance = 1.0;  // in channel spacings
  double amplitude_abs = 1e-12;
  double runtime_fast_s = 5.0;
  double runtime_slow_s = 30.0;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  /// Comparison used for measured vs bound, e.g. "<=" or ">=".
  std::string relation;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCheckCount = 9;

/// Runs acceptance check `id` (1..kCheckCount).
CheckResult run_check(int id, const Tolerances& tol = {});

/// Runs the listed checks (all when empty) in order.
std::vector<CheckResult> run_acceptance(const std::vector<int>& ids = {},
                                        const Tolerances& tol = {});

}  // namespace phasescat::verify
