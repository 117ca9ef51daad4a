// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

// Runs every acceptance criterion at its release tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "phasescat/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));

  const auto results = phasescat::verify::run_acceptance(ids);
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %d: %s | measured %.6g %s bound %.6g | %.2f s\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured,
                r.relation.c_str(), r.bound, r.seconds);
    std::printf("       %s\n", r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
