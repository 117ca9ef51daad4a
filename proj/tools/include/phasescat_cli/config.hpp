// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phasescat/scattering.hpp"
#include "phasescat/verify.hpp"

namespace phasescat::cli {

/// Bad or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SignalSpec {
  /// sinusoid | vibrato | impulse | dirac-comb | file
  std::string kind = "vibrato";
  double f0 = 880.0;
  double fs = 4096.0;
  std::size_t n = 8192;
  /// Vibrato law: none | constant | exponential.
  std::string law = "constant";
  double rate = 20.0;
  double t0 = 0.5;
  /// For kind "file": a .csv export, or the stem of a raw export.
  std::string file;
};

struct RunConfig {
  SignalSpec signal;
  double sigma = 0.02;
  double sigma2 = 0.2;
  /// Channel count; 0 resolves to round(fs), i.e. 1 Hz channels for integer fs.
  std::size_t channels = 0;
  std::size_t hop = 32;
  double mask_threshold = 1e-4;
  /// dgt-mag | cif | lgd | oracle-cif | oracle-lgd
  std::string analysis = "cif";
  std::string mode = "relative";
  std::size_t first_frame = 0;
  std::size_t n_frames = 0;
  std::string path = "cif@880,cif";
  bool remove_mean = true;
  std::string out_dir = "out";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::vector<int> checks;
  verify::Tolerances tolerances;
};

/// Parses a JSON config. Every key is optional; unknown keys throw.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& file);

/// Fills derived defaults (channel count) and validates ranges.
void resolve(RunConfig& cfg);

/// Fully resolved config as JSON text, the body of manifest.json.
std::string to_json(const RunConfig& cfg, std::string_view command);

struct ParsedStep {
  OperatorKind kind = OperatorKind::cif;
  std::optional<double> channel_hz;
  std::optional<double> sigma;
};

/// "kind@channelHz[:sigma]" steps, comma separated. Only the last step may
/// omit the channel, which requests a sweep over all channels.
std::vector<ParsedStep> parse_path(std::string_view text);

}  // namespace phasescat::cli
