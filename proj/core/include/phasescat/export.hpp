// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phasescat/gabor.hpp"
#include "phasescat/phase_deriv.hpp"
#include "phasescat/scattering.hpp"
#include "phasescat/signal.hpp"
#include "phasescat/window.hpp"

namespace phasescat {

/// csv: one text file, numbers printed with 17 significant digits.
/// raw: little-endian float64 payload (`.f64`) plus a JSON sidecar (`.json`).
enum class ExportFormat { csv, raw };

ExportFormat export_format_from_string(std::string_view name);

/// Raised when a file cannot be written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every exporter takes a path stem (no extension) and returns the files it
// wrote.
//
//   signal:  csv index,re,im          raw interleaved re/im     {n, fs, is_real}
//   window:  csv index,time_s,g,g_prime,tg   raw (g,g',tg) triples
//            {length, fs, sigma, center_index}
//   tf:      csv m,n,re,im            raw re/im pairs, row-major channel x frame
//            {M, n_frames, hop, fs, convention, window_sigma, ...}
//   phase:   csv channel_freq_hz,frame_time_s,value,valid
//            raw values, row-major channel x frame
//            {kind, mode, mask_threshold, grid metadata}
//   layer:   as phase, kind one of mag/cif/lgd

std::vector<std::filesystem::path> export_signal(const std::filesystem::path& stem,
                                                 const SampledSignal& x, ExportFormat format);
std::vector<std::filesystem::path> export_window(const std::filesystem::path& stem,
                                                 const WindowTriple& w, ExportFormat format);
std::vector<std::filesystem::path> export_tf(const std::filesystem::path& stem,
                                             const TFMatrix& c, ExportFormat format);
std::vector<std::filesystem::path> export_phase_map(const std::filesystem::path& stem,
                                                    const PhaseDerivMap& map, ExportFormat format);
std::vector<std::filesystem::path> export_layer(const std::filesystem::path& stem,
                                                const LayerOutput& layer, ExportFormat format);

/// One row per stored frame: frame_time_s, value_hz, found_flag. `column`
/// names the value column ("crossing_hz" or "peak_hz").
struct FrameFeature {
  double frame_time = 0.0;
  std::optional<double> value;
};
std::filesystem::path write_feature_csv(const std::filesystem::path& file,
                                        const std::vector<FrameFeature>& rows,
                                        std::string_view column = "crossing_hz");

/// Reads a raw signal export back (stem.f64 + stem.json).
SampledSignal read_signal_raw(const std::filesystem::path& stem);
/// Reads a CSV signal export back; the real flag is inferred from the data.
SampledSignal read_signal_csv(const std::filesystem::path& file, double sample_rate);

/// "%.17g" formatting used by every CSV writer.
std::string format_number(double v);

}  // namespace phasescat
