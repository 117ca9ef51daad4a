// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phasescat/gabor.hpp"

namespace phasescat::detail {

/// Validated Gabor geometry plus scratch space for computing one frame at a
/// time. Not shareable between threads; create one per worker.
class FrameAnalyzer {
 public:
  FrameAnalyzer(const SampledSignal& x, const WindowTriple& w, const GaborParams& params);

  std::size_t total_frames() const { return total_frames_; }
  std::size_t n_channels() const { return params_.n_channels; }

  /// Writes the M coefficients of absolute frame `frame` into out.
  void analyze(std::size_t frame, WindowPart part, std::span<Complex> out);

  /// Grid description for `count` frames starting at `first`.
  GridInfo grid_info(std::size_t first, std::size_t count) const;

  /// Resolves a FrameRange (count 0 = all) against the frame count; throws on
  /// out-of-range requests.
  FrameRange resolve(FrameRange frames) const;

 private:
  const SampledSignal& x_;
  const WindowTriple& w_;
  GaborParams params_;
  std::size_t total_frames_;
  std::vector<Complex> fold_;
};

void validate_gabor(const SampledSignal& x, const WindowTriple& w, const GaborParams& params);

/// Non-negative remainder of a signed offset.
inline std::size_t wrap_index(long long v, std::size_t n) {
  const long long m = static_cast<long long>(n);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

}  // namespace phasescat::detail
