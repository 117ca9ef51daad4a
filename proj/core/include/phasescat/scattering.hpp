// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phasescat/grid.hpp"
#include "phasescat/phase_deriv.hpp"
#include "phasescat/signal.hpp"
#include "phasescat/window.hpp"

namespace phasescat {

/// Non-linearity applied after filtering at a propagation channel.
enum class OperatorKind { magnitude, cif, lgd };

std::string_view to_string(OperatorKind kind);
/// Accepts "mag", "magnitude", "cif", "lgd".
OperatorKind operator_kind_from_string(std::string_view name);

/// One element of a frequency-index path. `channel_hz` must sit on the
/// channel grid of the signal the step receives and below half its rate.
struct PathStep {
  OperatorKind kind = OperatorKind::magnitude;
  double channel_hz = 0.0;
  std::shared_ptr<const WindowTriple> window;
  std::size_t n_channels = 0;
  std::size_t hop = 1;
  double mask_threshold = kDefaultMaskThreshold;
  /// Subtract the input's mean before analysis.
  bool remove_mean = false;
};

struct ScatteringPath {
  std::vector<PathStep> steps;

  /// Builds a path and switches on mean removal for every step after the
  /// first when `remove_mean_after_first` is set.
  static ScatteringPath cascade(std::vector<PathStep> steps, bool remove_mean_after_first = true);

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  /// Steps [from, from + count); count beyond the end is clamped.
  ScatteringPath slice(std::size_t from, std::size_t count = static_cast<std::size_t>(-1)) const;
};

/// Raised by scatter() and layer(); carries the index of the failing step.
class ScatteringError : public std::invalid_argument {
 public:
  ScatteringError(std::size_t step_index, const std::string& what);
  std::size_t step_index() const { return step_index_; }

 private:
  std::size_t step_index_;
};

/// |V_g x| at the step's channel, one value per frame (rate fs / hop).
SampledSignal u_mag(const SampledSignal& x, const PathStep& step);
/// CIF row at the step's channel; masked frames are 0. The mask reference is
/// the row maximum of |V_g x|.
SampledSignal u_cif(const SampledSignal& x, const PathStep& step);
/// LGD row at the step's channel; masked frames are 0.
SampledSignal u_lgd(const SampledSignal& x, const PathStep& step);

SampledSignal apply_step(const SampledSignal& x, const PathStep& step);

/// Left-to-right cascade of the path's operators. Phase steps that feed a
/// later step warn when more than 10% of their frames are masked.
SampledSignal scatter(const SampledSignal& x, const ScatteringPath& path);

/// Final operator of a layer, swept over every channel of its analysis.
struct LayerSpec {
  OperatorKind kind = OperatorKind::cif;
  std::shared_ptr<const WindowTriple> window;
  std::size_t n_channels = 0;
  std::size_t hop = 1;
  double mask_threshold = kDefaultMaskThreshold;
  /// Subtract the prefix output's mean before the sweep (ignored for an empty
  /// prefix).
  bool remove_mean = true;
  FrameRange frames;
};

/// Channel x frame matrix of the final operator after a fixed prefix path.
struct LayerOutput {
  OperatorKind kind = OperatorKind::cif;
  std::vector<PathStep> prefix;
  GridInfo info;
  Grid<double> values;
  /// |V_g y| of the final analysis (equals `values` for magnitude layers).
  Grid<double> magnitude;
  Grid<std::uint8_t> mask;
  double mask_threshold = kDefaultMaskThreshold;

  bool valid(std::size_t m, std::size_t k) const { return mask(m, k) != 0; }
};

LayerOutput layer(const SampledSignal& x, const ScatteringPath& prefix, const LayerSpec& final_layer);

/// Frequency where the stored frame's column crosses zero downwards, linearly
/// interpolated. Only the contiguous valid band around the strongest channel
/// below fs/2 is searched; the crossing nearest that channel wins. Returns
/// nullopt when the band has no sign change. Phase layers only.
std::optional<double> extract_zero_crossing(const LayerOutput& layer, std::size_t frame);

/// Channel frequency of the largest magnitude in (0, fs/2) for the stored
/// frame; the DC channel is skipped. nullopt when every cell is masked.
std::optional<double> extract_peak(const LayerOutput& layer, std::size_t frame);

/// Throws std::invalid_argument unless the window's effective support (at
/// `rel_threshold`) spans at least one comb period 1 / fundamental_hz.
void check_comb_support(const WindowTriple& w, double fundamental_hz,
                        double rel_threshold = kDefaultMaskThreshold);

}  // namespace phasescat
