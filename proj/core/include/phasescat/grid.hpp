// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace phasescat {

/// Where the modulation term of the STFT is anchored.
///
/// `frequency_invariant` modulates with the absolute sample index l, so the
/// phase of a stationary sinusoid advances with the channel offset.
/// `time_invariant` modulates with the offset l - n*hop relative to the frame
/// centre, so the phase of an impulse advances with the time offset.
enum class Convention { frequency_invariant, time_invariant };

std::string_view to_string(Convention c);
Convention convention_from_string(std::string_view name);

/// Dense channel x frame grid. Storage is frame-major: all channels of a
/// frame are contiguous, which matches the per-frame FFT that fills it.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t channels, std::size_t frames, T fill = T{})
      : channels_(channels), frames_(frames), data_(channels * frames, fill) {}

  std::size_t channels() const { return channels_; }
  std::size_t frames() const { return frames_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t channel, std::size_t frame) {
    return data_[frame * channels_ + channel];
  }
  const T& operator()(std::size_t channel, std::size_t frame) const {
    return data_[frame * channels_ + channel];
  }

  T* frame_data(std::size_t frame) { return data_.data() + frame * channels_; }
  const T* frame_data(std::size_t frame) const {
    return data_.data() + frame * channels_;
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t channels_ = 0;
  std::size_t frames_ = 0;
  std::vector<T> data_;
};

/// Frames to evaluate, as `count` consecutive frame indices starting at
/// `first`, taken modulo the total frame count. count == 0 selects all frames.
struct FrameRange {
  std::size_t first = 0;
  std::size_t count = 0;
};

/// Sampling geometry shared by every time-frequency grid.
struct GridInfo {
  std::size_t n_channels = 0;    // M
  std::size_t hop = 1;           // a, in samples
  std::size_t signal_length = 0; // L
  double fs = 0.0;
  Convention convention = Convention::frequency_invariant;
  std::size_t first_frame = 0;   // absolute index of stored frame 0
  std::size_t n_frames = 0;      // stored frames
  double window_sigma = 0.0;

  std::size_t total_frames() const { return hop ? signal_length / hop : 0; }
  std::size_t frame_index(std::size_t k) const {
    const std::size_t total = total_frames();
    return total ? (first_frame + k) % total : 0;
  }
  double channel_freq(std::size_t m) const {
    return static_cast<double>(m) * fs / static_cast<double>(n_channels);
  }
  double channel_spacing() const { return fs / static_cast<double>(n_channels); }
  /// Time of stored frame k in seconds.
  double frame_time(std::size_t k) const {
    return static_cast<double>(frame_index(k) * hop) / fs;
  }
};

}  // namespace phasescat
