// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "frame_analyzer.hpp"

namespace phasescat {
namespace detail {

void validate_gabor(const SampledSignal& x, const WindowTriple& w, const GaborParams& params) {
  if (x.size() == 0) throw std::invalid_argument("empty signal");
  const double rel = std::abs(x.sample_rate() - w.fs()) / x.sample_rate();
  if (rel > 1e-12)
    throw std::invalid_argument("sample rate mismatch: signal " + std::to_string(x.sample_rate()) +
                                " Hz, window " + std::to_string(w.fs()) + " Hz");
  if (params.n_channels < 2) throw std::invalid_argument("need at least 2 channels");
  if (params.hop < 1) throw std::invalid_argument("hop must be at least 1");
  if (x.size() % params.hop != 0)
    throw std::invalid_argument("signal length " + std::to_string(x.size()) +
                                " is not a multiple of hop " + std::to_string(params.hop));
}

FrameAnalyzer::FrameAnalyzer(const SampledSignal& x, const WindowTriple& w,
                             const GaborParams& params)
    : x_(x), w_(w), params_(params), total_frames_(0) {
  validate_gabor(x, w, params);
  total_frames_ = x.size() / params.hop;
  fold_.resize(params.n_channels);
}

void FrameAnalyzer::analyze(std::size_t frame, WindowPart part, std::span<Complex> out) {
  const std::size_t L = x_.size();
  const std::size_t M = params_.n_channels;
  const auto win = w_.part(part);
  const auto samples = x_.samples();
  const long long centre = static_cast<long long>(frame * params_.hop);
  const long long c = static_cast<long long>(w_.center_index());
  const bool freq_inv = params_.convention == Convention::frequency_invariant;

  std::fill(fold_.begin(), fold_.end(), Complex{});
  for (std::size_t j = 0; j < win.size(); ++j) {
    const long long d = static_cast<long long>(j) - c;
    const std::size_t l = wrap_index(centre + d, L);
    // The modulation exponent is m*l/M (frequency-invariant) or m*d/M
    // (time-invariant), so the slice folds modulo M on that index.
    const std::size_t bucket = freq_inv ? l % M : wrap_index(d, M);
    fold_[bucket] += samples[l] * win[j];
  }
  FftPlan::forward(M).execute(fold_.data(), out.data());
}

GridInfo FrameAnalyzer::grid_info(std::size_t first, std::size_t count) const {
  GridInfo info;
  info.n_channels = params_.n_channels;
  info.hop = params_.hop;
  info.signal_length = x_.size();
  info.fs = x_.sample_rate();
  info.convention = params_.convention;
  info.first_frame = first;
  info.n_frames = count;
  info.window_sigma = w_.sigma();
  return info;
}

FrameRange FrameAnalyzer::resolve(FrameRange frames) const {
  if (frames.count == 0) return {0, total_frames_};
  if (frames.first >= total_frames_ || frames.count > total_frames_)
    throw std::invalid_argument("frame range exceeds the " + std::to_string(total_frames_) +
                                " available frames");
  return frames;
}

}  // namespace detail

TFMatrix dgt(const SampledSignal& x, const WindowTriple& w, const GaborParams& params,
             WindowPart part, FrameRange frames) {
  detail::FrameAnalyzer analyzer(x, w, params);
  const FrameRange range = analyzer.resolve(frames);

  TFMatrix out;
  out.info = analyzer.grid_info(range.first, range.count);
  out.window_part = part;
  out.coeffs = Grid<Complex>(params.n_channels, range.count);
  for (std::size_t k = 0; k < range.count; ++k) {
    const std::size_t n = out.info.frame_index(k);
    analyzer.analyze(n, part, {out.coeffs.frame_data(k), params.n_channels});
  }
  return out;
}

std::vector<Complex> dgt_channel(const SampledSignal& x, const WindowTriple& w,
                                 const GaborParams& params, WindowPart part,
                                 std::size_t channel) {
  detail::validate_gabor(x, w, params);
  const std::size_t M = params.n_channels;
  if (channel >= M) throw std::invalid_argument("channel index out of range");

  const std::size_t L = x.size();
  const std::size_t frames = L / params.hop;
  const auto win = w.part(part);
  const auto samples = x.samples();
  const long long c = static_cast<long long>(w.center_index());
  const bool freq_inv = params.convention == Convention::frequency_invariant;

  // roots[r] = e^{-2 pi i r / M}; exponents are reduced exactly in integers.
  std::vector<Complex> roots(M);
  for (std::size_t r = 0; r < M; ++r)
    roots[r] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) /
                                   static_cast<double>(M));

  // Time-invariant: the modulation depends on the window offset only.
  std::vector<Complex> kernel(win.size());
  for (std::size_t j = 0; j < win.size(); ++j) {
    const long long d = static_cast<long long>(j) - c;
    kernel[j] = win[j] * roots[(channel * detail::wrap_index(d, M)) % M];
  }
  // Frequency-invariant: the modulation depends on the absolute sample index.
  std::vector<Complex> signal_mod;
  if (freq_inv) {
    signal_mod.resize(L);
    for (std::size_t l = 0; l < L; ++l)
      signal_mod[l] = samples[l] * roots[(channel * (l % M)) % M];
  }

  std::vector<Complex> row(frames);
  for (std::size_t n = 0; n < frames; ++n) {
    const long long centre = static_cast<long long>(n * params.hop);
    Complex acc{};
    for (std::size_t j = 0; j < win.size(); ++j) {
      const std::size_t l = detail::wrap_index(centre + static_cast<long long>(j) - c, L);
      if (freq_inv)
        acc += signal_mod[l] * win[j];
      else
        acc += samples[l] * kernel[j];
    }
    row[n] = acc;
  }
  return row;
}

TFMatrix convention_convert(const TFMatrix& c) {
  TFMatrix out = c;
  const std::size_t M = c.info.n_channels;
  // frequency-invariant -> time-invariant multiplies by e^{+2 pi i m n a / M}.
  const double sign = c.info.convention == Convention::frequency_invariant ? 1.0 : -1.0;
  out.info.convention = c.info.convention == Convention::frequency_invariant
                            ? Convention::time_invariant
                            : Convention::frequency_invariant;
  for (std::size_t k = 0; k < c.coeffs.frames(); ++k) {
    const std::size_t shift = (c.info.frame_index(k) * c.info.hop) % M;
    for (std::size_t m = 0; m < M; ++m) {
      const std::size_t r = (m * shift) % M;
      if (r == 0) continue;
      const double angle =
          sign * 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(M);
      out.coeffs(m, k) = c.coeffs(m, k) * std::polar(1.0, angle);
    }
  }
  return out;
}

std::size_t channel_index(double freq_hz, std::size_t n_channels, double fs) {
  if (n_channels == 0 || !(fs > 0.0)) throw std::invalid_argument("invalid channel grid");
  const double pos = freq_hz * static_cast<double>(n_channels) / fs;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9 * std::max(1.0, std::abs(pos)))
    throw std::invalid_argument("frequency " + std::to_string(freq_hz) +
                                " Hz is not on the channel grid (spacing " +
                                std::to_string(fs / static_cast<double>(n_channels)) + " Hz)");
  if (nearest < 0.0 || nearest >= static_cast<double>(n_channels))
    throw std::invalid_argument("frequency " + std::to_string(freq_hz) + " Hz outside [0, fs)");
  return static_cast<std::size_t>(nearest);
}

}  // namespace phasescat
