// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "phasescat/grid.hpp"
#include "phasescat/signal.hpp"
#include "phasescat/window.hpp"

namespace phasescat {

struct GaborParams {
  std::size_t hop = 1;         // a
  std::size_t n_channels = 0;  // M
  Convention convention = Convention::frequency_invariant;
};

/// Complex STFT coefficients on a channel x frame grid. Channel m sits at
/// m fs / M over [0, fs) (no fftshift); frame n at n hop / fs.
struct TFMatrix {
  GridInfo info;
  Grid<Complex> coeffs;
  WindowPart window_part = WindowPart::g;

  Convention convention() const { return info.convention; }
  std::size_t n_channels() const { return info.n_channels; }
  std::size_t n_frames() const { return info.n_frames; }
  double channel_freq(std::size_t m) const { return info.channel_freq(m); }
  double frame_time(std::size_t k) const { return info.frame_time(k); }
};

/// Discrete Gabor transform with circular boundary handling.
///
///   frequency-invariant: c[m,n] = sum_l x[l] g[l - n a] e^{-2 pi i m l / M}
///   time-invariant:      c[m,n] = sum_l x[l] g[l - n a] e^{-2 pi i m (l - n a) / M}
///
/// Index arithmetic in l is modulo the signal length; a window longer than the
/// signal is periodized. Any M >= 2 is accepted: each frame's windowed slice is
/// folded modulo M before a length-M FFT. The signal length must be a multiple
/// of the hop. The window sample rate must equal the signal's.
TFMatrix dgt(const SampledSignal& x, const WindowTriple& w, const GaborParams& params,
             WindowPart part = WindowPart::g, FrameRange frames = {});

/// One channel of dgt() for every frame, by direct summation. Cheaper than the
/// full transform when only a single propagation channel is needed.
std::vector<Complex> dgt_channel(const SampledSignal& x, const WindowTriple& w,
                                 const GaborParams& params, WindowPart part,
                                 std::size_t channel);

/// Switches between the two conventions by the unimodular factor
/// e^{+-2 pi i m n a / M}. Magnitudes are untouched.
TFMatrix convention_convert(const TFMatrix& c);

/// Maps an on-grid frequency to its channel index; throws if freq * M / fs is
/// not an integer (within 1e-9) or lies outside [0, fs).
std::size_t channel_index(double freq_hz, std::size_t n_channels, double fs);

}  // namespace phasescat
