// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "phasescat/gabor.hpp"
#include "phasescat/grid.hpp"
#include "phasescat/signal.hpp"
#include "phasescat/window.hpp"

namespace phasescat {

enum class PhaseDerivKind { cif, lgd };

/// relative: the ratio-formula output (channel offset for CIF, time offset for
/// LGD). absolute: CIF plus the channel frequency; not defined for LGD.
enum class PhaseDerivMode { relative, absolute };

std::string_view to_string(PhaseDerivKind kind);
std::string_view to_string(PhaseDerivMode mode);

inline constexpr double kDefaultMaskThreshold = 1e-4;

struct PhaseDerivParams {
  std::size_t hop = 1;
  std::size_t n_channels = 0;
  double mask_threshold = kDefaultMaskThreshold;
  PhaseDerivMode mode = PhaseDerivMode::relative;
  FrameRange frames;
};

/// Real CIF (Hz) or LGD (s) grid with its validity mask.
///
/// A cell is valid when |V_g x| >= mask_threshold * max |V_g x|, the maximum
/// taken over the evaluated grid. Invalid cells hold exactly 0. Valid cells are
/// always finite.
struct PhaseDerivMap {
  PhaseDerivKind kind = PhaseDerivKind::cif;
  PhaseDerivMode mode = PhaseDerivMode::relative;
  double mask_threshold = kDefaultMaskThreshold;
  GridInfo info;
  Grid<double> values;
  Grid<std::uint8_t> mask;
  /// |V_g x| used for masking.
  Grid<double> magnitude;

  bool valid(std::size_t m, std::size_t k) const { return mask(m, k) != 0; }
  std::size_t valid_count() const;
};

/// Channelized instantaneous frequency from the frequency-invariant STFT:
/// -Im(V_{g'} x / V_g x) / (2 pi), in Hz. Relative values are wrapped into
/// (-fs/2, fs/2].
PhaseDerivMap cif_f(const SampledSignal& x, const WindowTriple& w, const PhaseDerivParams& params);

/// Local group delay from the time-invariant STFT: Re(V_{Tg} x / V_g x), in s.
PhaseDerivMap lgd_t(const SampledSignal& x, const WindowTriple& w, const PhaseDerivParams& params);

/// Independent check of cif_f / lgd_t: differentiates the unwrapped STFT phase
/// with centred differences (along frames for CIF, which requires hop 1; along
/// channels for LGD). A cell is valid only when it and both neighbours pass the
/// mask and both phase steps are unambiguous (|step| <= kOracleMaxStep cycles).
PhaseDerivMap phase_deriv_oracle(const SampledSignal& x, const WindowTriple& w,
                                 const PhaseDerivParams& params, PhaseDerivKind kind);

inline constexpr double kOracleMaxStep = 0.45;

namespace detail {
/// Masked ratio for one cell. Returns false (and leaves value alone) when the
/// quotient is not finite.
bool cif_ratio(Complex a, Complex b, double& value);
bool lgd_ratio(Complex a, Complex b, double& value);
/// Wraps a relative CIF value into (-fs/2, fs/2].
double wrap_frequency(double v, double fs);
}  // namespace detail

}  // namespace phasescat
