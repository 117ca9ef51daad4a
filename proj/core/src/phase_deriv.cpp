// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/phase_deriv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "frame_analyzer.hpp"

namespace phasescat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_params(const PhaseDerivParams& p) {
  if (!(p.mask_threshold > 0.0) || !(p.mask_threshold < 1.0))
    throw std::invalid_argument("mask threshold must lie in (0, 1)");
}

PhaseDerivMap make_map(PhaseDerivKind kind, const PhaseDerivParams& p, const GridInfo& info) {
  PhaseDerivMap map;
  map.kind = kind;
  map.mode = p.mode;
  map.mask_threshold = p.mask_threshold;
  map.info = info;
  map.values = Grid<double>(info.n_channels, info.n_frames, 0.0);
  map.mask = Grid<std::uint8_t>(info.n_channels, info.n_frames, 0);
  map.magnitude = Grid<double>(info.n_channels, info.n_frames, 0.0);
  return map;
}

double max_of(const Grid<double>& g) {
  double peak = 0.0;
  for (double v : g.data()) peak = std::max(peak, v);
  return peak;
}

// Applies the relative-magnitude mask to `raw` (ratio values per cell, with
// `finite` flags) and writes the final map values.
void apply_mask(PhaseDerivMap& map, const std::vector<double>& raw,
                const std::vector<std::uint8_t>& finite) {
  const double level = map.mask_threshold * max_of(map.magnitude);
  auto& values = map.values.data();
  auto& mask = map.mask.data();
  const auto& mag = map.magnitude.data();
  const bool absolute = map.mode == PhaseDerivMode::absolute;
  const std::size_t M = map.info.n_channels;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool ok = level > 0.0 && mag[i] >= level && finite[i] != 0;
    mask[i] = ok ? 1 : 0;
    if (!ok) {
      values[i] = 0.0;
      continue;
    }
    double v = raw[i];
    if (map.kind == PhaseDerivKind::cif) {
      v = detail::wrap_frequency(v, map.info.fs);
      if (absolute) v += map.info.channel_freq(i % M);
    }
    values[i] = v;
  }
}

PhaseDerivMap ratio_map(const SampledSignal& x, const WindowTriple& w,
                        const PhaseDerivParams& params, PhaseDerivKind kind) {
  check_params(params);
  const Convention conv = kind == PhaseDerivKind::cif ? Convention::frequency_invariant
                                                      : Convention::time_invariant;
  const WindowPart numerator = kind == PhaseDerivKind::cif ? WindowPart::g_prime : WindowPart::tg;

  detail::FrameAnalyzer analyzer(x, w, GaborParams{params.hop, params.n_channels, conv});
  const FrameRange range = analyzer.resolve(params.frames);
  PhaseDerivMap map = make_map(kind, params, analyzer.grid_info(range.first, range.count));

  const std::size_t M = params.n_channels;
  std::vector<Complex> a(M), b(M);
  std::vector<double> raw(M * range.count, 0.0);
  std::vector<std::uint8_t> finite(M * range.count, 0);

  for (std::size_t k = 0; k < range.count; ++k) {
    const std::size_t n = map.info.frame_index(k);
    analyzer.analyze(n, WindowPart::g, a);
    analyzer.analyze(n, numerator, b);
    double* mag = map.magnitude.frame_data(k);
    for (std::size_t m = 0; m < M; ++m) {
      mag[m] = std::abs(a[m]);
      double v = 0.0;
      const bool ok = kind == PhaseDerivKind::cif ? detail::cif_ratio(a[m], b[m], v)
                                                  : detail::lgd_ratio(a[m], b[m], v);
      raw[k * M + m] = v;
      finite[k * M + m] = ok ? 1 : 0;
    }
  }
  apply_mask(map, raw, finite);
  return map;
}

// Nearest-integer cycle correction of a phase step.
double wrap_cycles(double d) { return d - std::round(d); }

double phase_cycles(Complex c) { return std::arg(c) / kTwoPi; }

}  // namespace

std::string_view to_string(PhaseDerivKind kind) {
  return kind == PhaseDerivKind::cif ? "cif" : "lgd";
}

std::string_view to_string(PhaseDerivMode mode) {
  return mode == PhaseDerivMode::relative ? "relative" : "absolute";
}

std::size_t PhaseDerivMap::valid_count() const {
  return static_cast<std::size_t>(std::count(mask.data().begin(), mask.data().end(), 1));
}

namespace detail {

bool cif_ratio(Complex a, Complex b, double& value) {
  const double denom = std::norm(a);
  const double v = -(b * std::conj(a)).imag() / (kTwoPi * denom);
  if (!std::isfinite(v)) return false;
  value = v;
  return true;
}

bool lgd_ratio(Complex a, Complex b, double& value) {
  const double denom = std::norm(a);
  const double v = (b * std::conj(a)).real() / denom;
  if (!std::isfinite(v)) return false;
  value = v;
  return true;
}

double wrap_frequency(double v, double fs) {
  const double half = fs / 2.0;
  if (v > -half && v <= half) return v;
  double r = v - fs * std::floor((v + half) / fs);
  if (r <= -half) r += fs;
  return r;
}

}  // namespace detail

PhaseDerivMap cif_f(const SampledSignal& x, const WindowTriple& w, const PhaseDerivParams& params) {
  return ratio_map(x, w, params, PhaseDerivKind::cif);
}

PhaseDerivMap lgd_t(const SampledSignal& x, const WindowTriple& w, const PhaseDerivParams& params) {
  if (params.mode == PhaseDerivMode::absolute)
    throw std::invalid_argument("absolute mode is only defined for CIF");
  return ratio_map(x, w, params, PhaseDerivKind::lgd);
}

PhaseDerivMap phase_deriv_oracle(const SampledSignal& x, const WindowTriple& w,
                                 const PhaseDerivParams& params, PhaseDerivKind kind) {
  check_params(params);
  if (kind == PhaseDerivKind::lgd && params.mode == PhaseDerivMode::absolute)
    throw std::invalid_argument("absolute mode is only defined for CIF");
  if (kind == PhaseDerivKind::cif && params.hop != 1)
    throw std::invalid_argument("the CIF oracle differentiates along time and needs hop = 1");

  const Convention conv = kind == PhaseDerivKind::cif ? Convention::frequency_invariant
                                                      : Convention::time_invariant;
  detail::FrameAnalyzer analyzer(x, w, GaborParams{params.hop, params.n_channels, conv});
  const FrameRange range = analyzer.resolve(params.frames);
  PhaseDerivMap map = make_map(kind, params, analyzer.grid_info(range.first, range.count));

  const std::size_t M = params.n_channels;
  const std::size_t total = analyzer.total_frames();
  const double fs = x.sample_rate();
  std::vector<double> raw(M * range.count, 0.0);
  std::vector<std::uint8_t> ok(M * range.count, 0);

  // Phase and magnitude for the requested frames, plus one neighbour on each
  // side (circularly) when differentiating along time.
  const std::size_t pad = kind == PhaseDerivKind::cif ? 1 : 0;
  const std::size_t span = std::min(range.count + 2 * pad, total);
  const std::size_t span_first = (range.first + total - pad) % total;
  Grid<double> phase(M, span);
  Grid<double> mag(M, span);
  std::vector<Complex> buf(M);
  for (std::size_t s = 0; s < span; ++s) {
    analyzer.analyze((span_first + s) % total, WindowPart::g, buf);
    for (std::size_t m = 0; m < M; ++m) {
      phase(m, s) = phase_cycles(buf[m]);
      mag(m, s) = std::abs(buf[m]);
    }
  }
  auto slot = [&](std::size_t frame) { return (frame + total - span_first) % total; };

  for (std::size_t k = 0; k < range.count; ++k) {
    const std::size_t s = slot(map.info.frame_index(k));
    for (std::size_t m = 0; m < M; ++m) map.magnitude(m, k) = mag(m, s);
  }
  const double level = params.mask_threshold * max_of(map.magnitude);
  if (level > 0.0) {
    for (std::size_t k = 0; k < range.count; ++k) {
      const std::size_t n = map.info.frame_index(k);
      const std::size_t s = slot(n);
      for (std::size_t m = 0; m < M; ++m) {
        double before_phase, after_phase, centre_phase = phase(m, s);
        bool neighbours_ok;
        if (kind == PhaseDerivKind::cif) {
          const std::size_t sp = slot((n + total - 1) % total);
          const std::size_t sn = slot((n + 1) % total);
          neighbours_ok = mag(m, s) >= level && mag(m, sp) >= level && mag(m, sn) >= level;
          before_phase = phase(m, sp);
          after_phase = phase(m, sn);
        } else {
          const std::size_t mp = (m + M - 1) % M;
          const std::size_t mn = (m + 1) % M;
          neighbours_ok = mag(m, s) >= level && mag(mp, s) >= level && mag(mn, s) >= level;
          before_phase = phase(mp, s);
          after_phase = phase(mn, s);
        }
        if (!neighbours_ok) continue;
        const double d0 = wrap_cycles(centre_phase - before_phase);
        const double d1 = wrap_cycles(after_phase - centre_phase);
        if (std::abs(d0) > kOracleMaxStep || std::abs(d1) > kOracleMaxStep) continue;
        const double slope = 0.5 * (d0 + d1);  // cycles per step
        const double v = kind == PhaseDerivKind::cif
                             ? slope * fs / static_cast<double>(params.hop)
                             : -slope * static_cast<double>(M) / fs;
        raw[k * M + m] = v;
        ok[k * M + m] = 1;
      }
    }
  }

  // The oracle's validity already includes the magnitude test; reuse the
  // masking pass for wrapping and absolute mode.
  apply_mask(map, raw, ok);
  return map;
}

}  // namespace phasescat
