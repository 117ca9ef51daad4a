// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "phasescat/diagnostics.hpp"
#include "phasescat/gabor.hpp"

namespace phasescat {
namespace {

constexpr double kMaskedWarnFraction = 0.10;

SampledSignal remove_mean(const SampledSignal& x) {
  const auto s = x.samples();
  const Complex mean = std::accumulate(s.begin(), s.end(), Complex{}) /
                       static_cast<double>(s.size());
  std::vector<Complex> out(s.size());
  std::transform(s.begin(), s.end(), out.begin(), [mean](Complex v) { return v - mean; });
  if (x.is_real()) {
    for (auto& v : out) v.imag(0.0);
  }
  return SampledSignal(std::move(out), x.sample_rate(), x.is_real());
}

std::size_t check_step(const SampledSignal& x, const PathStep& step) {
  if (!step.window) throw std::invalid_argument("path step has no window");
  if (step.channel_hz < 0.0 || !(step.channel_hz < x.sample_rate() / 2.0))
    throw std::invalid_argument("propagation channel " + std::to_string(step.channel_hz) +
                                " Hz outside [0, fs/2) for fs = " +
                                std::to_string(x.sample_rate()));
  return channel_index(step.channel_hz, step.n_channels, x.sample_rate());
}

struct StepResult {
  SampledSignal output;
  double masked_fraction = 0.0;
};

StepResult run_step(const SampledSignal& input, const PathStep& step) {
  const std::size_t m = check_step(input, step);
  const SampledSignal x = step.remove_mean ? remove_mean(input) : input;
  const double out_rate = x.sample_rate() / static_cast<double>(step.hop);

  if (step.kind == OperatorKind::magnitude) {
    const auto row = dgt_channel(x, *step.window,
                                 GaborParams{step.hop, step.n_channels,
                                             Convention::frequency_invariant},
                                 WindowPart::g, m);
    std::vector<double> mag(row.size());
    std::transform(row.begin(), row.end(), mag.begin(), [](Complex c) { return std::abs(c); });
    return {SampledSignal::from_real(mag, out_rate), 0.0};
  }

  if (!(step.mask_threshold > 0.0) || !(step.mask_threshold < 1.0))
    throw std::invalid_argument("mask threshold must lie in (0, 1)");
  const bool cif = step.kind == OperatorKind::cif;
  const GaborParams params{step.hop, step.n_channels,
                           cif ? Convention::frequency_invariant : Convention::time_invariant};
  const auto a = dgt_channel(x, *step.window, params, WindowPart::g, m);
  const auto b = dgt_channel(x, *step.window, params,
                             cif ? WindowPart::g_prime : WindowPart::tg, m);

  double peak = 0.0;
  for (const auto& c : a) peak = std::max(peak, std::abs(c));
  const double level = step.mask_threshold * peak;

  std::vector<double> out(a.size(), 0.0);
  std::size_t masked = 0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    double v = 0.0;
    const bool finite = cif ? detail::cif_ratio(a[n], b[n], v) : detail::lgd_ratio(a[n], b[n], v);
    if (level > 0.0 && std::abs(a[n]) >= level && finite) {
      out[n] = cif ? detail::wrap_frequency(v, x.sample_rate()) : v;
    } else {
      ++masked;
    }
  }
  return {SampledSignal::from_real(out, out_rate),
          static_cast<double>(masked) / static_cast<double>(a.size())};
}

SampledSignal run_prefix(const SampledSignal& x, const ScatteringPath& path,
                         bool feeds_further_layer) {
  SampledSignal current = x;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const PathStep& step = path.steps[i];
    const bool feeds = i + 1 < path.steps.size() || feeds_further_layer;
    StepResult r;
    try {
      if (feeds && step.hop != 1)
        throw std::invalid_argument("a step feeding a deeper layer must use hop 1");
      r = run_step(current, step);
    } catch (const std::exception& e) {
      throw ScatteringError(i, e.what());
    }
    if (feeds && step.kind != OperatorKind::magnitude && r.masked_fraction > kMaskedWarnFraction) {
      std::ostringstream msg;
      msg << "step " << i << " (" << to_string(step.kind) << " @ " << step.channel_hz
          << " Hz) masks " << 100.0 * r.masked_fraction
          << "% of its frames; the window may not cover the signal structure";
      warn(msg.str());
    }
    current = std::move(r.output);
  }
  return current;
}

}  // namespace

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::magnitude:
      return "mag";
    case OperatorKind::cif:
      return "cif";
    case OperatorKind::lgd:
      return "lgd";
  }
  return "mag";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  if (name == "mag" || name == "magnitude") return OperatorKind::magnitude;
  if (name == "cif") return OperatorKind::cif;
  if (name == "lgd") return OperatorKind::lgd;
  throw std::invalid_argument("unknown operator kind '" + std::string(name) + "'");
}

ScatteringPath ScatteringPath::cascade(std::vector<PathStep> steps, bool remove_mean_after_first) {
  ScatteringPath path{std::move(steps)};
  for (std::size_t i = 1; i < path.steps.size(); ++i)
    path.steps[i].remove_mean = remove_mean_after_first;
  return path;
}

ScatteringPath ScatteringPath::slice(std::size_t from, std::size_t count) const {
  ScatteringPath out;
  if (from >= steps.size()) return out;
  const std::size_t end = count > steps.size() - from ? steps.size() : from + count;
  out.steps.assign(steps.begin() + static_cast<std::ptrdiff_t>(from),
                   steps.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

ScatteringError::ScatteringError(std::size_t step_index, const std::string& what)
    : std::invalid_argument("scattering step " + std::to_string(step_index) + ": " + what),
      step_index_(step_index) {}

SampledSignal u_mag(const SampledSignal& x, const PathStep& step) {
  PathStep s = step;
  s.kind = OperatorKind::magnitude;
  return run_step(x, s).output;
}

SampledSignal u_cif(const SampledSignal& x, const PathStep& step) {
  PathStep s = step;
  s.kind = OperatorKind::cif;
  return run_step(x, s).output;
}

SampledSignal u_lgd(const SampledSignal& x, const PathStep& step) {
  PathStep s = step;
  s.kind = OperatorKind::lgd;
  return run_step(x, s).output;
}

SampledSignal apply_step(const SampledSignal& x, const PathStep& step) {
  return run_step(x, step).output;
}

SampledSignal scatter(const SampledSignal& x, const ScatteringPath& path) {
  if (path.empty()) throw std::invalid_argument("scattering path must not be empty");
  return run_prefix(x, path, false);
}

LayerOutput layer(const SampledSignal& x, const ScatteringPath& prefix, const LayerSpec& spec) {
  const std::size_t final_index = prefix.size();
  SampledSignal y = prefix.empty() ? x : run_prefix(x, prefix, true);

  LayerOutput out;
  out.kind = spec.kind;
  out.prefix = prefix.steps;
  out.mask_threshold = spec.mask_threshold;
  try {
    if (!spec.window) throw std::invalid_argument("final layer has no window");
    if (!prefix.empty() && spec.remove_mean) y = remove_mean(y);

    if (spec.kind == OperatorKind::magnitude) {
      const TFMatrix tf = dgt(y, *spec.window,
                              GaborParams{spec.hop, spec.n_channels,
                                          Convention::frequency_invariant},
                              WindowPart::g, spec.frames);
      out.info = tf.info;
      out.values = Grid<double>(tf.coeffs.channels(), tf.coeffs.frames());
      for (std::size_t i = 0; i < tf.coeffs.size(); ++i)
        out.values.data()[i] = std::abs(tf.coeffs.data()[i]);
      out.magnitude = out.values;
      out.mask = Grid<std::uint8_t>(tf.coeffs.channels(), tf.coeffs.frames(), 1);
      return out;
    }

    const PhaseDerivParams params{spec.hop, spec.n_channels, spec.mask_threshold,
                                  PhaseDerivMode::relative, spec.frames};
    PhaseDerivMap map = spec.kind == OperatorKind::cif ? cif_f(y, *spec.window, params)
                                                       : lgd_t(y, *spec.window, params);
    out.info = map.info;
    out.values = std::move(map.values);
    out.magnitude = std::move(map.magnitude);
    out.mask = std::move(map.mask);
  } catch (const ScatteringError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScatteringError(final_index, e.what());
  }
  return out;
}

std::optional<double> extract_zero_crossing(const LayerOutput& l, std::size_t frame) {
  if (l.kind == OperatorKind::magnitude)
    throw std::invalid_argument("zero crossings are defined for CIF/LGD layers only");
  if (frame >= l.values.frames()) throw std::invalid_argument("frame out of range");

  const std::size_t M = l.info.n_channels;
  const std::size_t half = (M + 1) / 2;  // channels strictly below fs/2
  std::optional<std::size_t> peak;
  for (std::size_t m = 0; m < half; ++m) {
    if (!l.valid(m, frame)) continue;
    if (!peak || l.magnitude(m, frame) > l.magnitude(*peak, frame)) peak = m;
  }
  if (!peak) return std::nullopt;

  std::size_t lo = *peak;
  std::size_t hi = *peak;
  while (lo > 0 && l.valid(lo - 1, frame)) --lo;
  while (hi + 1 < half && l.valid(hi + 1, frame)) ++hi;

  const double spacing = l.info.channel_spacing();
  const double peak_pos = static_cast<double>(*peak);
  std::optional<double> best;
  for (std::size_t m = lo; m < hi; ++m) {
    const double v0 = l.values(m, frame);
    const double v1 = l.values(m + 1, frame);
    if (!(v0 > 0.0 && v1 <= 0.0)) continue;
    const double pos = static_cast<double>(m) + v0 / (v0 - v1);
    if (!best || std::abs(pos - peak_pos) < std::abs(*best - peak_pos)) best = pos;
  }
  if (!best) return std::nullopt;
  return *best * spacing;
}

std::optional<double> extract_peak(const LayerOutput& l, std::size_t frame) {
  if (frame >= l.values.frames()) throw std::invalid_argument("frame out of range");
  const std::size_t half = (l.info.n_channels + 1) / 2;
  std::optional<std::size_t> peak;
  for (std::size_t m = 1; m < half; ++m) {
    if (!l.valid(m, frame)) continue;
    if (!peak || l.magnitude(m, frame) > l.magnitude(*peak, frame)) peak = m;
  }
  if (!peak) return std::nullopt;
  return l.info.channel_freq(*peak);
}

void check_comb_support(const WindowTriple& w, double fundamental_hz, double rel_threshold) {
  if (!(fundamental_hz > 0.0)) throw std::invalid_argument("comb fundamental must be positive");
  const auto [lo, hi] = effective_support(w, rel_threshold);
  const double period = 1.0 / fundamental_hz;
  if (hi - lo < period) {
    std::ostringstream msg;
    msg << "window support " << (hi - lo) << " s is shorter than the comb period " << period
        << " s; LGD would vanish between impulses";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace phasescat
