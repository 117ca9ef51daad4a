// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "phasescat/gabor.hpp"
#include "phasescat/phase_deriv.hpp"
#include "phasescat/scattering.hpp"
#include "phasescat/signal.hpp"
#include "phasescat/window.hpp"

namespace phasescat::verify {
namespace {

// Experiment grid shared by the vibrato and sinusoid checks.
constexpr double kFs = 4096.0;
constexpr std::size_t kN = 8192;
constexpr std::size_t kChannels = 4096;
constexpr double kSigma1 = 0.02;
constexpr double kSigma2 = 0.2;
constexpr std::size_t kLayerHop = 32;

constexpr double kCombFs = 4000.0;
constexpr std::size_t kCombN = 8000;
constexpr std::size_t kCombChannels = 4000;
constexpr std::size_t kCombLayerHop = 40;
constexpr double kCombF0 = 20.0;

constexpr double kVibratoCarrier = 880.0;
constexpr double kVibratoRate = 20.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<const WindowTriple> gauss(double sigma, double fs) {
  return std::make_shared<const WindowTriple>(make_gauss(sigma, fs));
}

PathStep step(OperatorKind kind, double channel_hz, std::shared_ptr<const WindowTriple> w,
              std::size_t channels) {
  PathStep s;
  s.kind = kind;
  s.channel_hz = channel_hz;
  s.window = std::move(w);
  s.n_channels = channels;
  return s;
}

LayerSpec final_layer(OperatorKind kind, std::shared_ptr<const WindowTriple> w,
                      std::size_t channels, std::size_t hop) {
  LayerSpec spec;
  spec.kind = kind;
  spec.window = std::move(w);
  spec.n_channels = channels;
  spec.hop = hop;
  return spec;
}

SampledSignal constant_vibrato() {
  return gen_vibrato(kVibratoCarrier, ModulationLaw::constant_rate(kVibratoRate), kFs, kN);
}

SampledSignal exponential_vibrato() {
  return gen_vibrato(kVibratoCarrier, ModulationLaw::exponential_rate(kVibratoRate), kFs, kN);
}

SampledSignal comb() { return gen_dirac_comb(kCombF0, kCombFs, kCombN); }

LayerOutput second_layer(const SampledSignal& x, OperatorKind first, double p1, OperatorKind second,
                         double fs, std::size_t channels, std::size_t hop) {
  const auto path =
      ScatteringPath::cascade({step(first, p1, gauss(kSigma1, fs), channels)});
  return layer(x, path, final_layer(second, gauss(kSigma2, fs), channels, hop));
}

LayerOutput vibrato_cif_layer(const SampledSignal& x, double p1) {
  return second_layer(x, OperatorKind::cif, p1, OperatorKind::cif, kFs, kChannels, kLayerHop);
}

LayerOutput comb_mixed_layer(const SampledSignal& x, double p1) {
  return second_layer(x, OperatorKind::lgd, p1, OperatorKind::cif, kCombFs, kCombChannels,
                      kCombLayerHop);
}

/// Stored frames at least two second-layer sigmas away from both ends, so the
/// circular analysis window does not straddle the wrap-around.
std::vector<std::size_t> interior_frames(const LayerOutput& l) {
  const double duration =
      static_cast<double>(l.info.signal_length) / l.info.fs;
  const double margin = 2.0 * kSigma2;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < l.values.frames(); ++k) {
    const double t = l.info.frame_time(k);
    if (t >= margin && t <= duration - margin) out.push_back(k);
  }
  return out;
}

struct CrossingStats {
  std::vector<std::optional<double>> crossings;  // per interior frame
  double hit_fraction = 0.0;
};

CrossingStats crossings_near(const LayerOutput& l, const std::vector<std::size_t>& frames,
                             double target_hz, double tol_hz,
                             const std::function<std::optional<double>(const LayerOutput&,
                                                                       std::size_t)>& extract) {
  CrossingStats stats;
  std::size_t hits = 0;
  for (std::size_t k : frames) {
    const auto c = extract(l, k);
    stats.crossings.push_back(c);
    if (c && std::abs(*c - target_hz) <= tol_hz) ++hits;
  }
  stats.hit_fraction =
      frames.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(frames.size());
  return stats;
}

/// Fraction of frames where all runs found a crossing and they agree pairwise
/// within tol_hz.
double agreement_fraction(const std::vector<CrossingStats>& runs, double tol_hz) {
  if (runs.empty() || runs.front().crossings.empty()) return 0.0;
  const std::size_t n = runs.front().crossings.size();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = 1e300, hi = -1e300;
    bool all = true;
    for (const auto& r : runs) {
      if (!r.crossings[i]) {
        all = false;
        break;
      }
      lo = std::min(lo, *r.crossings[i]);
      hi = std::max(hi, *r.crossings[i]);
    }
    if (all && hi - lo <= tol_hz) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(n);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// --- 1 ---------------------------------------------------------------------
CheckResult check_sinusoid_cif(const Tolerances& tol) {
  CheckResult r{1, "affine CIF of a sinusoid", false, 0, tol.sinusoid_cif_max_err_hz, "<=", {}, 0};
  const auto start = Clock::now();
  const double xi0 = 1000.0;
  const auto x = gen_sinusoid(xi0, kFs, kN);
  const auto w = make_gauss(kSigma1, kFs);
  PhaseDerivParams p;
  p.n_channels = kChannels;
  p.frames = {kN / 2, 1};
  const auto map = cif_f(x, w, p);

  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t m = 0; m < kChannels; ++m) {
    const double f = map.info.channel_freq(m);
    if (std::abs(f - xi0) > 100.0 || !map.valid(m, 0)) continue;
    worst = std::max(worst, std::abs(map.values(m, 0) - (xi0 - f)));
    ++used;
  }
  r.seconds = seconds_since(start);
  r.measured = worst;
  r.passed = used > 0 && worst <= tol.sinusoid_cif_max_err_hz && r.seconds < tol.runtime_fast_s;
  r.detail = "max |cif - (1000 - f)| over " + std::to_string(used) +
             " valid channels within 100 Hz; runtime " + fmt(r.seconds) + " s (< " +
             fmt(tol.runtime_fast_s) + ")";
  return r;
}

// --- 2 ---------------------------------------------------------------------
CheckResult check_impulse_lgd(const Tolerances& tol) {
  CheckResult r{2, "affine LGD of an impulse", false, 0, tol.impulse_lgd_max_err_s, "<=", {}, 0};
  const auto start = Clock::now();
  const double tau0 = 0.5;
  const auto x = gen_impulse(tau0, kFs, kN);
  const auto w = make_gauss(kSigma1, kFs);
  const auto reach = static_cast<std::size_t>(std::floor(kSigma1 * kFs));
  const auto centre = static_cast<std::size_t>(tau0 * kFs);
  PhaseDerivParams p;
  p.n_channels = kChannels;
  p.frames = {centre - reach, 2 * reach + 1};
  const auto map = lgd_t(x, w, p);

  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < map.values.frames(); ++k) {
    const double t = map.info.frame_time(k);
    if (std::abs(t - tau0) > kSigma1) continue;
    for (std::size_t m = 0; m < kChannels; ++m) {
      if (!map.valid(m, k)) continue;
      worst = std::max(worst, std::abs(map.values(m, k) - (tau0 - t)));
      ++used;
    }
  }
  r.seconds = seconds_since(start);
  r.measured = worst;
  r.passed = used > 0 && worst <= tol.impulse_lgd_max_err_s && r.seconds < tol.runtime_fast_s;
  r.detail = "max |lgd - (0.5 - t)| over " + std::to_string(used) +
             " valid cells with |t - 0.5| <= sigma; runtime " + fmt(r.seconds) + " s";
  return r;
}

// --- 3 ---------------------------------------------------------------------
double oracle_agreement(const PhaseDerivMap& ratio, const PhaseDerivMap& oracle, double scale,
                        double rel, std::size_t& mutual) {
  std::size_t ok = 0;
  mutual = 0;
  for (std::size_t i = 0; i < ratio.values.size(); ++i) {
    if (!ratio.mask.data()[i] || !oracle.mask.data()[i]) continue;
    ++mutual;
    if (std::abs(ratio.values.data()[i] - oracle.values.data()[i]) / scale <= rel) ++ok;
  }
  return mutual ? static_cast<double>(ok) / static_cast<double>(mutual) : 0.0;
}

CheckResult check_oracle(const Tolerances& tol) {
  CheckResult r{3, "Ratio formulas vs phase-difference oracle", false, 0,
                tol.oracle_min_fraction, ">=", {}, 0};
  const auto start = Clock::now();
  const auto w = make_gauss(kSigma1, kFs);
  PhaseDerivParams p;
  p.n_channels = kChannels;
  p.frames = {kN / 2 - 256, 512};

  const auto vib = constant_vibrato();
  std::size_t cif_mutual = 0;
  const double cif_frac = oracle_agreement(cif_f(vib, w, p),
                                           phase_deriv_oracle(vib, w, p, PhaseDerivKind::cif),
                                           kFs, tol.oracle_rel, cif_mutual);

  const auto imp = gen_impulse(0.5, kFs, kN);
  p.frames = {static_cast<std::size_t>(0.5 * kFs) - 256, 512};
  std::size_t lgd_mutual = 0;
  const double lgd_frac = oracle_agreement(
      lgd_t(imp, w, p), phase_deriv_oracle(imp, w, p, PhaseDerivKind::lgd),
      static_cast<double>(kChannels) / kFs, tol.oracle_rel, lgd_mutual);

  r.seconds = seconds_since(start);
  r.measured = std::min(cif_frac, lgd_frac);
  r.passed = cif_mutual > 0 && lgd_mutual > 0 && r.measured >= tol.oracle_min_fraction;
  r.detail = "CIF (vibrato): " + fmt(100 * cif_frac) + "% of " + std::to_string(cif_mutual) +
             " cells within " + fmt(tol.oracle_rel) + " fs; LGD (impulse): " +
             fmt(100 * lgd_frac) + "% of " + std::to_string(lgd_mutual) + " cells within " +
             fmt(tol.oracle_rel) + " M/fs";
  return r;
}

// --- 4 ---------------------------------------------------------------------
double max_abs(const Grid<Complex>& g) {
  double peak = 0.0;
  for (const auto& v : g.data()) peak = std::max(peak, std::abs(v));
  return peak;
}

CheckResult check_covariance(const Tolerances& tol) {
  CheckResult r{4, "STFT convention covariances", false, 0, 1.0, "<=", {}, 0};
  const auto start = Clock::now();
  constexpr std::size_t L = 256;
  constexpr double fs = 256.0;
  constexpr std::size_t M = 64;
  constexpr std::size_t hop = 4;

  std::mt19937_64 rng(20210823);
  std::normal_distribution<double> normal;
  std::vector<Complex> samples(L);
  for (auto& s : samples) s = {normal(rng), normal(rng)};
  const SampledSignal x(samples, fs, false);
  const auto w = make_gauss(0.05, fs);

  // Frequency covariance: modulating by 4k cycles per signal length shifts the
  // frequency-invariant channels by k (M = L / 4).
  const std::size_t k = 5;
  std::vector<Complex> mod(L);
  for (std::size_t l = 0; l < L; ++l)
    mod[l] = samples[l] * std::polar(1.0, 2.0 * std::numbers::pi *
                                              static_cast<double>((4 * k * l) % L) /
                                              static_cast<double>(L));
  const GaborParams fi{hop, M, Convention::frequency_invariant};
  const GaborParams ti{hop, M, Convention::time_invariant};
  const auto c = dgt(x, w, fi);
  const auto c_mod = dgt(SampledSignal(mod, fs, false), w, fi);
  const double scale = max_abs(c.coeffs);
  double freq_err = 0.0;
  for (std::size_t n = 0; n < c.n_frames(); ++n)
    for (std::size_t m = 0; m < M; ++m)
      freq_err = std::max(freq_err, std::abs(c_mod.coeffs(m, n) - c.coeffs((m + M - k) % M, n)));
  freq_err /= scale;

  // Time covariance: shifting by j hops moves time-invariant frames by j.
  const std::size_t j = 7;
  std::vector<Complex> shifted(L);
  for (std::size_t l = 0; l < L; ++l) shifted[(l + j * hop) % L] = samples[l];
  const auto t = dgt(x, w, ti);
  const auto t_shift = dgt(SampledSignal(shifted, fs, false), w, ti);
  const std::size_t frames = t.n_frames();
  double time_err = 0.0;
  for (std::size_t n = 0; n < frames; ++n)
    for (std::size_t m = 0; m < M; ++m)
      time_err = std::max(time_err,
                          std::abs(t_shift.coeffs(m, n) - t.coeffs(m, (n + frames - j) % frames)));
  time_err /= max_abs(t.coeffs);

  // Conversion: twice is the identity; once matches the other convention.
  const auto back = convention_convert(convention_convert(c));
  double roundtrip = 0.0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    roundtrip = std::max(roundtrip, std::abs(back.coeffs.data()[i] - c.coeffs.data()[i]));
  roundtrip /= scale;
  const auto converted = convention_convert(c);
  double convert_err = 0.0;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i)
    convert_err =
        std::max(convert_err, std::abs(converted.coeffs.data()[i] - t.coeffs.data()[i]));
  convert_err /= scale;

  r.seconds = seconds_since(start);
  // Worst error expressed as a fraction of its own bound.
  r.measured = std::max({freq_err / tol.covariance_rel, time_err / tol.covariance_rel,
                         convert_err / tol.covariance_rel, roundtrip / tol.roundtrip_rel});
  if (!std::isfinite(r.measured)) r.measured = 1e300;
  r.passed = freq_err <= tol.covariance_rel && time_err <= tol.covariance_rel &&
             convert_err <= tol.covariance_rel && roundtrip <= tol.roundtrip_rel;
  r.detail = "frequency covariance " + fmt(freq_err) + ", time covariance " + fmt(time_err) +
             ", convert vs time-invariant " + fmt(convert_err) + " (bound " +
             fmt(tol.covariance_rel) + "); roundtrip " + fmt(roundtrip) + " (bound " +
             fmt(tol.roundtrip_rel) + "); measured = worst error / bound";
  return r;
}

// --- 5 ---------------------------------------------------------------------
CheckResult check_vibrato_layer(const Tolerances& tol) {
  CheckResult r{5, "vibrato rate in the 2nd CIF layer", false, 0,
                tol.crossing_min_fraction, ">=", {}, 0};
  const auto start = Clock::now();
  const auto x = constant_vibrato();
  std::vector<CrossingStats> runs;
  double worst = 1.0;
  std::string per_p1;
  double spacing = 0.0;
  for (double p1 : {860.0, 880.0, 900.0}) {
    const auto l = vibrato_cif_layer(x, p1);
    spacing = l.info.channel_spacing();
    const auto frames = interior_frames(l);
    runs.push_back(crossings_near(l, frames, kVibratoRate, tol.channel_tolerance * spacing,
                                  extract_zero_crossing));
    worst = std::min(worst, runs.back().hit_fraction);
    per_p1 += "p1=" + fmt(p1) + ": " + fmt(100 * runs.back().hit_fraction) + "% ";
  }
  const double agree = agreement_fraction(runs, tol.channel_tolerance * spacing);
  r.seconds = seconds_since(start);
  r.measured = std::min(worst, agree);
  r.passed = worst >= tol.crossing_min_fraction && agree >= tol.crossing_min_fraction &&
             r.seconds < tol.runtime_slow_s;
  r.detail = "interior frames with crossing at 20 Hz +- " + fmt(tol.channel_tolerance * spacing) +
             " Hz: " + per_p1 + "; p1 agreement " + fmt(100 * agree) + "%; runtime " +
             fmt(r.seconds) + " s";
  return r;
}

// --- 6 ---------------------------------------------------------------------
CheckResult check_exponential(const Tolerances& tol) {
  CheckResult r{6, "Exponential vibrato: non-decreasing crossings", false, 0,
                tol.monotone_max_violation_fraction, "<=", {}, 0};
  const auto start = Clock::now();
  const auto l = vibrato_cif_layer(exponential_vibrato(), kVibratoCarrier);
  const auto frames = interior_frames(l);
  const double spacing = l.info.channel_spacing();

  std::size_t jitter = 0;
  std::size_t hard = 0;
  std::optional<double> prev;
  std::size_t missing = 0;
  for (std::size_t k : frames) {
    const auto c = extract_zero_crossing(l, k);
    if (!c) {
      ++missing;
      continue;
    }
    if (prev && *c < *prev) {
      if (*prev - *c <= tol.channel_tolerance * spacing)
        ++jitter;
      else
        ++hard;
    }
    prev = c;
  }
  const double frac = frames.empty() ? 1.0
                                     : static_cast<double>(jitter + missing) /
                                           static_cast<double>(frames.size());
  r.seconds = seconds_since(start);
  r.measured = frac;
  r.passed = !frames.empty() && hard == 0 && frac <= tol.monotone_max_violation_fraction;
  std::string range;
  if (!frames.empty()) {
    const auto first = extract_zero_crossing(l, frames.front());
    const auto last = extract_zero_crossing(l, frames.back());
    range = "; crossing " + (first ? fmt(*first) : std::string("none")) + " -> " +
            (last ? fmt(*last) : std::string("none")) + " Hz";
  }
  r.detail = std::to_string(frames.size()) + " interior frames, " + std::to_string(jitter) +
             " one-channel decreases, " + std::to_string(hard) + " larger decreases, " +
             std::to_string(missing) + " missing" + range;
  return r;
}

// --- 7 ---------------------------------------------------------------------
CheckResult check_comb_layer(const Tolerances& tol) {
  CheckResult r{7, "comb fundamental via mixed scattering", false, 0,
                tol.crossing_min_fraction, ">=", {}, 0};
  const auto start = Clock::now();
  const auto x = comb();
  check_comb_support(make_gauss(kSigma1, kCombFs), kCombF0);
  std::vector<CrossingStats> runs;
  double worst = 1.0;
  std::string per_p1;
  double spacing = 0.0;
  for (double p1 : {20.0, 60.0, 100.0}) {
    const auto l = comb_mixed_layer(x, p1);
    spacing = l.info.channel_spacing();
    runs.push_back(crossings_near(l, interior_frames(l), kCombF0, tol.channel_tolerance * spacing,
                                  extract_zero_crossing));
    worst = std::min(worst, runs.back().hit_fraction);
    per_p1 += "p1=" + fmt(p1) + ": " + fmt(100 * runs.back().hit_fraction) + "% ";
  }
  const double agree = agreement_fraction(runs, tol.channel_tolerance * spacing);
  r.seconds = seconds_since(start);
  r.measured = std::min(worst, agree);
  r.passed = worst >= tol.crossing_min_fraction && agree >= tol.crossing_min_fraction &&
             r.seconds < tol.runtime_slow_s;
  r.detail = "interior frames with crossing at 20 Hz: " + per_p1 + "; p1 agreement " +
             fmt(100 * agree) + "%; runtime " + fmt(r.seconds) + " s";
  return r;
}

// --- 8 ---------------------------------------------------------------------
CheckResult check_magnitude(const Tolerances& tol) {
  CheckResult r{8, "2nd-order magnitude scattering peaks", false, 0,
                tol.crossing_min_fraction, ">=", {}, 0};
  const auto start = Clock::now();
  // At p1 = 880 Hz (the carrier) the magnitude repeats every half modulation
  // period, so its 2nd layer peaks at 40 Hz. An off-centre channel near the top
  // of the frequency excursion sees one bump per period.
  const double vib_p1 = 1000.0;
  const auto vib = second_layer(constant_vibrato(), OperatorKind::magnitude, vib_p1,
                                OperatorKind::magnitude, kFs, kChannels, kLayerHop);
  const auto vib_stats = crossings_near(vib, interior_frames(vib), kVibratoRate,
                                        tol.channel_tolerance * vib.info.channel_spacing(),
                                        extract_peak);
  const double comb_p1 = 20.0;
  const auto cmb = second_layer(comb(), OperatorKind::magnitude, comb_p1, OperatorKind::magnitude,
                                kCombFs, kCombChannels, kCombLayerHop);
  const auto comb_stats = crossings_near(cmb, interior_frames(cmb), kCombF0,
                                         tol.channel_tolerance * cmb.info.channel_spacing(),
                                         extract_peak);
  r.seconds = seconds_since(start);
  r.measured = std::min(vib_stats.hit_fraction, comb_stats.hit_fraction);
  r.passed = r.measured >= tol.crossing_min_fraction;
  r.detail = "vibrato (mag@" + fmt(vib_p1) + "): " + fmt(100 * vib_stats.hit_fraction) +
             "% of interior frames peak at 20 Hz; comb (mag@" + fmt(comb_p1) +
             "): " + fmt(100 * comb_stats.hit_fraction) + "%";
  return r;
}

// --- 9 ---------------------------------------------------------------------
struct Totality {
  std::size_t non_finite = 0;
  std::size_t dirty_masked = 0;
  std::size_t cells = 0;
};

void scan(Totality& t, const Grid<double>& values, const Grid<std::uint8_t>& mask) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values.data()[i];
    if (!std::isfinite(v)) ++t.non_finite;
    if (!mask.data()[i] && v != 0.0) ++t.dirty_masked;
    ++t.cells;
  }
}

void scan(Totality& t, const SampledSignal& s) {
  for (const auto& v : s.samples()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) ++t.non_finite;
    ++t.cells;
  }
}

double invariance_error(const Grid<double>& a, const Grid<std::uint8_t>& ma,
                        const Grid<double>& b, const Grid<std::uint8_t>& mb, std::size_t& mutual) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!ma.data()[i] || !mb.data()[i]) continue;
    ++mutual;
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

CheckResult check_robustness(const Tolerances& tol) {
  CheckResult r{9, "Robustness: totality and amplitude invariance", false, 0,
                tol.amplitude_abs, "<=", {}, 0};
  const auto start = Clock::now();
  const Complex c = 3.7 * std::polar(1.0, 0.4);
  Totality tot;
  double inv = 0.0;
  std::size_t mutual = 0;
  std::string parts;

  const auto w = make_gauss(kSigma1, kFs);
  PhaseDerivParams p;
  p.n_channels = kChannels;

  {
    const auto x = gen_sinusoid(1000.0, kFs, kN);
    p.frames = {kN / 2 - 64, 128};
    const auto a = cif_f(x, w, p);
    const auto b = cif_f(x.scaled(c), w, p);
    scan(tot, a.values, a.mask);
    scan(tot, b.values, b.mask);
    const double e = invariance_error(a.values, a.mask, b.values, b.mask, mutual);
    inv = std::max(inv, e);
    parts += "cif sinusoid " + fmt(e) + "; ";
    const auto o = phase_deriv_oracle(x, w, p, PhaseDerivKind::cif);
    scan(tot, o.values, o.mask);
  }
  {
    const auto x = gen_impulse(0.5, kFs, kN);
    p.frames = {kN / 4 - 64, 128};
    const auto a = lgd_t(x, w, p);
    const auto b = lgd_t(x.scaled(c), w, p);
    scan(tot, a.values, a.mask);
    scan(tot, b.values, b.mask);
    const double e = invariance_error(a.values, a.mask, b.values, b.mask, mutual);
    inv = std::max(inv, e);
    parts += "lgd impulse " + fmt(e) + "; ";
    const auto o = phase_deriv_oracle(x, w, p, PhaseDerivKind::lgd);
    scan(tot, o.values, o.mask);
  }
  {
    const auto x = constant_vibrato();
    const auto a = vibrato_cif_layer(x, kVibratoCarrier);
    const auto b = vibrato_cif_layer(x.scaled(c), kVibratoCarrier);
    scan(tot, a.values, a.mask);
    scan(tot, b.values, b.mask);
    const double e = invariance_error(a.values, a.mask, b.values, b.mask, mutual);
    inv = std::max(inv, e);
    parts += "vibrato cif layer " + fmt(e) + "; ";
    const auto e1 = exponential_vibrato();
    const auto le = vibrato_cif_layer(e1, kVibratoCarrier);
    scan(tot, le.values, le.mask);
  }
  {
    const auto x = comb();
    const auto a = comb_mixed_layer(x, kCombF0);
    const auto b = comb_mixed_layer(x.scaled(c), kCombF0);
    scan(tot, a.values, a.mask);
    scan(tot, b.values, b.mask);
    const double e = invariance_error(a.values, a.mask, b.values, b.mask, mutual);
    inv = std::max(inv, e);
    parts += "comb mixed layer " + fmt(e) + "; ";
    const auto path = ScatteringPath::cascade(
        {step(OperatorKind::lgd, kCombF0, gauss(kSigma1, kCombFs), kCombChannels),
         step(OperatorKind::cif, kCombF0, gauss(kSigma2, kCombFs), kCombChannels)});
    scan(tot, scatter(x, path));
    const auto mag = second_layer(x, OperatorKind::magnitude, kCombF0, OperatorKind::magnitude,
                                  kCombFs, kCombChannels, kCombLayerHop);
    scan(tot, mag.values, mag.mask);
  }

  r.seconds = seconds_since(start);
  r.measured = inv;
  r.passed = tot.non_finite == 0 && tot.dirty_masked == 0 && mutual > 0 &&
             inv <= tol.amplitude_abs;
  r.detail = std::to_string(tot.cells) + " cells scanned, " + std::to_string(tot.non_finite) +
             " non-finite, " + std::to_string(tot.dirty_masked) +
             " non-zero masked; max |phase(cx) - phase(x)| at valid cells: " + parts;
  return r;
}

}  // namespace

CheckResult run_check(int id, const Tolerances& tol) {
  try {
    switch (id) {
      case 1:
        return check_sinusoid_cif(tol);
      case 2:
        return check_impulse_lgd(tol);
      case 3:
        return check_oracle(tol);
      case 4:
        return check_covariance(tol);
      case 5:
        return check_vibrato_layer(tol);
      case 6:
        return check_exponential(tol);
      case 7:
        return check_comb_layer(tol);
      case 8:
        return check_magnitude(tol);
      case 9:
        return check_robustness(tol);
      default:
        break;
    }
  } catch (const std::exception& e) {
    CheckResult r;
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.detail = std::string("error: ") + e.what();
    return r;
  }
  throw std::invalid_argument("no acceptance check " + std::to_string(id));
}

std::vector<CheckResult> run_acceptance(const std::vector<int>& ids, const Tolerances& tol) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCheckCount; ++i) todo.push_back(i);
  std::vector<CheckResult> out;
  out.reserve(todo.size());
  for (int id : todo) out.push_back(run_check(id, tol));
  return out;
}

}  // namespace phasescat::verify
