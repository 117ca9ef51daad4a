// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace phasescat {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i cycles), with the integer part dropped first so that whole
// cycle counts land exactly on 1 + 0i.
Complex unit_phasor(double cycles) {
  const double frac = cycles - std::floor(cycles);
  if (frac == 0.0) return {1.0, 0.0};
  return std::polar(1.0, kTwoPi * frac);
}

void check_rate_and_length(double fs, std::size_t n) {
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw std::invalid_argument("sample rate must be positive and finite");
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
}

void check_carrier(double f0, double fs) {
  if (!(f0 > 0.0) || !(f0 < fs / 2.0))
    throw std::invalid_argument("carrier frequency " + std::to_string(f0) +
                                " Hz outside (0, fs/2) for fs = " + std::to_string(fs));
}

}  // namespace

SampledSignal::SampledSignal(std::vector<Complex> samples, double sample_rate, bool is_real)
    : samples_(std::move(samples)), sample_rate_(sample_rate), is_real_(is_real) {
  if (samples_.empty()) throw std::invalid_argument("signal must have at least one sample");
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_))
    throw std::invalid_argument("sample rate must be positive and finite");
  if (is_real_) {
    for (const auto& s : samples_) {
      if (s.imag() != 0.0)
        throw std::invalid_argument("signal flagged real has a non-zero imaginary part");
    }
  }
}

SampledSignal SampledSignal::from_real(std::span<const double> values, double sample_rate) {
  std::vector<Complex> samples(values.begin(), values.end());
  return SampledSignal(std::move(samples), sample_rate, true);
}

SampledSignal SampledSignal::scaled(Complex c) const {
  std::vector<Complex> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [c](const Complex& s) { return s * c; });
  const bool real = is_real_ && c.imag() == 0.0;
  if (real) {
    for (auto& s : out) s.imag(0.0);
  }
  return SampledSignal(std::move(out), sample_rate_, real);
}

ModulationLaw ModulationLaw::none() { return ModulationLaw{}; }

ModulationLaw ModulationLaw::constant_rate(double rate_hz) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("modulation rate must be positive");
  ModulationLaw law;
  law.kind_ = Kind::constant_rate;
  law.rate_ = rate_hz;
  return law;
}

ModulationLaw ModulationLaw::exponential_rate(double rate_hz) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("modulation rate must be positive");
  ModulationLaw law;
  law.kind_ = Kind::exponential_rate;
  law.rate_ = rate_hz;
  return law;
}

ModulationLaw ModulationLaw::custom(std::function<double(double)> gamma,
                                    std::function<double(double)> gamma_prime,
                                    std::vector<double> params) {
  if (!gamma || !gamma_prime)
    throw std::invalid_argument("custom modulation law needs gamma and its derivative");
  ModulationLaw law;
  law.kind_ = Kind::custom;
  law.gamma_ = std::move(gamma);
  law.gamma_prime_ = std::move(gamma_prime);
  law.params_ = std::move(params);
  return law;
}

double ModulationLaw::gamma(double t) const {
  switch (kind_) {
    case Kind::none:
      return 0.0;
    case Kind::constant_rate:
      return std::sin(kTwoPi * rate_ * t);
    case Kind::exponential_rate:
      return std::sin(kTwoPi * t * (rate_ + std::exp(t)));
    case Kind::custom:
      return gamma_(t);
  }
  return 0.0;
}

double ModulationLaw::gamma_prime(double t) const {
  switch (kind_) {
    case Kind::none:
      return 0.0;
    case Kind::constant_rate:
      return kTwoPi * rate_ * std::cos(kTwoPi * rate_ * t);
    case Kind::exponential_rate: {
      const double e = std::exp(t);
      return kTwoPi * (rate_ + e * (1.0 + t)) * std::cos(kTwoPi * t * (rate_ + e));
    }
    case Kind::custom:
      return gamma_prime_(t);
  }
  return 0.0;
}

std::string_view to_string(ModulationLaw::Kind kind) {
  switch (kind) {
    case ModulationLaw::Kind::none:
      return "none";
    case ModulationLaw::Kind::constant_rate:
      return "constant-rate";
    case ModulationLaw::Kind::exponential_rate:
      return "exponential-rate";
    case ModulationLaw::Kind::custom:
      return "custom";
  }
  return "none";
}

SampledSignal gen_sinusoid(double f0, double fs, std::size_t n) {
  return gen_vibrato(f0, ModulationLaw::none(), fs, n);
}

SampledSignal gen_vibrato(double f0, const ModulationLaw& law, double fs, std::size_t n) {
  check_rate_and_length(fs, n);
  check_carrier(f0, fs);

  double peak_deviation = 0.0;
  if (law.kind() != ModulationLaw::Kind::none) {
    for (std::size_t l = 0; l < n; ++l) {
      const double t = static_cast<double>(l) / fs;
      peak_deviation = std::max(peak_deviation, std::abs(law.gamma_prime(t)));
    }
  }
  if (!std::isfinite(peak_deviation) || f0 + peak_deviation > fs / 2.0)
    throw std::invalid_argument("vibrato peak frequency " + std::to_string(f0 + peak_deviation) +
                                " Hz exceeds fs/2 = " + std::to_string(fs / 2.0));

  std::vector<Complex> samples(n);
  for (std::size_t l = 0; l < n; ++l) {
    const double carrier = f0 * static_cast<double>(l) / fs;
    const double mod = law.kind() == ModulationLaw::Kind::none
                           ? 0.0
                           : law.gamma(static_cast<double>(l) / fs);
    samples[l] = unit_phasor(carrier + mod);
  }
  return SampledSignal(std::move(samples), fs, false);
}

SampledSignal gen_impulse(double t0, double fs, std::size_t n) {
  check_rate_and_length(fs, n);
  const double duration = static_cast<double>(n) / fs;
  if (!(t0 >= 0.0) || !(t0 < duration))
    throw std::invalid_argument("impulse time outside [0, n/fs)");
  const auto l = static_cast<std::size_t>(std::llround(t0 * fs));
  if (l >= n) throw std::invalid_argument("impulse time rounds past the last sample");
  std::vector<Complex> samples(n);
  samples[l] = 1.0;
  return SampledSignal(std::move(samples), fs, true);
}

SampledSignal gen_dirac_comb(double f0, double fs, std::size_t n) {
  check_rate_and_length(fs, n);
  if (!(f0 > 0.0)) throw std::invalid_argument("comb fundamental must be positive");
  if (fs / f0 < 2.0) throw std::invalid_argument("comb period shorter than two samples");
  std::vector<Complex> samples(n);
  for (long long k = 0;; ++k) {
    const long long l = std::llround(static_cast<double>(k) * fs / f0);
    if (l >= static_cast<long long>(n)) break;
    samples[static_cast<std::size_t>(l)] = 1.0;
  }
  return SampledSignal(std::move(samples), fs, true);
}

}  // namespace phasescat
