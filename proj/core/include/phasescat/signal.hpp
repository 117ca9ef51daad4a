// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace phasescat {

using Complex = std::complex<double>;

/// Uniformly sampled complex time series. When `is_real()` holds, every
/// imaginary part is exactly zero.
class SampledSignal {
 public:
  SampledSignal() = default;
  /// Throws std::invalid_argument on empty samples, non-positive rate, or a
  /// real flag contradicted by a non-zero imaginary part.
  SampledSignal(std::vector<Complex> samples, double sample_rate, bool is_real);

  static SampledSignal from_real(std::span<const double> values, double sample_rate);

  std::span<const Complex> samples() const { return samples_; }
  const Complex& operator[](std::size_t l) const { return samples_[l]; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate() const { return sample_rate_; }
  bool is_real() const { return is_real_; }
  double duration() const { return static_cast<double>(samples_.size()) / sample_rate_; }

  /// Multiplies every sample by c. The real flag survives only for real c.
  SampledSignal scaled(Complex c) const;

  friend bool operator==(const SampledSignal&, const SampledSignal&) = default;

 private:
  std::vector<Complex> samples_;
  double sample_rate_ = 0.0;
  bool is_real_ = false;
};

/// Phase modulation term gamma(t), in cycles, added to the carrier phase of a
/// vibrato. The instantaneous frequency deviation is gamma'(t) in Hz.
class ModulationLaw {
 public:
  enum class Kind { none, constant_rate, exponential_rate, custom };

  /// gamma(t) = 0.
  static ModulationLaw none();
  /// gamma(t) = sin(2 pi rate t).
  static ModulationLaw constant_rate(double rate_hz);
  /// gamma(t) = sin(2 pi t (rate + e^t)); the modulation rate grows from `rate`.
  static ModulationLaw exponential_rate(double rate_hz);
  /// User-supplied gamma and its derivative.
  static ModulationLaw custom(std::function<double(double)> gamma,
                              std::function<double(double)> gamma_prime,
                              std::vector<double> params = {});

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  const std::vector<double>& params() const { return params_; }

  double gamma(double t) const;
  double gamma_prime(double t) const;

 private:
  Kind kind_ = Kind::none;
  double rate_ = 0.0;
  std::vector<double> params_;
  std::function<double(double)> gamma_;
  std::function<double(double)> gamma_prime_;
};

std::string_view to_string(ModulationLaw::Kind kind);

/// samples[l] = exp(2 pi i f0 l / fs). Requires 0 < f0 < fs/2.
SampledSignal gen_sinusoid(double f0, double fs, std::size_t n);

/// samples[l] = exp(2 pi i (f0 l/fs + gamma(l/fs))). Rejects laws whose peak
/// frequency deviation over the signal pushes f0 past fs/2.
SampledSignal gen_vibrato(double f0, const ModulationLaw& law, double fs, std::size_t n);

/// Unit impulse at sample round(t0 fs).
SampledSignal gen_impulse(double t0, double fs, std::size_t n);

/// Unit impulses at round(k fs / f0) for every k that lands inside the signal.
SampledSignal gen_dirac_comb(double f0, double fs, std::size_t n);

}  // namespace phasescat
