// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "phasescat/diagnostics.hpp"

namespace phasescat {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTruncationWarnLevel = 1e-8;
}  // namespace

std::span<const double> WindowTriple::part(WindowPart p) const {
  switch (p) {
    case WindowPart::g:
      return g_;
    case WindowPart::g_prime:
      return g_prime_;
    case WindowPart::tg:
      return tg_;
  }
  return g_;
}

std::size_t default_gauss_length(double sigma, double fs) {
  if (!(sigma > 0.0)) throw std::invalid_argument("window sigma must be positive");
  if (!(fs > 0.0)) throw std::invalid_argument("sample rate must be positive");
  auto length = static_cast<std::size_t>(std::ceil(6.0 * sigma * fs));
  length |= 1U;
  return std::max<std::size_t>(length, 3);
}

WindowTriple make_gauss(double sigma, std::size_t length, double fs) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("window sigma must be positive");
  if (!(fs > 0.0) || !std::isfinite(fs))
    throw std::invalid_argument("sample rate must be positive");
  if (length < 3) throw std::invalid_argument("window length must be at least 3");

  WindowTriple w;
  w.sigma_ = sigma;
  w.fs_ = fs;
  w.center_ = length / 2;
  w.g_.resize(length);
  w.g_prime_.resize(length);
  w.tg_.resize(length);

  for (std::size_t j = 0; j < length; ++j) {
    const double t = w.time_of(j);
    const double u = t / sigma;
    const double g = std::exp(-kPi * u * u);
    w.g_[j] = g;
    w.g_prime_[j] = (-2.0 * kPi * t / (sigma * sigma)) * g;
    w.tg_[j] = t * g;
  }
  w.truncation_ = std::max(w.g_.front(), w.g_.back());

  if (w.truncation_ > kTruncationWarnLevel) {
    std::ostringstream msg;
    msg << "Gaussian window sigma=" << sigma << " s truncated at level "
        << w.truncation_ << " (length " << length << " at " << fs << " Hz)";
    warn(msg.str());
  }
  return w;
}

WindowTriple make_gauss(double sigma, double fs) {
  return make_gauss(sigma, default_gauss_length(sigma, fs), fs);
}

std::pair<double, double> effective_support(const WindowTriple& w, double rel_threshold) {
  if (!(rel_threshold > 0.0) || !(rel_threshold < 1.0))
    throw std::invalid_argument("support threshold must lie in (0, 1)");
  const auto g = w.g();
  double peak = 0.0;
  for (double v : g) peak = std::max(peak, std::abs(v));
  const double level = rel_threshold * peak;

  const std::size_t c = w.center_index();
  std::size_t lo = c;
  std::size_t hi = c;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (std::abs(g[j]) >= level) {
      lo = std::min(lo, j);
      hi = std::max(hi, j);
    }
  }
  // Centred interval: the wider side wins.
  const double half = std::max(w.time_of(hi), -w.time_of(lo));
  return {-half, half};
}

}  // namespace phasescat
