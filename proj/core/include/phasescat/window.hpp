// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace phasescat {

/// Which of the three sampled windows to analyse with.
enum class WindowPart { g, g_prime, tg };

/// A sampled Gaussian g(t) = exp(-pi (t/sigma)^2) together with its analytic
/// derivative g'(t) (units 1/s) and the time-weighted window t g(t) (units s).
/// Sample j sits at t = (j - center_index) / fs. Immutable once built.
class WindowTriple {
 public:
  std::span<const double> g() const { return g_; }
  std::span<const double> g_prime() const { return g_prime_; }
  std::span<const double> tg() const { return tg_; }
  std::span<const double> part(WindowPart p) const;

  double sigma() const { return sigma_; }
  double fs() const { return fs_; }
  std::size_t length() const { return g_.size(); }
  std::size_t center_index() const { return center_; }
  /// Time of sample j in seconds.
  double time_of(std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(center_)) / fs_;
  }
  /// Largest |g| at the two outermost samples, relative to g(0) = 1.
  double truncation_level() const { return truncation_; }

 private:
  friend WindowTriple make_gauss(double sigma, std::size_t length, double fs);

  std::vector<double> g_;
  std::vector<double> g_prime_;
  std::vector<double> tg_;
  double sigma_ = 0.0;
  double fs_ = 0.0;
  std::size_t center_ = 0;
  double truncation_ = 0.0;
};

/// Smallest odd length covering 6 sigma of total width at rate fs.
std::size_t default_gauss_length(double sigma, double fs);

/// Samples g, g' and t g on `length` points centred at length / 2. Rejects
/// sigma <= 0 or length < 3; warns when the edge value exceeds 1e-8.
WindowTriple make_gauss(double sigma, std::size_t length, double fs);

/// make_gauss with default_gauss_length.
WindowTriple make_gauss(double sigma, double fs);

/// Smallest centred interval [t_lo, t_hi] outside which |g| falls below
/// rel_threshold * max |g|. Endpoints are sample times.
std::pair<double, double> effective_support(const WindowTriple& w, double rel_threshold);

}  // namespace phasescat
