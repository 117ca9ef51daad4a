// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>

namespace phasescat::detail {

/// Forward complex DFT of a fixed size, out[k] = sum_j in[j] e^{-2 pi i jk/n}.
/// Plans are created once per size and shared; execute() is thread-safe.
class FftPlan {
 public:
  static const FftPlan& forward(std::size_t n);

  std::size_t size() const { return n_; }
  /// in and out must not alias and must each hold size() elements.
  void execute(const std::complex<double>* in, std::complex<double>* out) const;

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan();

 private:
  explicit FftPlan(std::size_t n);
  std::size_t n_;
  void* plan_;
};

}  // namespace phasescat::detail
