// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace phasescat::detail {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), plan_(nullptr) {
  if (n == 0) throw std::invalid_argument("FFT size must be positive");
  std::vector<std::complex<double>> in(n), out(n);
  // FFTW_ESTIMATE keeps plans (and therefore results) independent of timing.
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                           reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_ == nullptr) throw std::runtime_error("FFTW failed to create a plan");
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

const FftPlan& FftPlan::forward(std::size_t n) {
  // The mutex is constructed before the cache so it outlives the plans.
  auto& mutex = planner_mutex();
  static std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot.reset(new FftPlan(n));
  return *slot;
}

void FftPlan::execute(const std::complex<double>* in, std::complex<double>* out) const {
  // fftw_execute_dft never writes to `in` for out-of-place plans.
  fftw_execute_dft(static_cast<fftw_plan>(plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace phasescat::detail
