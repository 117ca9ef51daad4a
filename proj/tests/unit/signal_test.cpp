// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "phasescat/signal.hpp"

namespace phasescat {
namespace {

std::vector<std::size_t> impulse_positions(const SampledSignal& x) {
  std::vector<std::size_t> pos;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (x[l] != Complex{}) pos.push_back(l);
  }
  return pos;
}

TEST(SampledSignal, RejectsInvalidConstruction) {
  EXPECT_THROW(SampledSignal({}, 10.0, false), std::invalid_argument);
  EXPECT_THROW(SampledSignal({Complex{1, 0}}, 0.0, false), std::invalid_argument);
  EXPECT_THROW(SampledSignal({Complex{1, 1}}, 10.0, true), std::invalid_argument);
  EXPECT_NO_THROW(SampledSignal({Complex{1, 1}}, 10.0, false));
}

TEST(SampledSignal, ScaledKeepsRealFlagOnlyForRealFactor) {
  const auto x = gen_impulse(0.0, 8.0, 8);
  EXPECT_TRUE(x.scaled(2.0).is_real());
  EXPECT_FALSE(x.scaled(Complex{0, 1}).is_real());
  EXPECT_EQ(x.scaled(Complex{0, 1})[0], Complex(0, 1));
}

TEST(Sinusoid, KnownSamples) {
  const auto x = gen_sinusoid(1000, 4096, 4096);
  EXPECT_EQ(x[0], Complex(1, 0));
  EXPECT_EQ(x[1024], Complex(1, 0));
  EXPECT_FALSE(x.is_real());
  double energy = 0;
  for (auto v : x.samples()) energy += std::norm(v);
  EXPECT_NEAR(energy, 4096.0, 1e-9);
}

TEST(Sinusoid, RejectsAliasedFrequency) {
  EXPECT_THROW(gen_sinusoid(2048, 4096, 16), std::invalid_argument);
  EXPECT_THROW(gen_sinusoid(0, 4096, 16), std::invalid_argument);
  EXPECT_THROW(gen_sinusoid(-5, 4096, 16), std::invalid_argument);
  EXPECT_THROW(gen_sinusoid(100, 4096, 0), std::invalid_argument);
}

TEST(Vibrato, UnimodularAndStartsAtOne) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), 4096, 8192);
  EXPECT_EQ(x[0], Complex(1, 0));
  for (auto v : x.samples()) ASSERT_NEAR(std::abs(v), 1.0, 1e-14);
}

TEST(Vibrato, PhaseSlopeAtOriginMatchesInstantaneousFrequency) {
  const double fs = 4096;
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), fs, 64);
  // gamma'' vanishes at 0, so the one-sided difference is second-order there.
  const double slope = std::arg(x[1] * std::conj(x[0])) / (2 * std::numbers::pi) * fs;
  const double expected = 880 + 2 * std::numbers::pi * 20;
  EXPECT_NEAR(slope / expected, 1.0, 1e-3);
}

TEST(Vibrato, NoneLawEqualsSinusoid) {
  const auto a = gen_vibrato(1000, ModulationLaw::none(), 4096, 4096);
  const auto b = gen_sinusoid(1000, 4096, 4096);
  EXPECT_EQ(a, b);
}

TEST(Vibrato, RejectsExcessiveDeviation) {
  EXPECT_THROW(gen_vibrato(1900, ModulationLaw::constant_rate(40), 4096, 4096),
               std::invalid_argument);
}

TEST(Vibrato, ExponentialLawDerivative) {
  const auto law = ModulationLaw::exponential_rate(20);
  for (double t : {0.0, 0.3, 1.1, 1.9}) {
    const double h = 1e-6;
    const double fd = (law.gamma(t + h) - law.gamma(t - h)) / (2 * h);
    EXPECT_NEAR(law.gamma_prime(t), fd, 1e-4 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Generators, Pure) {
  const auto law = ModulationLaw::exponential_rate(20);
  EXPECT_EQ(gen_vibrato(880, law, 4096, 8192), gen_vibrato(880, law, 4096, 8192));
  EXPECT_EQ(gen_dirac_comb(20, 4096, 4096), gen_dirac_comb(20, 4096, 4096));
  EXPECT_EQ(gen_impulse(0.5, 4096, 4096), gen_impulse(0.5, 4096, 4096));
}

TEST(Impulse, Placement) {
  const auto x = gen_impulse(0.5, 4096, 4096);
  EXPECT_TRUE(x.is_real());
  EXPECT_EQ(impulse_positions(x), std::vector<std::size_t>{2048});
  EXPECT_EQ(x[2048], Complex(1, 0));
  const Complex sum = std::accumulate(x.samples().begin(), x.samples().end(), Complex{});
  EXPECT_EQ(sum, Complex(1, 0));
  EXPECT_EQ(gen_impulse(0.0, 4096, 4096)[0], Complex(1, 0));
}

TEST(Impulse, RejectsOutOfRange) {
  EXPECT_THROW(gen_impulse(-0.1, 4096, 4096), std::invalid_argument);
  EXPECT_THROW(gen_impulse(1.0, 4096, 4096), std::invalid_argument);
}

TEST(DiracComb, IntegerPeriod) {
  const auto x = gen_dirac_comb(20, 4000, 4000);
  const auto pos = impulse_positions(x);
  ASSERT_EQ(pos.size(), 20u);
  for (std::size_t k = 0; k < pos.size(); ++k) EXPECT_EQ(pos[k], 200 * k);
  for (auto p : pos) EXPECT_EQ(x[p], Complex(1, 0));
}

TEST(DiracComb, CountWhenRateDivisible) {
  // Impulses at multiples of 200 below n, i.e. ceil(n / 200) of them.
  for (std::size_t n : {3999u, 4000u, 4001u, 8000u, 123u}) {
    const auto pos = impulse_positions(gen_dirac_comb(20, 4000, n));
    EXPECT_EQ(pos.size(), (n + 199) / 200) << "n = " << n;
  }
}

TEST(DiracComb, FractionalPeriodSpacing) {
  const auto pos = impulse_positions(gen_dirac_comb(20, 4096, 4096));
  ASSERT_EQ(pos.size(), 20u);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    EXPECT_EQ(pos[k], static_cast<std::size_t>(std::llround(k * 204.8)));
    EXPECT_LE(std::abs(static_cast<double>(pos[k]) - k * 204.8), 0.5);
  }
  for (std::size_t k = 1; k < pos.size(); ++k) {
    const auto d = pos[k] - pos[k - 1];
    EXPECT_TRUE(d == 204 || d == 205) << d;
  }
}

TEST(DiracComb, RejectsSubNyquistPeriod) {
  EXPECT_THROW(gen_dirac_comb(3000, 4000, 100), std::invalid_argument);
  EXPECT_THROW(gen_dirac_comb(0, 4000, 100), std::invalid_argument);
}

}  // namespace
}  // namespace phasescat
