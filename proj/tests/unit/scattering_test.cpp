// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "phasescat/diagnostics.hpp"
#include "phasescat/scattering.hpp"

namespace phasescat {
namespace {

constexpr double kFs = 4096;

std::shared_ptr<const WindowTriple> gauss(double sigma, double fs) {
  return std::make_shared<const WindowTriple>(make_gauss(sigma, fs));
}

PathStep step(OperatorKind kind, double hz, double sigma, double fs, std::size_t M) {
  PathStep s;
  s.kind = kind;
  s.channel_hz = hz;
  s.window = gauss(sigma, fs);
  s.n_channels = M;
  return s;
}

// Interior samples at least `margin` seconds from both ends.
std::pair<std::size_t, std::size_t> interior(const SampledSignal& y, double margin) {
  const auto skip = static_cast<std::size_t>(margin * y.sample_rate());
  return {skip, y.size() - skip};
}

TEST(UMag, ZeroSignal) {
  const SampledSignal x(std::vector<Complex>(1024), kFs, true);
  const auto y = u_mag(x, step(OperatorKind::magnitude, 100, 0.02, kFs, 4096));
  for (auto v : y.samples()) ASSERT_EQ(v, Complex{});
  EXPECT_TRUE(y.is_real());
}

TEST(UMag, SinusoidOnChannelGivesWindowSum) {
  const auto x = gen_sinusoid(880, kFs, 4096);
  const auto s = step(OperatorKind::magnitude, 880, 0.02, kFs, 4096);
  const auto y = u_mag(x, s);
  const auto g = s.window->g();
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  ASSERT_EQ(y.size(), 4096u);
  for (auto v : y.samples()) ASSERT_NEAR(v.real(), sum, 1e-10 * sum);
}

TEST(UMag, ImpulseEnvelope) {
  const auto x = gen_impulse(0.5, kFs, 4096);
  const auto s = step(OperatorKind::magnitude, 100, 0.02, kFs, 4096);
  const auto y = u_mag(x, s);
  const auto& w = *s.window;
  const long half = static_cast<long>(w.center_index());
  for (long k = 0; k < 4096; ++k) {
    const long d = k - 2048;
    const double expected = std::abs(d) <= half ? w.g()[static_cast<std::size_t>(half + d)] : 0.0;
    ASSERT_NEAR(y[static_cast<std::size_t>(k)].real(), expected, 1e-14) << k;
  }
}

TEST(UMag, HopDecimates) {
  const auto x = gen_impulse(0.5, kFs, 4096);
  auto s = step(OperatorKind::magnitude, 100, 0.02, kFs, 4096);
  const auto full = u_mag(x, s);
  s.hop = 8;
  const auto dec = u_mag(x, s);
  ASSERT_EQ(dec.size(), 512u);
  EXPECT_EQ(dec.sample_rate(), kFs / 8);
  for (std::size_t k = 0; k < dec.size(); ++k) ASSERT_NEAR(dec[k].real(), full[8 * k].real(), 1e-14);
}

TEST(UCif, SinusoidOffsetIsConstant) {
  const auto x = gen_sinusoid(1000, kFs, 4096);
  const auto y = u_cif(x, step(OperatorKind::cif, 960, 0.02, kFs, 4096));
  for (auto v : y.samples()) ASSERT_NEAR(v.real(), 40.0, 0.5);
}

TEST(UCif, VibratoOscillatesAtModulationRate) {
  // At fs = 4000 one modulation period is exactly 200 samples.
  const double fs = 4000;
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), fs, 8000);
  const auto y = u_cif(x, step(OperatorKind::cif, 880, 0.02, fs, 4000));
  double peak = 0, mean = 0;
  for (std::size_t l = 0; l < y.size(); ++l) {
    ASSERT_NEAR(y[(l + 200) % y.size()].real(), y[l].real(), 1e-9);
    // Half a period later the deviation is mirrored around the carrier.
    ASSERT_NEAR(y[(l + 100) % y.size()].real(), -y[l].real(), 1e-9);
    peak = std::max(peak, std::abs(y[l].real()));
    mean += y[l].real();
  }
  EXPECT_NEAR(mean / static_cast<double>(y.size()), 0.0, 1e-9);
  EXPECT_GT(peak, 20.0);
  EXPECT_LT(peak, 2 * std::numbers::pi * 20 * 1.05);
}

TEST(ULgd, ImpulseIsAffineNearImpulse) {
  const auto x = gen_impulse(0.5, kFs, 4096);
  const auto y = u_lgd(x, step(OperatorKind::lgd, 300, 0.02, kFs, 4096));
  for (std::size_t k = 2048 - 40; k <= 2048 + 40; ++k)
    ASSERT_NEAR(y[k].real(), 0.5 - static_cast<double>(k) / kFs, 1e-9);
}

TEST(ULgd, CombGivesPeriodicSawtooth) {
  const double fs = 4000;
  const auto x = gen_dirac_comb(20, fs, 8000);
  const auto y = u_lgd(x, step(OperatorKind::lgd, 100, 0.02, fs, 4000));
  for (std::size_t l = 0; l < y.size(); ++l)
    ASSERT_NEAR(y[(l + 200) % y.size()].real(), y[l].real(), 1e-9);
  // Around each impulse the delay falls with slope -1.
  for (std::size_t k = 0; k < 40; ++k) {
    for (long d = -20; d <= 20; ++d) {
      const auto l = static_cast<std::size_t>((static_cast<long>(200 * k) + d + 8000) % 8000);
      ASSERT_NEAR(y[l].real(), -static_cast<double>(d) / fs, 1e-6) << k << ' ' << d;
    }
  }
}

TEST(UOps, ZeroSignalIsFullyMasked) {
  const SampledSignal x(std::vector<Complex>(1024), kFs, true);
  for (auto kind : {OperatorKind::cif, OperatorKind::lgd}) {
    const auto y = apply_step(x, step(kind, 100, 0.02, kFs, 4096));
    for (auto v : y.samples()) ASSERT_EQ(v, Complex{});
  }
}

TEST(UOps, RejectsOffGridAndOutOfBandChannels) {
  const auto x = gen_sinusoid(1000, kFs, 4096);
  EXPECT_THROW(u_mag(x, step(OperatorKind::magnitude, 880.5, 0.02, kFs, 4096)),
               std::invalid_argument);
  EXPECT_THROW(u_mag(x, step(OperatorKind::magnitude, 2048, 0.02, kFs, 4096)),
               std::invalid_argument);
  EXPECT_THROW(u_cif(x, step(OperatorKind::cif, -1, 0.02, kFs, 4096)), std::invalid_argument);
}

TEST(Scatter, SingleStepMatchesOperator) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), kFs, 8192);
  for (auto kind : {OperatorKind::magnitude, OperatorKind::cif, OperatorKind::lgd}) {
    const auto s = step(kind, 880, 0.02, kFs, 4096);
    EXPECT_EQ(scatter(x, ScatteringPath{{s}}), apply_step(x, s));
  }
  EXPECT_EQ(scatter(x, ScatteringPath{{step(OperatorKind::cif, 880, 0.02, kFs, 4096)}}),
            u_cif(x, step(OperatorKind::magnitude, 880, 0.02, kFs, 4096)));
  EXPECT_THROW(scatter(x, ScatteringPath{}), std::invalid_argument);
}

TEST(Scatter, AssociativeAtEverySplit) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), kFs, 8192);
  const auto path = ScatteringPath::cascade({step(OperatorKind::cif, 880, 0.02, kFs, 4096),
                                             step(OperatorKind::magnitude, 20, 0.1, kFs, 4096),
                                             step(OperatorKind::cif, 4, 0.2, kFs, 4096)});
  const auto whole = scatter(x, path);
  for (std::size_t split = 1; split < path.size(); ++split) {
    const auto head = scatter(x, path.slice(0, split));
    EXPECT_EQ(scatter(head, path.slice(split)), whole) << split;
  }
}

TEST(Scatter, VibratoSecondCifNearZeroAtModulationRate) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), kFs, 8192);
  const auto path = ScatteringPath::cascade({step(OperatorKind::cif, 880, 0.02, kFs, 4096),
                                             step(OperatorKind::cif, 20, 0.2, kFs, 4096)});
  const auto y = scatter(x, path);
  const auto [a, b] = interior(y, 0.4);
  for (std::size_t l = a; l < b; ++l) ASSERT_NEAR(y[l].real(), 0.0, 1.0) << l;
}

TEST(Scatter, CombMixedGivesFundamentalOffset) {
  const double fs = 4000;
  const auto x = gen_dirac_comb(20, fs, 8000);
  const auto path = ScatteringPath::cascade({step(OperatorKind::lgd, 100, 0.02, fs, 4000),
                                             step(OperatorKind::cif, 15, 0.2, fs, 4000)});
  const auto y = scatter(x, path);
  const auto [a, b] = interior(y, 0.4);
  for (std::size_t l = a; l < b; ++l) ASSERT_NEAR(y[l].real(), 5.0, 1.0) << l;
}

TEST(Scatter, ErrorsCarryStepIndex) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), kFs, 8192);
  const auto path = ScatteringPath::cascade({step(OperatorKind::cif, 880, 0.02, kFs, 4096),
                                             step(OperatorKind::cif, 20.5, 0.2, kFs, 4096)});
  try {
    scatter(x, path);
    FAIL() << "expected ScatteringError";
  } catch (const ScatteringError& e) {
    EXPECT_EQ(e.step_index(), 1u);
  }
  auto decimating = path;
  decimating.steps[0].hop = 2;
  decimating.steps[1].channel_hz = 20;
  try {
    scatter(x, decimating);
    FAIL() << "expected ScatteringError";
  } catch (const ScatteringError& e) {
    EXPECT_EQ(e.step_index(), 0u);
  }
}

TEST(Scatter, WarnsWhenFeedingStepIsMostlyMasked) {
  std::vector<std::string> messages;
  auto previous = set_warning_handler([&](std::string_view m) { messages.emplace_back(m); });
  // A short window cannot bridge the gaps of a 20 Hz comb.
  const double fs = 4000;
  const auto x = gen_dirac_comb(20, fs, 8000);
  scatter(x, ScatteringPath::cascade({step(OperatorKind::lgd, 100, 0.002, fs, 4000),
                                      step(OperatorKind::cif, 15, 0.2, fs, 4000)}));
  set_warning_handler(previous);
  ASSERT_EQ(messages.size(), 1u);
  EXPECT_NE(messages[0].find("step 0"), std::string::npos);
}

TEST(Layer, EmptyPrefixMatchesCif) {
  const auto x = gen_sinusoid(1000, kFs, 4096);
  LayerSpec spec;
  spec.kind = OperatorKind::cif;
  spec.window = gauss(0.02, kFs);
  spec.n_channels = 4096;
  spec.hop = 256;
  const auto l = layer(x, ScatteringPath{}, spec);
  const auto map = cif_f(x, *spec.window, {256, 4096});
  EXPECT_EQ(l.values.data(), map.values.data());
  EXPECT_EQ(l.mask.data(), map.mask.data());
  EXPECT_TRUE(l.prefix.empty());
}

TEST(Layer, VibratoSecondLayerZeroCrossing) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), kFs, 8192);
  LayerSpec spec;
  spec.kind = OperatorKind::cif;
  spec.window = gauss(0.2, kFs);
  spec.n_channels = 4096;
  spec.hop = 256;
  const auto l = layer(x, ScatteringPath{{step(OperatorKind::cif, 880, 0.02, kFs, 4096)}}, spec);
  ASSERT_EQ(l.prefix.size(), 1u);
  std::size_t found = 0, interior_frames = 0;
  for (std::size_t k = 0; k < l.info.n_frames; ++k) {
    const double t = l.info.frame_time(k);
    if (t < 0.4 || t > 2.0 - 0.4) continue;
    ++interior_frames;
    const auto c = extract_zero_crossing(l, k);
    if (c && std::abs(*c - 20.0) <= 1.0) ++found;
  }
  ASSERT_GT(interior_frames, 0u);
  EXPECT_EQ(found, interior_frames);
}

TEST(Layer, MagnitudeLayerRejectsZeroCrossing) {
  const auto x = gen_sinusoid(1000, kFs, 4096);
  LayerSpec spec;
  spec.kind = OperatorKind::magnitude;
  spec.window = gauss(0.02, kFs);
  spec.n_channels = 4096;
  spec.hop = 512;
  const auto l = layer(x, ScatteringPath{}, spec);
  for (auto v : l.values.data()) ASSERT_GE(v, 0.0);
  EXPECT_THROW(extract_zero_crossing(l, 0), std::invalid_argument);
  ASSERT_TRUE(extract_peak(l, 0).has_value());
  EXPECT_EQ(*extract_peak(l, 0), 1000.0);
}

TEST(ZeroCrossing, ConstantPositiveColumnHasNone) {
  LayerOutput l;
  l.kind = OperatorKind::cif;
  l.info.n_channels = 16;
  l.info.fs = 16;
  l.info.hop = 1;
  l.info.signal_length = 1;
  l.info.n_frames = 1;
  l.values = Grid<double>(16, 1, 3.0);
  l.magnitude = Grid<double>(16, 1, 1.0);
  l.mask = Grid<std::uint8_t>(16, 1, 1);
  EXPECT_FALSE(extract_zero_crossing(l, 0).has_value());
  for (std::size_t m = 0; m < 16; ++m) l.values(m, 0) = 5.0 - static_cast<double>(m);
  l.magnitude(4, 0) = 2.0;
  const auto c = extract_zero_crossing(l, 0);
  ASSERT_TRUE(c.has_value());
  EXPECT_DOUBLE_EQ(*c, 5.0);
  l.mask = Grid<std::uint8_t>(16, 1, 0);
  EXPECT_FALSE(extract_zero_crossing(l, 0).has_value());
}

TEST(CombSupport, Validation) {
  EXPECT_NO_THROW(check_comb_support(make_gauss(0.02, 4000), 20));
  EXPECT_THROW(check_comb_support(make_gauss(0.005, 4000), 20), std::invalid_argument);
  EXPECT_THROW(check_comb_support(make_gauss(0.02, 4000), 0), std::invalid_argument);
}

TEST(OperatorKind, Names) {
  EXPECT_EQ(operator_kind_from_string("mag"), OperatorKind::magnitude);
  EXPECT_EQ(operator_kind_from_string("magnitude"), OperatorKind::magnitude);
  EXPECT_EQ(operator_kind_from_string("cif"), OperatorKind::cif);
  EXPECT_EQ(operator_kind_from_string("lgd"), OperatorKind::lgd);
  EXPECT_THROW(operator_kind_from_string("phase"), std::invalid_argument);
  EXPECT_EQ(to_string(OperatorKind::magnitude), "mag");
}

}  // namespace
}  // namespace phasescat
