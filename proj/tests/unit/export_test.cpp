// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "phasescat/export.hpp"

namespace phasescat {
namespace {

namespace fs = std::filesystem;

class ExportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("phasescat_export_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(ExportTest, RawSignalRoundTrip) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), 4096, 1000);
  const auto files = export_signal(dir_ / "sig", x, ExportFormat::raw);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(fs::file_size(dir_ / "sig.f64"), 1000u * 16u);
  EXPECT_EQ(read_signal_raw(dir_ / "sig"), x);
}

TEST_F(ExportTest, CsvSignalRoundTrip) {
  const auto x = gen_vibrato(880, ModulationLaw::constant_rate(20), 4096, 300);
  export_signal(dir_ / "sig", x, ExportFormat::csv);
  const auto y = read_signal_csv(dir_ / "sig.csv", 4096);
  EXPECT_EQ(y, x);
  const auto imp = gen_impulse(0.001, 4096, 16);
  export_signal(dir_ / "imp", imp, ExportFormat::csv);
  EXPECT_TRUE(read_signal_csv(dir_ / "imp.csv", 4096).is_real());
}

TEST_F(ExportTest, CsvUsesSeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-1.0 / 3.0), "-0.33333333333333331");
  const auto w = make_gauss(0.02, 256);
  export_window(dir_ / "win", w, ExportFormat::csv);
  const std::string text = slurp(dir_ / "win.csv");
  EXPECT_EQ(text.rfind("index,time_s,g,g_prime,tg\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, w.length() + 1);
}

TEST_F(ExportTest, PhaseMapRawLayoutAndSidecar) {
  const auto x = gen_sinusoid(100, 512, 512);
  const auto w = make_gauss(0.05, 512);
  const auto map = cif_f(x, w, {8, 64});
  const auto files = export_phase_map(dir_ / "cif", map, ExportFormat::raw);
  ASSERT_EQ(files.size(), 2u);
  std::ifstream in(dir_ / "cif.f64", std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(bytes.size(), 64u * 64u * 8u);
  // Row-major channel x frame: cell (m=3, n=5) sits at 3 * 64 + 5.
  double v = 0;
  std::memcpy(&v, bytes.data() + (3 * 64 + 5) * 8, 8);
  EXPECT_EQ(v, map.values(3, 5));
  const std::string side = slurp(dir_ / "cif.json");
  EXPECT_NE(side.find("\"kind\": \"cif\""), std::string::npos);
  EXPECT_NE(side.find("\"units\": \"Hz\""), std::string::npos);
  EXPECT_NE(side.find("\"hop\": 8"), std::string::npos);
}

TEST_F(ExportTest, PhaseMapCsv) {
  const auto x = gen_impulse(0.5, 512, 512);
  const auto w = make_gauss(0.05, 512);
  const auto map = lgd_t(x, w, {16, 32});
  export_phase_map(dir_ / "lgd", map, ExportFormat::csv);
  const std::string text = slurp(dir_ / "lgd.csv");
  EXPECT_EQ(text.rfind("channel_freq_hz,frame_time_s,value,valid\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 32u * 32u + 1);
}

TEST_F(ExportTest, TfAndFeatureCsv) {
  const auto x = gen_sinusoid(100, 512, 512);
  const auto w = make_gauss(0.05, 512);
  const auto c = dgt(x, w, {64, 16});
  const auto files = export_tf(dir_ / "tf", c, ExportFormat::csv);
  EXPECT_EQ(slurp(files[0]).rfind("m,n,re,im\n", 0), 0u);
  write_feature_csv(dir_ / "cross.csv", {{0.5, 20.0}, {0.75, std::nullopt}});
  EXPECT_EQ(slurp(dir_ / "cross.csv"), "frame_time_s,crossing_hz,found_flag\n0.5,20,1\n0.75,0,0\n");
}

TEST_F(ExportTest, ReportsIoErrors) {
  EXPECT_THROW(read_signal_raw(dir_ / "missing"), IoError);
  EXPECT_THROW(read_signal_csv(dir_ / "missing.csv", 10), IoError);
  fs::create_directories(dir_);
  std::ofstream(dir_ / "blocker") << "x";
  EXPECT_THROW(export_signal(dir_ / "blocker" / "sig", gen_impulse(0, 8, 8), ExportFormat::csv),
               IoError);
}

TEST(ExportFormat, Parse) {
  EXPECT_EQ(export_format_from_string("csv"), ExportFormat::csv);
  EXPECT_EQ(export_format_from_string("raw"), ExportFormat::raw);
  EXPECT_THROW(export_format_from_string("hdf5"), std::invalid_argument);
}

}  // namespace
}  // namespace phasescat
