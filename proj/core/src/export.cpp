// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat/export.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace phasescat {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

fs::path with_ext(const fs::path& stem, const char* ext) {
  fs::path p = stem;
  p += ext;
  return p;
}

std::ofstream open_out(const fs::path& file, bool binary) {
  if (file.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
  }
  std::ofstream out(file, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw IoError("cannot open " + file.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& file) {
  out.flush();
  if (!out) throw IoError("write failed for " + file.string());
}

class RawWriter {
 public:
  explicit RawWriter(const fs::path& file) : file_(file), out_(open_out(file, true)) {}
  void put(double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xFFU);
    out_.write(reinterpret_cast<const char*>(bytes), 8);
  }
  void close() { finish(out_, file_); }

 private:
  fs::path file_;
  std::ofstream out_;
};

void write_json(const fs::path& file, const json& j) {
  auto out = open_out(file, false);
  out << j.dump(2) << '\n';
  finish(out, file);
}

json grid_json(const GridInfo& info) {
  return json{{"M", info.n_channels},
              {"n_frames", info.n_frames},
              {"first_frame", info.first_frame},
              {"total_frames", info.total_frames()},
              {"hop", info.hop},
              {"fs", info.fs},
              {"signal_length", info.signal_length},
              {"convention", std::string(to_string(info.convention))},
              {"window_sigma", info.window_sigma},
              {"layout", "row-major channel x frame"}};
}

std::vector<fs::path> export_real_grid(const fs::path& stem, const GridInfo& info,
                                       const Grid<double>& values,
                                       const Grid<std::uint8_t>& mask, json meta,
                                       ExportFormat format) {
  const std::size_t M = values.channels();
  const std::size_t frames = values.frames();
  if (format == ExportFormat::csv) {
    const fs::path file = with_ext(stem, ".csv");
    auto out = open_out(file, false);
    out << "channel_freq_hz,frame_time_s,value,valid\n";
    for (std::size_t m = 0; m < M; ++m) {
      const std::string freq = format_number(info.channel_freq(m));
      for (std::size_t k = 0; k < frames; ++k) {
        out << freq << ',' << format_number(info.frame_time(k)) << ','
            << format_number(values(m, k)) << ',' << (mask(m, k) ? 1 : 0) << '\n';
      }
    }
    finish(out, file);
    return {file};
  }
  const fs::path bin = with_ext(stem, ".f64");
  RawWriter raw(bin);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < frames; ++k) raw.put(values(m, k));
  raw.close();
  json sidecar = grid_json(info);
  for (auto& [key, value] : meta.items()) sidecar[key] = value;
  std::size_t valid = 0;
  for (auto v : mask.data()) valid += v ? 1 : 0;
  sidecar["valid_cells"] = valid;
  const fs::path side = with_ext(stem, ".json");
  write_json(side, sidecar);
  return {bin, side};
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExportFormat export_format_from_string(std::string_view name) {
  if (name == "csv") return ExportFormat::csv;
  if (name == "raw") return ExportFormat::raw;
  throw std::invalid_argument("unknown export format '" + std::string(name) + "'");
}

std::vector<fs::path> export_signal(const fs::path& stem, const SampledSignal& x,
                                    ExportFormat format) {
  const auto s = x.samples();
  if (format == ExportFormat::csv) {
    const fs::path file = with_ext(stem, ".csv");
    auto out = open_out(file, false);
    out << "index,re,im\n";
    for (std::size_t l = 0; l < s.size(); ++l)
      out << l << ',' << format_number(s[l].real()) << ',' << format_number(s[l].imag()) << '\n';
    finish(out, file);
    return {file};
  }
  const fs::path bin = with_ext(stem, ".f64");
  RawWriter raw(bin);
  for (const auto& v : s) {
    raw.put(v.real());
    raw.put(v.imag());
  }
  raw.close();
  const fs::path side = with_ext(stem, ".json");
  write_json(side, json{{"n", s.size()}, {"fs", x.sample_rate()}, {"is_real", x.is_real()}});
  return {bin, side};
}

std::vector<fs::path> export_window(const fs::path& stem, const WindowTriple& w,
                                    ExportFormat format) {
  const auto g = w.g();
  const auto gp = w.g_prime();
  const auto tg = w.tg();
  if (format == ExportFormat::csv) {
    const fs::path file = with_ext(stem, ".csv");
    auto out = open_out(file, false);
    out << "index,time_s,g,g_prime,tg\n";
    for (std::size_t j = 0; j < w.length(); ++j)
      out << j << ',' << format_number(w.time_of(j)) << ',' << format_number(g[j]) << ','
          << format_number(gp[j]) << ',' << format_number(tg[j]) << '\n';
    finish(out, file);
    return {file};
  }
  const fs::path bin = with_ext(stem, ".f64");
  RawWriter raw(bin);
  for (std::size_t j = 0; j < w.length(); ++j) {
    raw.put(g[j]);
    raw.put(gp[j]);
    raw.put(tg[j]);
  }
  raw.close();
  const fs::path side = with_ext(stem, ".json");
  write_json(side, json{{"length", w.length()},
                        {"fs", w.fs()},
                        {"sigma", w.sigma()},
                        {"center_index", w.center_index()},
                        {"layout", "interleaved g,g_prime,tg"}});
  return {bin, side};
}

std::vector<fs::path> export_tf(const fs::path& stem, const TFMatrix& c, ExportFormat format) {
  const std::size_t M = c.coeffs.channels();
  const std::size_t frames = c.coeffs.frames();
  if (format == ExportFormat::csv) {
    const fs::path file = with_ext(stem, ".csv");
    auto out = open_out(file, false);
    out << "m,n,re,im\n";
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t k = 0; k < frames; ++k) {
        const Complex v = c.coeffs(m, k);
        out << m << ',' << c.info.frame_index(k) << ',' << format_number(v.real()) << ','
            << format_number(v.imag()) << '\n';
      }
    finish(out, file);
    return {file};
  }
  const fs::path bin = with_ext(stem, ".f64");
  RawWriter raw(bin);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t k = 0; k < frames; ++k) {
      raw.put(c.coeffs(m, k).real());
      raw.put(c.coeffs(m, k).imag());
    }
  raw.close();
  json sidecar = grid_json(c.info);
  sidecar["window_part"] = c.window_part == WindowPart::g         ? "g"
                           : c.window_part == WindowPart::g_prime ? "g_prime"
                                                                  : "tg";
  const fs::path side = with_ext(stem, ".json");
  write_json(side, sidecar);
  return {bin, side};
}

std::vector<fs::path> export_phase_map(const fs::path& stem, const PhaseDerivMap& map,
                                       ExportFormat format) {
  json meta{{"kind", std::string(to_string(map.kind))},
            {"mode", std::string(to_string(map.mode))},
            {"mask_threshold", map.mask_threshold},
            {"units", map.kind == PhaseDerivKind::cif ? "Hz" : "s"}};
  return export_real_grid(stem, map.info, map.values, map.mask, std::move(meta), format);
}

std::vector<fs::path> export_layer(const fs::path& stem, const LayerOutput& layer,
                                   ExportFormat format) {
  json prefix = json::array();
  for (const auto& step : layer.prefix)
    prefix.push_back(json{{"kind", std::string(to_string(step.kind))},
                          {"channel_hz", step.channel_hz},
                          {"sigma", step.window ? step.window->sigma() : 0.0},
                          {"n_channels", step.n_channels},
                          {"hop", step.hop},
                          {"remove_mean", step.remove_mean}});
  json meta{{"kind", std::string(to_string(layer.kind))},
            {"mode", "relative"},
            {"mask_threshold", layer.mask_threshold},
            {"prefix", prefix}};
  return export_real_grid(stem, layer.info, layer.values, layer.mask, std::move(meta), format);
}

fs::path write_feature_csv(const fs::path& file, const std::vector<FrameFeature>& rows,
                           std::string_view column) {
  auto out = open_out(file, false);
  out << "frame_time_s," << column << ",found_flag\n";
  for (const auto& r : rows)
    out << format_number(r.frame_time) << ',' << (r.value ? format_number(*r.value) : "0")
        << ',' << (r.value ? 1 : 0) << '\n';
  finish(out, file);
  return file;
}

SampledSignal read_signal_raw(const fs::path& stem) {
  const fs::path side = with_ext(stem, ".json");
  std::ifstream meta_in(side);
  if (!meta_in) throw IoError("cannot open " + side.string());
  json meta;
  try {
    meta_in >> meta;
  } catch (const json::exception& e) {
    throw IoError("malformed sidecar " + side.string() + ": " + e.what());
  }
  const auto n = meta.at("n").get<std::size_t>();
  const auto rate = meta.at("fs").get<double>();
  const bool is_real = meta.at("is_real").get<bool>();

  const fs::path bin = with_ext(stem, ".f64");
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw IoError("cannot open " + bin.string());
  std::vector<Complex> samples(n);
  auto get = [&]() {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw IoError("truncated " + bin.string());
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return std::bit_cast<double>(bits);
  };
  for (auto& s : samples) {
    const double re = get();
    const double im = get();
    s = {re, im};
  }
  return SampledSignal(std::move(samples), rate, is_real);
}

SampledSignal read_signal_csv(const fs::path& file, double sample_rate) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open " + file.string());
  std::string line;
  std::getline(in, line);
  if (line != "index,re,im") throw IoError("unexpected header in " + file.string());
  std::vector<Complex> samples;
  bool real = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, re, im;
    if (!std::getline(row, idx, ',') || !std::getline(row, re, ',') || !std::getline(row, im))
      throw IoError("malformed row in " + file.string());
    const double imag = std::stod(im);
    real = real && imag == 0.0;
    samples.emplace_back(std::stod(re), imag);
  }
  return SampledSignal(std::move(samples), sample_rate, real);
}

}  // namespace phasescat
