// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat_cli/app.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasescat/export.hpp"
#include "phasescat/phase_deriv.hpp"
#include "phasescat/scattering.hpp"
#include "phasescat/verify.hpp"
#include "phasescat_cli/config.hpp"

namespace phasescat::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

RunConfig load(const Options& opt) {
  RunConfig cfg = opt.config.empty() ? RunConfig{} : load_config(opt.config);
  if (!opt.out.empty()) cfg.out_dir = opt.out;
  if (!opt.format.empty()) cfg.format = opt.format;
  if (opt.seed) cfg.seed = opt.seed;
  resolve(cfg);
  return cfg;
}

SampledSignal make_signal(const RunConfig& cfg) {
  const auto& s = cfg.signal;
  if (s.kind == "sinusoid") return gen_sinusoid(s.f0, s.fs, s.n);
  if (s.kind == "impulse") return gen_impulse(s.t0, s.fs, s.n);
  if (s.kind == "dirac-comb") return gen_dirac_comb(s.f0, s.fs, s.n);
  if (s.kind == "file") {
    SampledSignal x = s.file.ends_with(".csv") ? read_signal_csv(s.file, s.fs)
                                               : read_signal_raw(s.file);
    if (x.sample_rate() != s.fs)
      throw ConfigError("signal file rate " + std::to_string(x.sample_rate()) +
                        " Hz differs from signal.fs");
    return x;
  }
  const ModulationLaw law = s.law == "none"       ? ModulationLaw::none()
                            : s.law == "constant" ? ModulationLaw::constant_rate(s.rate)
                                                  : ModulationLaw::exponential_rate(s.rate);
  return gen_vibrato(s.f0, law, s.fs, s.n);
}

void write_manifest(const RunConfig& cfg, std::string_view command) {
  const fs::path file = fs::path(cfg.out_dir) / "manifest.json";
  fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::trunc);
  out << to_json(cfg, command);
  out.flush();
  if (!out) throw IoError("cannot write " + file.string());
}

void report_files(const std::vector<fs::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

int cmd_synth(const RunConfig& cfg) {
  const SampledSignal x = make_signal(cfg);
  report_files(export_signal(fs::path(cfg.out_dir) / "signal", x,
                             export_format_from_string(cfg.format)));
  write_manifest(cfg, "synth");
  return kOk;
}

int cmd_analyze(const RunConfig& cfg) {
  const SampledSignal x = make_signal(cfg);
  const auto window = std::make_shared<const WindowTriple>(make_gauss(cfg.sigma, x.sample_rate()));
  const FrameRange frames{cfg.first_frame, cfg.n_frames};
  const ExportFormat format = export_format_from_string(cfg.format);
  const fs::path dir(cfg.out_dir);
  std::vector<fs::path> files;

  if (cfg.analysis == "dgt-mag") {
    LayerSpec spec;
    spec.kind = OperatorKind::magnitude;
    spec.window = window;
    spec.n_channels = cfg.channels;
    spec.hop = cfg.hop;
    spec.frames = frames;
    const LayerOutput l = layer(x, ScatteringPath{}, spec);
    files = export_layer(dir / "dgt_mag", l, format);
  } else {
    const PhaseDerivParams params{cfg.hop, cfg.channels, cfg.mask_threshold,
                                  cfg.mode == "absolute" ? PhaseDerivMode::absolute
                                                         : PhaseDerivMode::relative,
                                  frames};
    PhaseDerivMap map;
    std::string name = cfg.analysis;
    if (cfg.analysis == "cif") {
      map = cif_f(x, *window, params);
    } else if (cfg.analysis == "lgd") {
      map = lgd_t(x, *window, params);
    } else {
      const auto kind = cfg.analysis == "oracle-cif" ? PhaseDerivKind::cif : PhaseDerivKind::lgd;
      map = phase_deriv_oracle(x, *window, params, kind);
      name = cfg.analysis == "oracle-cif" ? "oracle_cif" : "oracle_lgd";
    }
    std::cout << name << ": " << map.valid_count() << " of " << map.values.size()
              << " cells valid\n";
    files = export_phase_map(dir / name, map, format);
  }
  report_files(files);
  write_manifest(cfg, "analyze");
  return kOk;
}

PathStep make_step(const ParsedStep& p, std::size_t index, const RunConfig& cfg, double fs) {
  PathStep s;
  s.kind = p.kind;
  s.channel_hz = p.channel_hz.value_or(0.0);
  const double sigma = p.sigma.value_or(index == 0 ? cfg.sigma : cfg.sigma2);
  s.window = std::make_shared<const WindowTriple>(make_gauss(sigma, fs));
  s.n_channels = cfg.channels;
  s.hop = 1;
  s.mask_threshold = cfg.mask_threshold;
  return s;
}

int cmd_scatter(const RunConfig& cfg) {
  const auto parsed = parse_path(cfg.path);
  const SampledSignal x = make_signal(cfg);
  const double fs = x.sample_rate();

  std::vector<PathStep> steps;
  for (std::size_t i = 0; i < parsed.size(); ++i) steps.push_back(make_step(parsed[i], i, cfg, fs));
  if (cfg.signal.kind == "dirac-comb" && steps.front().kind == OperatorKind::lgd) {
    try {
      check_comb_support(*steps.front().window, cfg.signal.f0, cfg.mask_threshold);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  const ExportFormat format = export_format_from_string(cfg.format);
  const fs::path dir(cfg.out_dir);
  std::vector<fs::path> files;

  if (parsed.back().channel_hz) {
    steps.back().hop = cfg.hop;
    const SampledSignal y = scatter(x, ScatteringPath::cascade(steps, cfg.remove_mean));
    files = export_signal(dir / "scatter", y, format);
  } else {
    const PathStep final_step = steps.back();
    steps.pop_back();
    const ScatteringPath prefix = ScatteringPath::cascade(steps, cfg.remove_mean);
    LayerSpec spec;
    spec.kind = final_step.kind;
    spec.window = final_step.window;
    spec.n_channels = cfg.channels;
    spec.hop = cfg.hop;
    spec.mask_threshold = cfg.mask_threshold;
    spec.remove_mean = cfg.remove_mean;
    spec.frames = {cfg.first_frame, cfg.n_frames};
    const LayerOutput l = layer(x, prefix, spec);
    files = export_layer(dir / "layer", l, format);

    const bool magnitude = spec.kind == OperatorKind::magnitude;
    std::vector<FrameFeature> rows;
    std::vector<double> found;
    for (std::size_t k = 0; k < l.info.n_frames; ++k) {
      const auto v = magnitude ? extract_peak(l, k) : extract_zero_crossing(l, k);
      rows.push_back({l.info.frame_time(k), v});
      if (v) found.push_back(*v);
    }
    const std::string column = magnitude ? "peak_hz" : "crossing_hz";
    files.push_back(write_feature_csv(dir / (magnitude ? "peaks.csv" : "crossings.csv"), rows,
                                      column));
    std::cout << column << ": found at " << found.size() << " of " << rows.size() << " frames";
    if (!found.empty()) {
      std::nth_element(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(found.size() / 2),
                       found.end());
      std::cout << ", median " << format_number(found[found.size() / 2]) << " Hz";
    }
    std::cout << '\n';
  }
  report_files(files);
  write_manifest(cfg, "scatter");
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const auto results = verify::run_acceptance(cfg.checks, cfg.tolerances);
  nlohmann::json report;
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"id", r.id},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"measured", r.measured},
                      {"relation", r.relation},
                      {"bound", r.bound},
                      {"detail", r.detail},
                      {"seconds", r.seconds}});
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": measured "
              << format_number(r.measured) << ' ' << r.relation << ' ' << format_number(r.bound)
              << '\n';
  }
  report["passed"] = all;
  report["checks"] = checks;
  const fs::path file = fs::path(cfg.out_dir) / "report.json";
  fs::create_directories(file.parent_path());
  {
    std::ofstream out(file, std::ios::trunc);
    out << report.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("cannot write " + file.string());
  }
  std::cout << "wrote " << file.string() << '\n';
  write_manifest(cfg, "verify");
  return all ? kOk : kVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Phase-derivative scattering toolkit"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON run configuration");
    sub->add_option("--out", opt.out, "output directory (overrides output.dir)");
    sub->add_option("--format", opt.format, "csv or raw (overrides output.format)")
        ->check(CLI::IsMember({"csv", "raw"}));
    sub->add_option("--seed", opt.seed, "reserved; synthesis is deterministic");
  };
  auto* synth = app.add_subcommand("synth", "generate a test signal");
  auto* analyze = app.add_subcommand("analyze", "STFT magnitude, CIF, LGD or oracle grid");
  auto* scat = app.add_subcommand("scatter", "scattering path or layer sweep");
  auto* ver = app.add_subcommand("verify", "run the acceptance checks");
  for (auto* sub : {synth, analyze, scat, ver}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    const RunConfig cfg = load(opt);
    if (synth->parsed()) return cmd_synth(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (scat->parsed()) return cmd_scatter(cfg);
    return cmd_verify(cfg);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace phasescat::cli
