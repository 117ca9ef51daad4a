// Copyright 2026 The phasescat Authors
// SPDX-License-Identifier: Apache-2.0

#include "phasescat_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "phasescat/export.hpp"

namespace phasescat::cli {
namespace {

using json = nlohmann::json;
using Setter = std::function<void(const json&)>;

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0))
        throw ConfigError("");
    }
    return v.get<T>();
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type: " + v.dump());
  }
}

void apply_object(const json& obj, const std::string& where,
                  const std::map<std::string, Setter>& setters) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
    }
    it->second(value);
  }
}

template <typename T>
Setter bind_key(T& field, std::string key) {
  return [&field, key](const json& v) { field = get_as<T>(v, key); };
}

std::map<std::string, double*> tolerance_fields(verify::Tolerances& t) {
  return {{"sinusoid_cif_max_err_hz", &t.sinusoid_cif_max_err_hz},
          {"impulse_lgd_max_err_s", &t.impulse_lgd_max_err_s},
          {"oracle_rel", &t.oracle_rel},
          {"oracle_min_fraction", &t.oracle_min_fraction},
          {"covariance_rel", &t.covariance_rel},
          {"roundtrip_rel", &t.roundtrip_rel},
          {"crossing_min_fraction", &t.crossing_min_fraction},
          {"monotone_max_violation_fraction", &t.monotone_max_violation_fraction},
          {"channel_tolerance", &t.channel_tolerance},
          {"amplitude_abs", &t.amplitude_abs},
          {"runtime_fast_s", &t.runtime_fast_s},
          {"runtime_slow_s", &t.runtime_slow_s}};
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  RunConfig cfg;
  std::string command;
  std::map<std::string, Setter> top{
      {"signal",
       [&](const json& v) {
         SignalSpec& s = cfg.signal;
         apply_object(v, "signal",
                      {{"kind", bind_key(s.kind, "signal.kind")},
                       {"f0", bind_key(s.f0, "signal.f0")},
                       {"fs", bind_key(s.fs, "signal.fs")},
                       {"n", bind_key(s.n, "signal.n")},
                       {"law", bind_key(s.law, "signal.law")},
                       {"rate", bind_key(s.rate, "signal.rate")},
                       {"t0", bind_key(s.t0, "signal.t0")},
                       {"file", bind_key(s.file, "signal.file")}});
       }},
      {"sigma", bind_key(cfg.sigma, "sigma")},
      {"sigma2", bind_key(cfg.sigma2, "sigma2")},
      {"M", bind_key(cfg.channels, "M")},
      {"hop", bind_key(cfg.hop, "hop")},
      {"mask_threshold", bind_key(cfg.mask_threshold, "mask_threshold")},
      {"analysis", bind_key(cfg.analysis, "analysis")},
      {"mode", bind_key(cfg.mode, "mode")},
      {"first_frame", bind_key(cfg.first_frame, "first_frame")},
      {"n_frames", bind_key(cfg.n_frames, "n_frames")},
      {"path", bind_key(cfg.path, "path")},
      {"remove_mean", bind_key(cfg.remove_mean, "remove_mean")},
      {"output",
       [&](const json& v) {
         apply_object(v, "output",
                      {{"dir", bind_key(cfg.out_dir, "output.dir")},
                       {"format", bind_key(cfg.format, "output.format")}});
       }},
      {"seed",
       [&](const json& v) {
         if (v.is_null()) {
           cfg.seed.reset();
         } else {
           cfg.seed = get_as<std::uint64_t>(v, "seed");
         }
       }},
      {"checks",
       [&](const json& v) {
         if (!v.is_array()) throw ConfigError("'checks' must be an array of check ids");
         cfg.checks.clear();
         for (const auto& id : v) cfg.checks.push_back(get_as<int>(id, "checks[]"));
       }},
      {"tolerances",
       [&](const json& v) {
         std::map<std::string, Setter> setters;
         for (auto& [name, field] : tolerance_fields(cfg.tolerances))
           setters.emplace(name, bind_key(*field, "tolerances." + name));
         apply_object(v, "tolerances", setters);
       }},
      // Written into manifests; accepted so a manifest can be fed back in.
      {"command", bind_key(command, "command")},
  };
  apply_object(root, "", top);
  return cfg;
}

RunConfig load_config(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void resolve(RunConfig& cfg) {
  const auto& s = cfg.signal;
  if (!(s.fs > 0.0)) throw ConfigError("signal.fs must be positive");
  if (cfg.channels == 0) {
    if (s.fs != std::round(s.fs)) throw ConfigError("set M explicitly for a non-integer fs");
    cfg.channels = static_cast<std::size_t>(std::llround(s.fs));
  }
  if (cfg.channels < 2) throw ConfigError("M must be at least 2");
  if (cfg.hop < 1) throw ConfigError("hop must be at least 1");
  if (!(cfg.sigma > 0.0) || !(cfg.sigma2 > 0.0)) throw ConfigError("sigmas must be positive");
  if (!(cfg.mask_threshold > 0.0 && cfg.mask_threshold < 1.0))
    throw ConfigError("mask_threshold must lie in (0, 1)");
  if (cfg.format != "csv" && cfg.format != "raw")
    throw ConfigError("output.format must be csv or raw");
  if (cfg.mode != "relative" && cfg.mode != "absolute")
    throw ConfigError("mode must be relative or absolute");
  static const std::vector<std::string> kinds{"sinusoid", "vibrato", "impulse", "dirac-comb", "file"};
  if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end())
    throw ConfigError("unknown signal.kind '" + s.kind + "'");
  if (s.law != "none" && s.law != "constant" && s.law != "exponential")
    throw ConfigError("unknown signal.law '" + s.law + "'");
  if (s.kind == "file" && s.file.empty()) throw ConfigError("signal.file is required for kind file");
  static const std::vector<std::string> analyses{"dgt-mag", "cif", "lgd", "oracle-cif", "oracle-lgd"};
  if (std::find(analyses.begin(), analyses.end(), cfg.analysis) == analyses.end())
    throw ConfigError("unknown analysis '" + cfg.analysis + "'");
  for (int id : cfg.checks)
    if (id < 1 || id > verify::kCheckCount)
      throw ConfigError("check id " + std::to_string(id) + " outside 1.." +
                        std::to_string(verify::kCheckCount));
}

std::string to_json(const RunConfig& cfg, std::string_view command) {
  const auto& s = cfg.signal;
  json tol = json::object();
  verify::Tolerances t = cfg.tolerances;
  for (auto& [name, field] : tolerance_fields(t)) tol[name] = *field;
  json j{{"command", std::string(command)},
         {"signal",
          {{"kind", s.kind},
           {"f0", s.f0},
           {"fs", s.fs},
           {"n", s.n},
           {"law", s.law},
           {"rate", s.rate},
           {"t0", s.t0},
           {"file", s.file}}},
         {"sigma", cfg.sigma},
         {"sigma2", cfg.sigma2},
         {"M", cfg.channels},
         {"hop", cfg.hop},
         {"mask_threshold", cfg.mask_threshold},
         {"analysis", cfg.analysis},
         {"mode", cfg.mode},
         {"first_frame", cfg.first_frame},
         {"n_frames", cfg.n_frames},
         {"path", cfg.path},
         {"remove_mean", cfg.remove_mean},
         {"output", {{"dir", cfg.out_dir}, {"format", cfg.format}}},
         {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)},
         {"checks", cfg.checks},
         {"tolerances", tol}};
  return j.dump(2) + "\n";
}

std::vector<ParsedStep> parse_path(std::string_view text) {
  std::vector<ParsedStep> steps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string item(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw ConfigError("empty step in path '" + std::string(text) + "'");

    ParsedStep step;
    std::string head = item;
    const auto colon = item.find(':');
    if (colon != std::string::npos) {
      head = item.substr(0, colon);
      const std::string sig = item.substr(colon + 1);
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(sig, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != sig.size() || !(value > 0.0))
        throw ConfigError("bad sigma '" + sig + "' in path step '" + item + "'");
      step.sigma = value;
    }
    const auto at = head.find('@');
    const std::string kind = head.substr(0, at);
    try {
      step.kind = operator_kind_from_string(kind);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (at != std::string::npos) {
      const std::string ch = head.substr(at + 1);
      std::size_t used = 0;
      double value = 0;
      try {
        value = std::stod(ch, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != ch.size() || ch.empty())
        throw ConfigError("bad channel '" + ch + "' in path step '" + item + "'");
      step.channel_hz = value;
    }
    steps.push_back(step);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!steps[i].channel_hz)
      throw ConfigError("only the last path step may omit its channel (step " +
                        std::to_string(i) + ")");
  return steps;
}

}  // namespace phasescat::cli
