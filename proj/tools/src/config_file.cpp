/*
 * Copyright 2026 The rddce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "rddce/errors.hpp"

namespace rddce::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_seed(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected an unsigned 64-bit integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  if (trim(text).empty()) return values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_double(key, trim(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return values;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

using Setter = std::function<void(std::string_view, std::string_view, sim::SimConfig&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"Nc", [](auto k, auto v, auto& c) { c.nc = parse_count(k, v); }},
      {"symbols_per_frame", [](auto k, auto v, auto& c) { c.symbols_per_frame = parse_count(k, v); }},
      {"frames", [](auto k, auto v, auto& c) { c.frames = parse_count(k, v); }},
      {"samples", [](auto k, auto v, auto& c) { c.samples = parse_count(k, v); }},
      {"snr_db", [](auto k, auto v, auto& c) { c.snr_db = parse_double(k, v); }},
      {"lambda", [](auto k, auto v, auto& c) { c.lambda = parse_double(k, v); }},
      {"channel", [](auto, auto v, auto& c) { c.channel = std::string(v); }},
      {"profile_delays_ns", [](auto k, auto v, auto& c) { c.custom_delays_ns = parse_list(k, v); }},
      {"profile_powers_db", [](auto k, auto v, auto& c) { c.custom_powers_db = parse_list(k, v); }},
      {"sample_period_ns", [](auto k, auto v, auto& c) { c.sample_period_ns = parse_double(k, v); }},
      {"method", [](auto, auto v, auto& c) { c.method = estimators::parse_method(v); }},
      {"N0", [](auto k, auto v, auto& c) { c.rddce.n0 = parse_count(k, v); }},
      {"N1", [](auto k, auto v, auto& c) { c.rddce.n1 = parse_count(k, v); }},
      {"N2", [](auto k, auto v, auto& c) { c.rddce.n2 = parse_count(k, v); }},
      {"N_taps", [](auto k, auto v, auto& c) { c.rddce.n_taps = parse_count(k, v); }},
      {"N_w", [](auto k, auto v, auto& c) { c.rddce.n_w = parse_count(k, v); }},
      {"N_iter", [](auto k, auto v, auto& c) { c.rddce.n_iter = parse_count(k, v); }},
      {"K_keep", [](auto k, auto v, auto& c) { c.rddce.k_keep = parse_count(k, v); }},
      {"metric", [](auto, auto v, auto& c) { c.rddce.metric = estimators::parse_metric(v); }},
      {"max_redraws", [](auto k, auto v, auto& c) { c.rddce.max_redraws = parse_count(k, v); }},
      {"redecide", [](auto k, auto v, auto& c) { c.rddce.redecide = parse_bool(k, v); }},
      {"gamma", [](auto k, auto v, auto& c) { c.gamma = parse_double(k, v); }},
      {"seed", [](auto k, auto v, auto& c) { c.seed = parse_seed(k, v); }},
  };
  return table;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  (void)ec;
  return std::string(buffer, end);
}

double parse_double(std::string_view key, std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  const auto [end, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(text) + "' is not of the form key=value");
  }
  return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

void apply_setting(std::string_view key, std::string_view value, sim::SimConfig& cfg) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  it->second(key, value, cfg);
}

void apply_config_text(std::string_view text, sim::SimConfig& cfg) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto newline = text.find('\n', start);
    std::string_view line = text.substr(start, newline == std::string_view::npos ? text.npos : newline - start);
    start = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (!seen.emplace(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    }
    apply_setting(key, trim(line.substr(eq + 1)), cfg);
  }
}

sim::SimConfig parse_config(const std::string& path, const std::vector<Override>& overrides) {
  sim::SimConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    apply_config_text(text.str(), cfg);
  }
  for (const auto& [key, value] : overrides) apply_setting(key, value, cfg);
  cfg.validate();
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const sim::SimConfig& cfg) {
  return {
      {"Nc", std::to_string(cfg.nc)},
      {"symbols_per_frame", std::to_string(cfg.symbols_per_frame)},
      {"frames", std::to_string(cfg.frames)},
      {"samples", std::to_string(cfg.samples)},
      {"snr_db", format_double(cfg.snr_db)},
      {"lambda", format_double(cfg.lambda)},
      {"channel", cfg.channel},
      {"profile_delays_ns", format_list(cfg.custom_delays_ns)},
      {"profile_powers_db", format_list(cfg.custom_powers_db)},
      {"sample_period_ns", format_double(cfg.sample_period_ns)},
      {"method", std::string(estimators::to_string(cfg.method))},
      {"N0", std::to_string(cfg.rddce.n0)},
      {"N1", std::to_string(cfg.rddce.n1)},
      {"N2", std::to_string(cfg.rddce.n2)},
      {"N_taps", std::to_string(cfg.rddce.n_taps)},
      {"N_w", std::to_string(cfg.rddce.n_w)},
      {"N_iter", std::to_string(cfg.rddce.n_iter)},
      {"K_keep", std::to_string(cfg.rddce.k_keep)},
      {"metric", std::string(estimators::to_string(cfg.rddce.metric))},
      {"max_redraws", std::to_string(cfg.rddce.max_redraws)},
      {"redecide", cfg.rddce.redecide ? "true" : "false"},
      {"gamma", format_double(cfg.gamma)},
      {"seed", std::to_string(cfg.seed)},
  };
}

std::string format_config(const sim::SimConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : config_entries(cfg)) out += key + " = " + value + "\n";
  return out;
}

}  // namespace rddce::cli
