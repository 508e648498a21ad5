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


#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "rddce/channel.hpp"
#include "rddce/errors.hpp"

namespace rddce::cli {
namespace {

using nlohmann::json;

json number(double value) {
  if (!std::isfinite(value)) return json(format_double(value));
  return json(value);
}

json numbers(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

json config_json(const sim::SimConfig& cfg) {
  json out = json::object();
  for (const auto& [key, value] : config_entries(cfg)) out[key] = value;
  return out;
}

void write_csv_echo(std::ostream& os, const sim::SimConfig& cfg) {
  for (const auto& [key, value] : config_entries(cfg)) os << "# " << key << " = " << value << '\n';
}

json monte_carlo_json(const sim::MonteCarloResult& r) {
  return json{{"mean_acc", number(r.mean_acc)},
              {"std_acc", number(r.std_acc)},
              {"completed", r.completed},
              {"aborted", r.aborted},
              {"per_frame_acc", numbers(r.per_frame_acc)},
              {"per_frame_channel_mse", numbers(r.per_frame_channel_mse)}};
}

std::vector<estimators::Method> methods_or(const Invocation& inv, estimators::Method fallback) {
  std::vector<estimators::Method> out;
  for (const auto& name : inv.methods) out.push_back(estimators::parse_method(name));
  if (out.empty()) out.push_back(fallback);
  return out;
}

void report_aborts(const sim::MonteCarloResult& r, std::ostream& err) {
  for (const auto& episode : r.episodes) {
    if (episode.aborted) {
      err << "sample " << episode.sample_index << " aborted: " << episode.diagnostic << '\n';
    }
  }
}

int cmd_run(const Invocation& inv, const sim::SimConfig& cfg, std::ostream& os, std::ostream& err) {
  const sim::ExecutionOptions exec{inv.threads};
  std::vector<sim::MonteCarloResult> results;
  for (auto method : methods_or(inv, cfg.method)) {
    sim::SimConfig run_cfg = cfg;
    run_cfg.method = method;
    run_cfg.validate();
    results.push_back(sim::run_monte_carlo(run_cfg, exec));
  }
  bool aborted = false;
  for (const auto& r : results) {
    report_aborts(r, err);
    aborted = aborted || r.aborted > 0;
  }
  if (inv.format == Format::json) {
    json rows = json::array();
    for (const auto& r : results) {
      json row = monte_carlo_json(r);
      row["method"] = estimators::to_string(r.config.method);
      rows.push_back(std::move(row));
    }
    os << json{{"config", config_json(cfg)}, {"seed", cfg.seed}, {"results", rows}}.dump(2) << '\n';
  } else {
    write_csv_echo(os, cfg);
    os << "method,frame,acc,channel_mse\n";
    for (const auto& r : results) {
      for (std::size_t f = 0; f < r.per_frame_acc.size(); ++f) {
        os << estimators::to_string(r.config.method) << ',' << f << ','
           << format_double(r.per_frame_acc[f]) << ',' << format_double(r.per_frame_channel_mse[f])
           << '\n';
      }
    }
  }
  return aborted ? kRuntimeAbort : kSuccess;
}

int write_cells(const Invocation& inv, const sim::SimConfig& cfg,
                const std::vector<sim::SweepCell>& cells, bool metric_table, std::ostream& os,
                std::ostream& err) {
  bool aborted = false;
  for (const auto& cell : cells) {
    if (!cell.error.empty()) {
      err << "cell " << cell.channel << '/' << estimators::to_string(cell.method) << '/'
          << estimators::to_string(cell.metric) << " lambda=" << format_double(cell.lambda)
          << " snr_db=" << format_double(cell.snr_db) << ": " << cell.error << '\n';
      aborted = true;
    }
    report_aborts(cell.result, err);
    aborted = aborted || cell.result.aborted > 0;
  }
  if (inv.format == Format::json) {
    json rows = json::array();
    for (const auto& cell : cells) {
      json row = monte_carlo_json(cell.result);
      row["snr_db"] = number(cell.snr_db);
      row["metric"] = estimators::to_string(cell.metric);
      if (!metric_table) {
        row["channel"] = cell.channel;
        row["method"] = estimators::to_string(cell.method);
        row["lambda"] = number(cell.lambda);
      }
      if (!cell.error.empty()) row["error"] = cell.error;
      rows.push_back(std::move(row));
    }
    os << json{{"config", config_json(cfg)}, {"seed", cfg.seed}, {"results", rows}}.dump(2) << '\n';
  } else {
    write_csv_echo(os, cfg);
    if (metric_table) {
      os << "snr_db,metric,mean_acc,std_acc\n";
      for (const auto& cell : cells) {
        os << format_double(cell.snr_db) << ',' << estimators::to_string(cell.metric) << ','
           << format_double(cell.result.mean_acc) << ',' << format_double(cell.result.std_acc)
           << '\n';
      }
    } else {
      os << "channel,method,metric,lambda,snr_db,mean_acc,std_acc,completed,aborted\n";
      for (const auto& cell : cells) {
        os << cell.channel << ',' << estimators::to_string(cell.method) << ','
           << estimators::to_string(cell.metric) << ',' << format_double(cell.lambda) << ','
           << format_double(cell.snr_db) << ',' << format_double(cell.result.mean_acc) << ','
           << format_double(cell.result.std_acc) << ',' << cell.result.completed << ','
           << cell.result.aborted << '\n';
      }
    }
  }
  return aborted ? kRuntimeAbort : kSuccess;
}

int cmd_sweep(const Invocation& inv, const sim::SimConfig& cfg, std::ostream& os,
              std::ostream& err) {
  sim::SweepGrid grid;
  grid.channels = inv.channels;
  for (const auto& name : inv.methods) grid.methods.push_back(estimators::parse_method(name));
  for (const auto& name : inv.metrics) grid.metrics.push_back(estimators::parse_metric(name));
  grid.lambdas = inv.lambdas;
  grid.snr_db = inv.snr_db;
  const auto cells = sim::sweep(grid, cfg, sim::ExecutionOptions{inv.threads});
  return write_cells(inv, cfg, cells, false, os, err);
}

int cmd_compare_metrics(const Invocation& inv, const sim::SimConfig& cfg, std::ostream& os,
                        std::ostream& err) {
  std::vector<double> snrs = inv.snr_db;
  if (snrs.empty()) {
    for (int s = 0; s <= 20; s += 2) snrs.push_back(s);
  }
  const auto cells = sim::compare_metrics(cfg, snrs, sim::ExecutionOptions{inv.threads});
  return write_cells(inv, cfg, cells, true, os, err);
}

int cmd_scatter(const Invocation& inv, const sim::SimConfig& cfg, std::ostream& os) {
  std::vector<double> snrs = inv.snr_db;
  if (snrs.empty()) snrs = {20.0, 10.0};
  if (inv.groups == 0) throw ConfigError("groups: must be at least 1");
  const auto result = sim::scatter_experiment(cfg, inv.groups, snrs);
  if (inv.format == Format::json) {
    json taps = json::array();
    for (const Complex& t : result.actual.taps) taps.push_back({t.real(), t.imag()});
    json rows = json::array();
    for (const auto& r : result.records) {
      rows.push_back(json{{"snr_db", number(r.snr_db)},
                          {"group_id", r.group_id},
                          {"stage", sim::to_string(r.stage)},
                          {"mean_tap", {r.mean_tap.real(), r.mean_tap.imag()}},
                          {"distance", number(r.distance)}});
    }
    json results{{"actual_taps", taps},
                 {"actual_mean_tap", {result.actual_mean_tap.real(), result.actual_mean_tap.imag()}},
                 {"records", rows}};
    os << json{{"config", config_json(cfg)}, {"seed", cfg.seed}, {"results", results}}.dump(2)
       << '\n';
  } else {
    write_csv_echo(os, cfg);
    os << "# actual_mean_tap = " << format_double(result.actual_mean_tap.real()) << ", "
       << format_double(result.actual_mean_tap.imag()) << '\n';
    os << "snr_db,group_id,stage,mean_tap_re,mean_tap_im,distance\n";
    for (const auto& r : result.records) {
      os << format_double(r.snr_db) << ',' << r.group_id << ',' << sim::to_string(r.stage) << ','
         << format_double(r.mean_tap.real()) << ',' << format_double(r.mean_tap.imag()) << ','
         << format_double(r.distance) << '\n';
    }
  }
  return kSuccess;
}

int cmd_profiles(const Invocation& inv, const sim::SimConfig& cfg, std::ostream& os) {
  std::vector<channel::TapProfile> profiles{channel::eva_profile(), channel::etu_profile()};
  if (cfg.channel == "custom") profiles.push_back(cfg.profile());
  for (auto& p : profiles) p.sample_period_ns = cfg.sample_period_ns;
  if (inv.format == Format::json) {
    json rows = json::array();
    for (const auto& p : profiles) {
      const auto q = channel::quantize_profile(p, cfg.rddce.n_taps);
      json quantized = json::array();
      for (const auto& t : q.taps) quantized.push_back({{"delay_index", t.delay_index}, {"variance", t.variance}});
      rows.push_back(json{{"name", p.name},
                          {"delays_ns", p.delays_ns},
                          {"powers_db", p.powers_db},
                          {"quantized", quantized}});
    }
    os << json{{"config", config_json(cfg)}, {"seed", cfg.seed}, {"results", rows}}.dump(2) << '\n';
  } else {
    write_csv_echo(os, cfg);
    os << "profile,delay_index,variance\n";
    for (const auto& p : profiles) {
      for (const auto& t : channel::quantize_profile(p, cfg.rddce.n_taps).taps) {
        os << p.name << ',' << t.delay_index << ',' << format_double(t.variance) << '\n';
      }
    }
  }
  return kSuccess;
}

}  // namespace

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  sim::SimConfig cfg;
  try {
    cfg = parse_config(inv.config_path, inv.overrides);
    for (const auto& name : inv.methods) estimators::parse_method(name);
    for (const auto& name : inv.metrics) estimators::parse_metric(name);
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }

  std::ofstream file;
  if (!inv.output_path.empty()) {
    file.open(inv.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "cannot write output file '" << inv.output_path << "'\n";
      return kConfigError;
    }
  }
  std::ostringstream buffer;
  int code = kSuccess;
  try {
    if (inv.subcommand == "run") {
      code = cmd_run(inv, cfg, buffer, err);
    } else if (inv.subcommand == "sweep") {
      code = cmd_sweep(inv, cfg, buffer, err);
    } else if (inv.subcommand == "compare-metrics") {
      code = cmd_compare_metrics(inv, cfg, buffer, err);
    } else if (inv.subcommand == "scatter") {
      code = cmd_scatter(inv, cfg, buffer);
    } else if (inv.subcommand == "profiles") {
      code = cmd_profiles(inv, cfg, buffer);
    } else {
      err << "unknown subcommand '" << inv.subcommand << "'\n";
      return kConfigError;
    }
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "aborted: " << e.what() << '\n';
    return kRuntimeAbort;
  }
  std::ostream& os = inv.output_path.empty() ? out : file;
  os << buffer.str();
  os.flush();
  if (!os) {
    err << "failed while writing output\n";
    return kConfigError;
  }
  return code;
}

}  // namespace rddce::cli
