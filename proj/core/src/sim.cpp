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

#include "rddce/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "rddce/errors.hpp"
#include "rddce/phy.hpp"

namespace rddce::sim {
namespace {

using estimators::Method;

// Runs fn(i) for i in [0, n) on up to `threads` workers, each index exactly once.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::uint8_t> random_bits(std::size_t count, RandomStream& rng) {
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = rng.bit();
  return bits;
}

double mean_squared_error(const Cfr& estimate, const Cfr& truth) {
  double acc = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) acc += std::norm(estimate.gains[k] - truth.gains[k]);
  return acc / static_cast<double>(truth.size());
}

constexpr double kScatterMaxResidual = 1e-7;

double noise_var_for(double snr_db) {
  return std::isinf(snr_db) && snr_db > 0 ? 0.0 : channel::noise_variance(snr_db);
}

}  // namespace

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (nc == 0) fail("Nc must be positive");
  if (symbols_per_frame == 0) fail("symbols_per_frame must be positive");
  if (frames == 0) fail("frames must be positive");
  if (samples == 0) fail("samples must be positive");
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    fail("snr_db must be a number or +inf");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail("lambda must lie in [0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("gamma must lie in (0, 1]");
  if (channel != "EVA" && channel != "ETU" && channel != "custom") {
    fail("channel: unknown value '" + channel + "' (expected EVA, ETU or custom)");
  }
  if (rddce.n_taps > nc) fail("N_taps must not exceed Nc");
  rddce.validate(nc);
  if (method == Method::interpolation &&
      (estimators::kInterpolationSubcarriers > nc ||
       rddce.n_taps >= estimators::kInterpolationSubcarriers)) {
    fail("interpolation needs N_taps < " + std::to_string(estimators::kInterpolationSubcarriers) +
         " <= Nc");
  }
  channel::quantize_profile(profile(), rddce.n_taps);
}

channel::TapProfile SimConfig::profile() const {
  if (channel == "EVA") return channel::eva_profile(sample_period_ns);
  if (channel == "ETU") return channel::etu_profile(sample_period_ns);
  return {"custom", custom_delays_ns, custom_powers_db, sample_period_ns};
}

RunResult run_episode(const SimConfig& cfg, std::size_t sample_index) {
  cfg.validate();
  const channel::QuantizedProfile profile = channel::quantize_profile(cfg.profile(), cfg.rddce.n_taps);
  const double noise_var = noise_var_for(cfg.snr_db);
  const std::uint64_t seed = cfg.seed;
  const std::size_t nc = cfg.nc;

  RunResult result;
  result.sample_index = sample_index;
  result.seed_used = seed;
  result.config_echo = cfg;
  result.per_frame_acc.reserve(cfg.frames);
  result.per_frame_channel_mse.reserve(cfg.frames);

  estimators::TrackerSettings settings{nc, cfg.rddce, cfg.gamma};
  auto tracker = estimators::make_tracker(cfg.method, settings);

  // Symbol 0 is the known preamble; it is shared by every sample of a seed.
  RandomStream init_channel(seed, sample_index, 0, StreamPurpose::channel);
  Cir cir = channel::draw_cir(profile, init_channel);
  {
    RandomStream preamble_bits(seed, 0, 0, StreamPurpose::preamble);
    RandomStream noise(seed, sample_index, 0, StreamPurpose::noise);
    const ComplexVec preamble = phy::qpsk_modulate(random_bits(2 * nc, preamble_bits));
    const ComplexVec y = channel::apply_channel(preamble, channel::cir_to_cfr(cir, nc), noise_var, noise);
    tracker->initialize(estimators::preamble_estimate(y, preamble, cfg.rddce.n_taps));
  }

  const double per_frame = static_cast<double>(nc * cfg.symbols_per_frame);
  std::uint64_t symbol = 1;
  try {
    for (std::size_t frame = 0; frame < cfg.frames; ++frame) {
      std::size_t correct = 0;
      double mse = 0.0;
      for (std::size_t s = 0; s < cfg.symbols_per_frame; ++s, ++symbol) {
        RandomStream channel_rng(seed, sample_index, symbol, StreamPurpose::channel);
        RandomStream payload_rng(seed, sample_index, symbol, StreamPurpose::payload);
        RandomStream noise_rng(seed, sample_index, symbol, StreamPurpose::noise);
        RandomStream partition_rng(seed, sample_index, symbol, StreamPurpose::partition);

        cir = channel::evolve_cir(cir, cfg.lambda, profile, channel_rng);
        const Cfr truth = channel::cir_to_cfr(cir, nc);
        const ComplexVec x = phy::qpsk_modulate(random_bits(2 * nc, payload_rng));
        const ComplexVec y = channel::apply_channel(x, truth, noise_var, noise_rng);

        const estimators::StepResult step = tracker->step(y, truth, partition_rng);
        correct += phy::count_matching_decisions(step.decisions, x);
        result.decisions_scored += nc;
        mse += mean_squared_error(step.estimate, truth);
      }
      result.per_frame_acc.push_back(static_cast<double>(correct) / per_frame);
      result.per_frame_channel_mse.push_back(mse / static_cast<double>(cfg.symbols_per_frame));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    result.aborted = true;
    result.diagnostic = "symbol " + std::to_string(symbol) + ": " + e.what();
  }

  double total = 0.0;
  for (double acc : result.per_frame_acc) total += acc;
  result.mean_acc = result.per_frame_acc.empty()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : total / static_cast<double>(result.per_frame_acc.size());
  return result;
}

MonteCarloResult run_monte_carlo(const SimConfig& cfg, const ExecutionOptions& exec) {
  cfg.validate();
  MonteCarloResult out;
  out.config = cfg;
  out.episodes.resize(cfg.samples);
  parallel_for(cfg.samples, exec.threads,
               [&](std::size_t i) { out.episodes[i] = run_episode(cfg, i); });

  out.per_frame_acc.assign(cfg.frames, 0.0);
  out.per_frame_channel_mse.assign(cfg.frames, 0.0);
  std::vector<double> means;
  for (const RunResult& ep : out.episodes) {
    if (ep.aborted) {
      ++out.aborted;
      continue;
    }
    ++out.completed;
    means.push_back(ep.mean_acc);
    for (std::size_t f = 0; f < cfg.frames; ++f) {
      out.per_frame_acc[f] += ep.per_frame_acc[f];
      out.per_frame_channel_mse[f] += ep.per_frame_channel_mse[f];
    }
  }
  if (out.completed == 0) return out;

  const double n = static_cast<double>(out.completed);
  for (std::size_t f = 0; f < cfg.frames; ++f) {
    out.per_frame_acc[f] /= n;
    out.per_frame_channel_mse[f] /= n;
  }
  double sum = 0.0;
  for (double m : means) sum += m;
  out.mean_acc = sum / n;
  double ss = 0.0;
  for (double m : means) ss += (m - out.mean_acc) * (m - out.mean_acc);
  out.std_acc = means.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return out;
}

std::vector<SweepCell> sweep(const SweepGrid& grid, const SimConfig& base,
                             const ExecutionOptions& exec) {
  auto or_base = [](auto values, auto fallback) {
    if (values.empty()) values.push_back(fallback);
    return values;
  };
  const auto channels = or_base(grid.channels, base.channel);
  const auto methods = or_base(grid.methods, base.method);
  const auto metrics = or_base(grid.metrics, base.rddce.metric);
  const auto lambdas = or_base(grid.lambdas, base.lambda);
  const auto snrs = or_base(grid.snr_db, base.snr_db);

  std::vector<SweepCell> cells;
  for (const auto& ch : channels) {
    for (Method method : methods) {
      for (auto metric : metrics) {
        for (double lambda : lambdas) {
          for (double snr : snrs) {
            SweepCell cell{ch, method, metric, lambda, snr, {}, {}};
            SimConfig cfg = base;
            cfg.channel = ch;
            cfg.method = method;
            cfg.rddce.metric = metric;
            cfg.lambda = lambda;
            cfg.snr_db = snr;
            try {
              cell.result = run_monte_carlo(cfg, exec);
              if (cell.result.completed == 0) cell.error = "every episode aborted";
            } catch (const Error& e) {
              cell.result.config = cfg;
              cell.error = e.what();
            }
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return cells;
}

std::vector<SweepCell> compare_metrics(const SimConfig& base, std::span<const double> snr_db,
                                       const ExecutionOptions& exec) {
  SweepGrid grid;
  grid.channels = {base.channel};
  grid.methods = {Method::rddce};
  grid.metrics = {estimators::SelectionMetric::relative_change,
                  estimators::SelectionMetric::magnitude};
  grid.lambdas = {base.lambda};
  grid.snr_db.assign(snr_db.begin(), snr_db.end());
  return sweep(grid, base, exec);
}

std::string_view to_string(ScatterStage stage) noexcept {
  return stage == ScatterStage::raw ? "raw" : "denoised";
}

ScatterResult scatter_experiment(const SimConfig& cfg, std::size_t n_groups,
                                 std::span<const double> snr_db) {
  cfg.validate();
  if (n_groups == 0) throw InvalidArgument("scatter_experiment: n_groups must be positive");
  const std::size_t nc = cfg.nc;
  const std::size_t n_taps = cfg.rddce.n_taps;
  const std::size_t n2 = cfg.rddce.n2;
  const auto profile = channel::quantize_profile(cfg.profile(), n_taps);

  ScatterResult out;
  RandomStream frozen(cfg.seed, 0, 0, StreamPurpose::channel);
  out.actual = channel::draw_cir(profile, frozen);
  const Cfr truth = channel::cir_to_cfr(out.actual, nc);
  Complex sum = 0.0;
  for (const Complex& t : out.actual.taps) sum += t;
  out.actual_mean_tap = sum / static_cast<double>(n2);

  std::vector<std::size_t> all(nc);
  for (std::size_t k = 0; k < nc; ++k) all[k] = k;
  const IndexSet everything(std::move(all), nc);

  auto distance_to_actual = [&](std::span<const Complex> taps) {
    double acc = 0.0;
    for (std::size_t t = 0; t < n_taps; ++t) acc += std::norm(taps[t] - out.actual.taps[t]);
    return std::sqrt(acc);
  };
  auto mean_tap = [&](std::span<const Complex> taps) {
    Complex acc = 0.0;
    for (const Complex& t : taps) acc += t;
    return acc / static_cast<double>(n2);
  };

  std::vector<double> levels{std::numeric_limits<double>::infinity()};
  for (double snr : snr_db) {
    if (std::find(levels.begin(), levels.end(), snr) == levels.end()) levels.push_back(snr);
  }
  for (std::size_t level = 0; level < levels.size(); ++level) {
    const double snr = levels[level];
    const double noise_var = noise_var_for(snr);
    for (std::size_t g = 0; g < n_groups; ++g) {
      RandomStream rng(cfg.seed, level + 1, g, StreamPurpose::scatter);
      RandomStream payload(cfg.seed, level + 1, g, StreamPurpose::payload);
      RandomStream noise(cfg.seed, level + 1, g, StreamPurpose::noise);
      const ComplexVec x = phy::qpsk_modulate(random_bits(2 * nc, payload));
      const ComplexVec y = channel::apply_channel(x, truth, noise_var, noise);
      const Cfr observed = phy::ls_estimate(y, x);

      std::optional<estimators::GroupCir> group;
      for (std::size_t attempt = 0; attempt <= cfg.rddce.max_redraws && !group; ++attempt) {
        auto candidate = estimators::group_cir(observed, estimators::draw_group(everything, n2, nc, rng), nc);
        if (candidate.transform.residual <= kScatterMaxResidual) group = std::move(candidate);
      }
      if (!group) continue;
      estimators::GroupObservation obs;
      try {
        obs = estimators::denoise_group(*group, n_taps);
      } catch (const SingularMatrix&) {
        continue;
      }
      ComplexVec denoised(n2, Complex{0.0});
      std::copy(obs.taps.begin(), obs.taps.end(), denoised.begin());

      out.records.push_back({snr, g, ScatterStage::raw, mean_tap(group->taps),
                             distance_to_actual(group->taps)});
      out.records.push_back({snr, g, ScatterStage::denoised, mean_tap(denoised),
                             distance_to_actual(denoised)});
    }
  }
  return out;
}

std::vector<ScatterSummary> summarize(const ScatterResult& result) {
  std::vector<ScatterSummary> out;
  for (const ScatterRecord& rec : result.records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const ScatterSummary& s) {
      return s.snr_db == rec.snr_db;
    });
    if (it == out.end()) {
      out.push_back({rec.snr_db, 0.0, 0.0, 0});
      it = std::prev(out.end());
    }
    if (rec.stage == ScatterStage::raw) {
      it->mean_raw_distance += rec.distance;
      ++it->groups;
    } else {
      it->mean_denoised_distance += rec.distance;
    }
  }
  for (ScatterSummary& s : out) {
    if (s.groups == 0) continue;
    s.mean_raw_distance /= static_cast<double>(s.groups);
    s.mean_denoised_distance /= static_cast<double>(s.groups);
  }
  return out;
}

}  // namespace rddce::sim
