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

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rddce/channel.hpp"
#include "rddce/estimators.hpp"
#include "rddce/types.hpp"

/// Seeded Monte-Carlo link simulation: channel trajectory, QPSK payload, AWGN, and one
/// channel tracker per episode, scored by Acc = 1 - SER.
namespace rddce::sim {

struct SimConfig {
  std::size_t nc = 128;
  std::size_t symbols_per_frame = 14;
  std::size_t frames = 1000;
  std::size_t samples = 20;
  /// +inf disables the noise entirely.
  double snr_db = 10.0;
  double lambda = 0.990;
  /// EVA, ETU or custom.
  std::string channel = "EVA";
  std::vector<double> custom_delays_ns;
  std::vector<double> custom_powers_db;
  double sample_period_ns = channel::kDefaultSamplePeriodNs;
  estimators::Method method = estimators::Method::rddce;
  estimators::RddceConfig rddce;
  double gamma = estimators::kDefaultGamma;
  std::uint64_t seed = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  channel::TapProfile profile() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct RunResult {
  std::size_t sample_index = 0;
  std::uint64_t seed_used = 0;
  std::vector<double> per_frame_acc;
  std::vector<double> per_frame_channel_mse;
  double mean_acc = 0.0;
  /// Payload decisions compared against the transmitted symbols.
  std::size_t decisions_scored = 0;
  bool aborted = false;
  std::string diagnostic;
  SimConfig config_echo;
};

struct ExecutionOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  std::size_t threads = 0;
};

struct MonteCarloResult {
  SimConfig config;
  /// Mean and sample standard deviation of the per-episode mean Acc.
  double mean_acc = std::numeric_limits<double>::quiet_NaN();
  double std_acc = std::numeric_limits<double>::quiet_NaN();
  /// Per-frame averages over completed episodes.
  std::vector<double> per_frame_acc;
  std::vector<double> per_frame_channel_mse;
  std::size_t completed = 0;
  std::size_t aborted = 0;
  /// Ordered by sample index, including aborted episodes.
  std::vector<RunResult> episodes;
};

/// One full episode. Configuration errors propagate as ConfigError; a tracker failure
/// mid-run yields a result with `aborted` set and the frames completed so far.
RunResult run_episode(const SimConfig& cfg, std::size_t sample_index);

MonteCarloResult run_monte_carlo(const SimConfig& cfg, const ExecutionOptions& exec = {});

struct SweepGrid {
  std::vector<std::string> channels;
  std::vector<estimators::Method> methods;
  std::vector<estimators::SelectionMetric> metrics;
  std::vector<double> lambdas;
  std::vector<double> snr_db;
};

struct SweepCell {
  std::string channel;
  estimators::Method method = estimators::Method::rddce;
  estimators::SelectionMetric metric = estimators::SelectionMetric::relative_change;
  double lambda = 0.0;
  double snr_db = 0.0;
  MonteCarloResult result;
  /// Non-empty if the cell could not run.
  std::string error;
};

/// One Monte-Carlo aggregate per grid cell, ordered channel > method > metric > lambda > snr.
/// Empty axes fall back to the base configuration's value.
std::vector<SweepCell> sweep(const SweepGrid& grid, const SimConfig& base,
                             const ExecutionOptions& exec = {});

/// RDDCE with each selection metric over the given SNR values.
std::vector<SweepCell> compare_metrics(const SimConfig& base, std::span<const double> snr_db,
                                       const ExecutionOptions& exec = {});

enum class ScatterStage { raw, denoised };
std::string_view to_string(ScatterStage stage) noexcept;

struct ScatterRecord {
  double snr_db = 0.0;
  std::size_t group_id = 0;
  ScatterStage stage = ScatterStage::raw;
  /// Mean over all group taps (the tail included).
  Complex mean_tap;
  /// Euclidean distance of the first N_taps taps to the true impulse response.
  double distance = 0.0;
};

struct ScatterResult {
  /// The frozen channel realization.
  Cir actual;
  /// Marker of the true channel: sum of the true taps divided by the group size.
  Complex actual_mean_tap;
  std::vector<ScatterRecord> records;
};

/// Group impulse responses before and after denoising, for one frozen channel and known
/// transmitted symbols, at each SNR in `snr_db` (+inf means noise-free). Each group sees an
/// independent noise draw; ill-conditioned groups follow the redraw-then-drop policy.
/// A noise-free level is always evaluated first, followed by the distinct entries of `snr_db`.
ScatterResult scatter_experiment(const SimConfig& cfg, std::size_t n_groups,
                                 std::span<const double> snr_db);

/// Mean distance per (snr, stage) in the order the SNRs were given.
struct ScatterSummary {
  double snr_db = 0.0;
  double mean_raw_distance = 0.0;
  double mean_denoised_distance = 0.0;
  std::size_t groups = 0;
};
std::vector<ScatterSummary> summarize(const ScatterResult& result);

}  // namespace rddce::sim
