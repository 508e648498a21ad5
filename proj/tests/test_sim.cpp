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


#include <gtest/gtest.h>

#include <limits>

#include "oracles.hpp"
#include "rddce/errors.hpp"
#include "rddce/sim.hpp"

namespace rddce {
namespace {

using estimators::Method;
using sim::SimConfig;

SimConfig small(Method method, std::size_t frames = 4, std::size_t samples = 3) {
  SimConfig cfg;
  cfg.method = method;
  cfg.frames = frames;
  cfg.samples = samples;
  return cfg;
}

TEST(SimConfig, DefaultsAndValidation) {
  SimConfig cfg;
  EXPECT_EQ(cfg.nc, 128u);
  EXPECT_EQ(cfg.symbols_per_frame, 14u);
  EXPECT_NO_THROW(cfg.validate());
  auto bad = cfg;
  bad.lambda = 1.01;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.frames = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.channel = "TDL-A";
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = cfg;
  bad.channel = "custom";
  EXPECT_THROW(bad.validate(), ConfigError);
  bad.custom_delays_ns = {0, 1000};
  bad.custom_powers_db = {0, -3};
  EXPECT_NO_THROW(bad.validate());
}

TEST(Episode, NoiseFreeFrozenIdealIsPerfect) {
  auto cfg = small(Method::ideal);
  cfg.snr_db = std::numeric_limits<double>::infinity();
  cfg.lambda = 1.0;
  const auto r = sim::run_episode(cfg, 0);
  for (double acc : r.per_frame_acc) EXPECT_EQ(acc, 1.0);
  EXPECT_EQ(r.mean_acc, 1.0);
}

TEST(Episode, CountsEveryDecisionAndMeanMatches) {
  for (auto method : {Method::basic, Method::filtering, Method::interpolation, Method::rddce, Method::ideal}) {
    const auto cfg = small(method, 3, 1);
    const auto r = sim::run_episode(cfg, 2);
    ASSERT_FALSE(r.aborted) << r.diagnostic;
    ASSERT_EQ(r.per_frame_acc.size(), 3u);
    ASSERT_EQ(r.per_frame_channel_mse.size(), 3u);
    EXPECT_EQ(r.decisions_scored, 3u * 14u * 128u);
    double sum = 0.0;
    for (double acc : r.per_frame_acc) {
      EXPECT_GE(acc, 0.0);
      EXPECT_LE(acc, 1.0);
      sum += acc;
    }
    EXPECT_NEAR(r.mean_acc, sum / 3.0, 1e-12);
    EXPECT_EQ(r.seed_used, cfg.seed);
    EXPECT_EQ(r.config_echo, cfg);
  }
}

TEST(Episode, NoiseFreeTrackersStayLockedOnAFrozenChannel) {
  for (auto method : {Method::basic, Method::filtering, Method::interpolation, Method::rddce}) {
    auto cfg = small(method, 2, 1);
    cfg.snr_db = std::numeric_limits<double>::infinity();
    cfg.lambda = 1.0;
    const auto r = sim::run_episode(cfg, 0);
    for (double acc : r.per_frame_acc) EXPECT_EQ(acc, 1.0) << estimators::to_string(method);
    for (double mse : r.per_frame_channel_mse) EXPECT_LT(mse, 1e-10) << estimators::to_string(method);
  }
}

TEST(MonteCarlo, SingleSampleEqualsEpisode) {
  const auto cfg = small(Method::filtering, 3, 1);
  const auto mc = sim::run_monte_carlo(cfg);
  EXPECT_EQ(mc.mean_acc, sim::run_episode(cfg, 0).mean_acc);
  EXPECT_EQ(mc.completed, 1u);
  EXPECT_EQ(mc.std_acc, 0.0);
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto cfg = small(Method::rddce, 2, 4);
  const auto one = sim::run_monte_carlo(cfg, {1});
  const auto four = sim::run_monte_carlo(cfg, {4});
  EXPECT_EQ(one.mean_acc, four.mean_acc);
  EXPECT_EQ(one.std_acc, four.std_acc);
  EXPECT_EQ(one.per_frame_acc, four.per_frame_acc);
  EXPECT_EQ(one.per_frame_channel_mse, four.per_frame_channel_mse);
}

TEST(MonteCarlo, SamplesDiffer) {
  const auto mc = sim::run_monte_carlo(small(Method::basic, 2, 3));
  EXPECT_NE(mc.episodes[0].per_frame_acc, mc.episodes[1].per_frame_acc);
  EXPECT_NE(mc.episodes[1].per_frame_acc, mc.episodes[2].per_frame_acc);
}

TEST(MonteCarlo, IdealAccuracyMatchesClosedForm) {
  auto cfg = small(Method::ideal, 100, 20);
  EXPECT_NEAR(sim::run_monte_carlo(cfg).mean_acc, testing::qpsk_rayleigh_accuracy(10.0), 0.02);
}

TEST(MonteCarlo, AccuracyFloor) {
  for (auto method : {Method::basic, Method::filtering}) {
    auto cfg = small(method, 100, 2);
    EXPECT_GE(sim::run_monte_carlo(cfg).mean_acc, 0.20) << estimators::to_string(method);
  }
}

TEST(Sweep, SingleCellEqualsMonteCarlo) {
  const auto base = small(Method::filtering, 2, 2);
  sim::SweepGrid grid;
  grid.snr_db = {10.0};
  const auto cells = sim::sweep(grid, base);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].result.mean_acc, sim::run_monte_carlo(base).mean_acc);
  EXPECT_EQ(cells[0].channel, "EVA");
}

TEST(Sweep, GridOrderAndCellErrors) {
  auto base = small(Method::basic, 1, 1);
  sim::SweepGrid grid;
  grid.channels = {"EVA", "ETU"};
  grid.methods = {Method::basic, Method::ideal};
  grid.lambdas = {0.9, 0.99};
  grid.snr_db = {0.0, 10.0};
  const auto cells = sim::sweep(grid, base);
  ASSERT_EQ(cells.size(), 16u);
  EXPECT_EQ(cells.front().channel, "EVA");
  EXPECT_EQ(cells.back().channel, "ETU");
  for (const auto& c : cells) EXPECT_TRUE(c.error.empty());

  base.rddce.n_taps = 4;
  base.rddce.n_w = 16;
  grid = {};
  grid.channels = {"ETU"};
  const auto failed = sim::sweep(grid, base);
  ASSERT_EQ(failed.size(), 1u);
  EXPECT_FALSE(failed[0].error.empty());
}

TEST(CompareMetrics, OneCellPerSnrAndMetric) {
  const auto base = small(Method::rddce, 1, 1);
  const std::vector<double> snrs{10.0, 20.0};
  const auto cells = sim::compare_metrics(base, snrs);
  ASSERT_EQ(cells.size(), 4u);
  for (const auto& c : cells) EXPECT_EQ(c.method, Method::rddce);
}

TEST(Scatter, NoiseFreeStageCollapsesAndNoiseSpreads) {
  auto cfg = small(Method::rddce);
  const std::vector<double> snrs{20.0, 10.0, 0.0};
  const auto result = sim::scatter_experiment(cfg, 50, snrs);
  const auto summary = sim::summarize(result);
  ASSERT_EQ(summary.size(), 4u);
  for (const auto& r : result.records) {
    if (std::isinf(r.snr_db)) EXPECT_LT(r.distance, 1e-8);
  }
  EXPECT_TRUE(std::isinf(summary[0].snr_db));
  for (std::size_t i = 1; i < summary.size(); ++i) {
    EXPECT_EQ(summary[i].groups, 50u);
    EXPECT_LT(summary[i].mean_denoised_distance, summary[i].mean_raw_distance);
    EXPECT_GT(summary[i].mean_raw_distance, summary[i - 1].mean_raw_distance);
  }
}

}  // namespace
}  // namespace rddce
