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

#include <algorithm>
#include <limits>
#include <numeric>

#include "oracles.hpp"
#include "rddce/channel.hpp"
#include "rddce/errors.hpp"
#include "rddce/estimators.hpp"
#include "rddce/numkernels.hpp"
#include "rddce/phy.hpp"

namespace rddce {
namespace {

using namespace estimators;

Cfr random_channel(std::size_t n_taps, std::size_t nc, std::uint64_t key) {
  const auto q = channel::quantize_profile(channel::etu_profile(), n_taps);
  RandomStream rng(key, 0, 0, StreamPurpose::channel);
  return channel::cir_to_cfr(channel::draw_cir(q, rng), nc);
}

ComplexVec random_symbols(std::size_t n, std::uint64_t key) {
  RandomStream rng(key, 0, 0, StreamPurpose::payload);
  std::vector<std::uint8_t> bits(2 * n);
  for (auto& b : bits) b = rng.bit();
  return phy::qpsk_modulate(bits);
}

ComplexVec received(const Cfr& h, std::span<const Complex> x) {
  ComplexVec y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = h[k] * x[k];
  return y;
}

double mse(const Cfr& a, const Cfr& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::norm(a[k] - b[k]);
  return acc / static_cast<double>(a.size());
}

TEST(RddceConfig, DefaultsAndValidation) {
  RddceConfig cfg;
  EXPECT_EQ(cfg.n0, 100u);
  EXPECT_EQ(cfg.n1, 15u);
  EXPECT_EQ(cfg.n2, 20u);
  EXPECT_EQ(cfg.n_iter, 10u);
  EXPECT_EQ(cfg.k_keep, 5u);
  EXPECT_NO_THROW(cfg.validate(128));
  auto bad = cfg;
  bad.n2 = 5;
  EXPECT_THROW(bad.validate(128), ConfigError);
  bad = cfg;
  bad.n0 = 129;
  EXPECT_THROW(bad.validate(128), ConfigError);
  bad = cfg;
  bad.k_keep = 16;
  EXPECT_THROW(bad.validate(128), ConfigError);
  bad = cfg;
  bad.n_iter = 0;
  EXPECT_THROW(bad.validate(128), ConfigError);
}

TEST(Names, ParseAndPrint) {
  for (auto m : {Method::basic, Method::filtering, Method::interpolation, Method::rddce, Method::ideal}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_EQ(parse_metric("M"), SelectionMetric::relative_change);
  EXPECT_EQ(parse_metric("alpha"), SelectionMetric::magnitude);
  EXPECT_THROW(parse_method("lmmse"), ConfigError);
  EXPECT_THROW(parse_metric("beta"), ConfigError);
}

TEST(Metric, RelativeChangeIsInvariantUnderCommonScaling) {
  const Cfr pre{testing::random_vector(64, 1)};
  const Cfr prev{testing::random_vector(64, 2)};
  const Complex c{-0.7, 2.3};
  Cfr pre_s = pre;
  Cfr prev_s = prev;
  for (auto& g : pre_s.gains) g *= c;
  for (auto& g : prev_s.gains) g *= c;
  const auto a = metric_m(pre, prev);
  const auto b = metric_m(pre_s, prev_s);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_NEAR(a[k], b[k], 1e-12 * std::max(1.0, a[k]));
}

TEST(Metric, RelativeChangeOfNullPreviousIsInfinite) {
  const Cfr pre{ComplexVec{1.0, 1.0}};
  const Cfr prev{ComplexVec{0.0, 2.0}};
  const auto m = metric_m(pre, prev);
  EXPECT_TRUE(std::isinf(m[0]));
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  const auto a = metric_alpha(Cfr{ComplexVec{{3.0, 4.0}}});
  EXPECT_DOUBLE_EQ(a[0], 5.0);
}

TEST(Select, OrdersTiesAndStarvation) {
  const std::vector<double> scores{0.5, 0.1, 0.1, 0.9, std::numeric_limits<double>::quiet_NaN(), 0.2};
  EXPECT_EQ(select_channels(scores, 3, RankOrder::smallest).values(), (std::vector<std::size_t>{1, 2, 5}));
  EXPECT_EQ(select_channels(scores, 2, RankOrder::smallest).values(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(select_channels(scores, 2, RankOrder::largest).values(), (std::vector<std::size_t>{0, 3}));
  EXPECT_THROW(select_channels(scores, 6, RankOrder::smallest), SelectionStarvation);
  const std::vector<double> with_inf{std::numeric_limits<double>::infinity(), 1.0};
  EXPECT_THROW(select_channels(with_inf, 2, RankOrder::smallest), SelectionStarvation);
}

TEST(Groups, DrawnFromSelectionWithoutRepeats) {
  std::vector<std::size_t> sel(100);
  for (std::size_t i = 0; i < 100; ++i) sel[i] = i + 20;
  const IndexSet selected(sel, 128);
  RandomStream rng(1, 0, 0, StreamPurpose::partition);
  std::vector<int> hits(128, 0);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto g = draw_group(selected, 20, 128, rng);
    ASSERT_EQ(g.size(), 20u);
    for (std::size_t i : g) {
      EXPECT_TRUE(std::binary_search(sel.begin(), sel.end(), i));
      ++hits[i];
    }
  }
  for (std::size_t i : sel) EXPECT_NEAR(hits[i], 400, 80);
  RddceConfig cfg;
  EXPECT_EQ(partition_groups(selected, cfg, 128, rng).size(), 15u);
}

TEST(GroupCir, NoiseFreeGroupRecoversTheTaps) {
  const auto q = channel::quantize_profile(channel::etu_profile(), 11);
  RandomStream rng(3, 0, 0, StreamPurpose::channel);
  const auto cir = channel::draw_cir(q, rng);
  const auto h = channel::cir_to_cfr(cir, 128);
  const IndexSet idx({2, 9, 13, 20, 27, 33, 41, 45, 50, 58, 66, 70, 77, 85, 91, 99, 104, 110, 117, 125}, 128);
  const auto group = group_cir(h, idx, 128);
  for (std::size_t t = 0; t < 11; ++t) EXPECT_LT(std::abs(group.taps[t] - cir[t]), 1e-9);
  for (std::size_t t = 11; t < 20; ++t) EXPECT_LT(std::abs(group.taps[t]), 1e-9);
  const auto obs = denoise_group(group, 11);
  EXPECT_LT(max_abs_difference(obs.taps, cir.taps), 1e-9);
}

TEST(Denoise, CompensatedTailVanishes) {
  for (std::uint64_t key = 0; key < 50; ++key) {
    RandomStream rng(key, 0, 0, StreamPurpose::partition);
    std::vector<std::size_t> all(128);
    std::iota(all.begin(), all.end(), 0);
    const auto idx = draw_group(IndexSet(all, 128), 20, 128, rng);
    const Cfr noisy{testing::random_vector(128, key)};
    const auto group = group_cir(noisy, idx, 128);
    if (group.transform.ill_conditioned()) continue;
    const auto obs = denoise_group(group, 11);
    EXPECT_LT(obs.tail_residual, 1e-9) << key;
  }
}

TEST(Denoise, EquivalentToLeastSquaresTapFit) {
  // Independent route: fit n_taps taps to the group's observations with Eigen's QR.
  const IndexSet idx({1, 7, 12, 19, 25, 31, 40, 46, 52, 60, 67, 73, 80, 88, 93, 101, 108, 114, 120, 126}, 128);
  const Cfr noisy{testing::random_vector(128, 17)};
  const auto obs = denoise_group(group_cir(noisy, idx, 128), 11);
  Eigen::MatrixXcd a(20, 11);
  Eigen::VectorXcd b(20);
  const auto f = numkernels::fourier_submatrix(idx, 20, 128);
  for (int r = 0; r < 20; ++r) {
    for (int c = 0; c < 11; ++c) a(r, c) = f(r, c);
    b(r) = noisy[idx[r]];
  }
  const Eigen::VectorXcd fit = a.colPivHouseholderQr().solve(b);
  for (int t = 0; t < 11; ++t) EXPECT_LT(std::abs(obs.taps[t] - fit(t)), 1e-8);
}

TEST(Denoise, EvenlySpacedGroupMatchesTruncatedDftEstimation) {
  const std::size_t nc = 128;
  const std::size_t n2 = 16;
  const std::size_t n_taps = 8;
  const Cfr noisy{testing::random_vector(nc, 23)};
  for (std::size_t offset : {0u, 3u}) {
    std::vector<std::size_t> rows;
    for (std::size_t m = 0; m < n2; ++m) rows.push_back(offset + m * (nc / n2));
    const IndexSet idx(rows, nc);
    const auto obs = denoise_group(group_cir(noisy, idx, nc), n_taps);
    const auto rddce = finalize_estimate(obs.taps, nc);

    // Truncate-pad-DFT on the subsampled band, with the offset's phase ramp removed.
    ComplexVec sub(n2);
    for (std::size_t m = 0; m < n2; ++m) sub[m] = noisy[rows[m]];
    ComplexVec taps = numkernels::idft(sub);
    for (std::size_t t = 0; t < n2; ++t) {
      taps[t] *= std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(offset * t) / nc);
    }
    taps.resize(n_taps);
    ComplexVec padded(taps);
    padded.resize(nc, Complex{0.0});
    const auto classic = numkernels::dft(padded);
    EXPECT_LT(max_abs_difference(rddce.gains, classic), 1e-8) << offset;
  }
}

TEST(OneMean, ConsensusIgnoresOutliers) {
  std::vector<GroupObservation> obs;
  for (int i = 0; i < 10; ++i) {
    GroupObservation o;
    o.taps = ComplexVec(3, Complex{1.0 + 0.001 * i});
    obs.push_back(o);
  }
  for (int i = 0; i < 5; ++i) {
    GroupObservation o;
    o.taps = ComplexVec(3, Complex{50.0 + i, -20.0});
    obs.push_back(o);
  }
  RddceConfig cfg;
  const auto c = one_mean_filter(obs, cfg);
  ASSERT_TRUE(c.has_value());
  // The outliers pull the starting mean upwards, so the five largest inliers are kept.
  for (const auto& v : *c) EXPECT_LT(std::abs(v - Complex{1.007}), 1e-12);
}

TEST(OneMean, PermutationInvariantAndEdgeCases) {
  std::vector<GroupObservation> obs(15);
  for (std::size_t i = 0; i < obs.size(); ++i) obs[i].taps = testing::random_vector(11, i);
  RddceConfig cfg;
  const auto base = one_mean_filter(obs, cfg);
  auto shuffled = obs;
  std::reverse(shuffled.begin(), shuffled.end());
  std::rotate(shuffled.begin(), shuffled.begin() + 4, shuffled.end());
  const auto again = one_mean_filter(shuffled, cfg);
  EXPECT_LT(max_abs_difference(*base, *again), 1e-14);

  EXPECT_FALSE(one_mean_filter(std::vector<GroupObservation>{}, cfg).has_value());
  const auto single = one_mean_filter(std::span(obs).first(1), cfg);
  EXPECT_EQ(*single, obs[0].taps);
  const auto three = one_mean_filter(std::span(obs).first(3), cfg);
  ComplexVec mean(11, Complex{0.0});
  for (int i = 0; i < 3; ++i) {
    for (std::size_t t = 0; t < 11; ++t) mean[t] += obs[i].taps[t] / 3.0;
  }
  EXPECT_LT(max_abs_difference(*three, mean), 1e-14);
}

TEST(Interpolation, PilotsAreFixedAndSpread) {
  const auto pilots = make_interpolation_pilots(128, 20, 11);
  ASSERT_EQ(pilots.indices.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(pilots.indices[i], i * 128 / 20);
  EXPECT_FALSE(pilots.transform.ill_conditioned());
}

TEST(Filtering, GammaOneIsBasicAndRangeChecked) {
  const Cfr h = random_channel(11, 128, 4);
  const auto x = random_symbols(128, 5);
  auto y = received(h, x);
  RandomStream nz(1, 0, 0, StreamPurpose::noise);
  for (auto& v : y) v += nz.cscg(0.2);
  EstimatorState a{h};
  EstimatorState b{h};
  const auto ra = basic_step(y, a);
  const auto rb = filtering_step(y, b, 1.0);
  EXPECT_EQ(ra.estimate, rb.estimate);
  EXPECT_EQ(ra.decisions, rb.decisions);
  EXPECT_THROW(filtering_step(y, b, 0.0), InvalidArgument);
  EXPECT_THROW(filtering_step(y, b, 1.5), InvalidArgument);
}

TEST(Preamble, NoiseFreeEstimateIsExact) {
  const Cfr h = random_channel(11, 128, 6);
  const auto p = random_symbols(128, 7);
  EXPECT_LT(max_abs_difference(preamble_estimate(received(h, p), p, 11).gains, h.gains), 1e-12);
}

TEST(Trackers, NoiseFreeStaticChannelIsTrackedExactly) {
  const Cfr h = random_channel(11, 128, 8);
  const auto p = random_symbols(128, 9);
  TrackerSettings settings;
  for (auto method : {Method::basic, Method::filtering, Method::interpolation, Method::rddce, Method::ideal}) {
    auto tracker = make_tracker(method, settings);
    EXPECT_EQ(tracker->method(), method);
    tracker->initialize(preamble_estimate(received(h, p), p, 11));
    for (std::uint64_t s = 1; s <= 6; ++s) {
      const auto x = random_symbols(128, 100 + s);
      RandomStream rng(1, 0, s, StreamPurpose::partition);
      const auto step = tracker->step(received(h, x), h, rng);
      EXPECT_EQ(phy::count_matching_decisions(step.decisions, x), 128u);
      if (s >= 2) EXPECT_LT(mse(step.estimate, h), 1e-10) << to_string(method) << " symbol " << s;
    }
  }
}

TEST(Rddce, RecoversFromPerturbedStartOnStaticChannel) {
  const Cfr h = random_channel(11, 128, 10);
  EstimatorState state{h};
  for (auto& g : state.previous.gains) g *= Complex{1.05, 0.05};
  RddceConfig cfg;
  RddceDiagnostics diag;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    const auto x = random_symbols(128, 200 + s);
    RandomStream rng(2, 0, s, StreamPurpose::partition);
    rddce_step(received(h, x), state, cfg, rng, &diag);
  }
  EXPECT_LT(mse(state.previous, h), 1e-10);
  EXPECT_EQ(diag.fallbacks, 0u);
  EXPECT_GT(diag.groups_used, 0u);
}

TEST(Rddce, DeterministicForAStream) {
  const Cfr h = random_channel(11, 128, 11);
  const auto x = random_symbols(128, 12);
  auto y = received(h, x);
  RandomStream nz(3, 0, 0, StreamPurpose::noise);
  for (auto& v : y) v += nz.cscg(0.1);
  EstimatorState a{h};
  EstimatorState b{h};
  RandomStream ra(5, 0, 1, StreamPurpose::partition);
  RandomStream rb(5, 0, 1, StreamPurpose::partition);
  RddceConfig cfg;
  EXPECT_EQ(rddce_step(y, a, cfg, ra).estimate, rddce_step(y, b, cfg, rb).estimate);
}

TEST(Rddce, AlphaMetricAndRedecideVariantsRun) {
  const Cfr h = random_channel(11, 128, 13);
  const auto x = random_symbols(128, 14);
  RddceConfig cfg;
  cfg.metric = SelectionMetric::magnitude;
  cfg.redecide = true;
  EstimatorState state{h};
  RandomStream rng(1, 0, 1, StreamPurpose::partition);
  const auto r = rddce_step(received(h, x), state, cfg, rng);
  EXPECT_EQ(phy::count_matching_decisions(r.decisions, x), 128u);
  EXPECT_LT(mse(r.estimate, h), 1e-10);
}

}  // namespace
}  // namespace rddce
