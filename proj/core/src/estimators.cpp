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

#include "rddce/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rddce/errors.hpp"
#include "rddce/phy.hpp"

namespace rddce::estimators {
namespace {

constexpr int kRefinementPasses = 2;

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw InvalidArgument(std::string(what) + ": expected length " + std::to_string(want) +
                          ", got " + std::to_string(got));
  }
}

ComplexVec mean_of(std::span<const GroupObservation> observations,
                   std::span<const std::size_t> members, std::size_t n_taps) {
  ComplexVec mean(n_taps, Complex{0.0});
  for (std::size_t i : members) {
    for (std::size_t t = 0; t < n_taps; ++t) mean[t] += observations[i].taps[t];
  }
  const double inv = 1.0 / static_cast<double>(members.size());
  for (Complex& v : mean) v *= inv;
  return mean;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::basic: return "basic";
    case Method::filtering: return "filtering";
    case Method::interpolation: return "interpolation";
    case Method::rddce: return "rddce";
    case Method::ideal: return "ideal";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::basic, Method::filtering, Method::interpolation, Method::rddce,
                   Method::ideal}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("method: unknown value '" + std::string(name) +
                    "' (expected basic, filtering, interpolation, rddce or ideal)");
}

std::string_view to_string(SelectionMetric metric) noexcept {
  return metric == SelectionMetric::relative_change ? "M" : "alpha";
}

SelectionMetric parse_metric(std::string_view name) {
  if (name == "M") return SelectionMetric::relative_change;
  if (name == "alpha") return SelectionMetric::magnitude;
  throw ConfigError("metric: unknown value '" + std::string(name) + "' (expected M or alpha)");
}

void RddceConfig::validate(std::size_t nc) const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (n_taps == 0) fail("N_taps must be at least 1");
  if (n_w == 0) fail("N_w must be at least 1");
  if (n2 != n_taps + n_w) {
    fail("N2 must equal N_taps + N_w (N2=" + std::to_string(n2) + ", N_taps=" +
         std::to_string(n_taps) + ", N_w=" + std::to_string(n_w) + ")");
  }
  if (n0 < n2) fail("N0 must be at least N2");
  if (n0 > nc) fail("N0 must not exceed Nc");
  if (n1 == 0) fail("N1 must be at least 1");
  if (n_iter == 0) fail("N_iter must be at least 1");
  if (k_keep == 0 || k_keep > n1) fail("K_keep must lie in [1, N1]");
}

Preliminary ddce_preliminary(std::span<const Complex> y, const EstimatorState& state) {
  require_size(state.previous.size(), y.size(), "ddce_preliminary");
  phy::Equalized eq = phy::equalize(y, state.previous);
  Preliminary out;
  out.decisions = phy::qpsk_hard_decision(eq.symbols);
  out.estimate = phy::ls_estimate(y, out.decisions);
  out.degenerate = std::move(eq.degenerate);
  return out;
}

std::vector<double> metric_m(const Cfr& preliminary, const Cfr& previous) {
  require_size(previous.size(), preliminary.size(), "metric_m");
  std::vector<double> m(preliminary.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double base = std::abs(previous.gains[k]);
    m[k] = base < phy::kDegenerateGain ? std::numeric_limits<double>::infinity()
                                       : std::abs(preliminary.gains[k] - previous.gains[k]) / base;
  }
  return m;
}

std::vector<double> metric_alpha(const Cfr& estimate) {
  std::vector<double> alpha(estimate.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) alpha[k] = std::abs(estimate.gains[k]);
  return alpha;
}

IndexSet select_channels(std::span<const double> scores, std::size_t n0, RankOrder order) {
  std::vector<std::size_t> candidates;
  candidates.reserve(scores.size());
  for (std::size_t k = 0; k < scores.size(); ++k) {
    if (std::isfinite(scores[k])) candidates.push_back(k);
  }
  if (candidates.size() < n0) {
    throw SelectionStarvation("select_channels: need " + std::to_string(n0) +
                              " usable subcarriers, only " + std::to_string(candidates.size()) +
                              " have a finite score");
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) {
      return order == RankOrder::smallest ? scores[a] < scores[b] : scores[a] > scores[b];
    }
    return a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n0),
                    candidates.end(), better);
  candidates.resize(n0);
  std::sort(candidates.begin(), candidates.end());
  return IndexSet(std::move(candidates), scores.size());
}

IndexSet draw_group(const IndexSet& selected, std::size_t n2, std::size_t nc, RandomStream& rng) {
  if (n2 > selected.size()) throw InvalidArgument("draw_group: group larger than selection");
  std::vector<std::size_t> pool = selected.values();
  for (std::size_t i = 0; i < n2; ++i) {
    const std::size_t j = i + rng.uniform_index(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n2);
  std::sort(pool.begin(), pool.end());
  return IndexSet(std::move(pool), nc);
}

std::vector<IndexSet> partition_groups(const IndexSet& selected, const RddceConfig& cfg,
                                       std::size_t nc, RandomStream& rng) {
  if (selected.size() < cfg.n2) throw InvalidArgument("partition_groups: N0 < N2");
  std::vector<IndexSet> groups;
  groups.reserve(cfg.n1);
  for (std::size_t g = 0; g < cfg.n1; ++g) groups.push_back(draw_group(selected, cfg.n2, nc, rng));
  return groups;
}

GroupCir group_cir(const Cfr& preliminary, const IndexSet& indices, std::size_t nc) {
  if (indices.empty() || indices.size() > nc) {
    throw InvalidArgument("group_cir: group size must lie in [1, Nc]");
  }
  return group_cir(preliminary, indices,
                   numkernels::vandermonde_inverse(numkernels::fourier_nodes(indices, nc)));
}

GroupCir group_cir(const Cfr& preliminary, const IndexSet& indices,
                   const numkernels::VandermondeInverse& transform) {
  if (transform.inverse.rows() != indices.size()) {
    throw InvalidArgument("group_cir: transform does not match the group size");
  }
  ComplexVec observed(indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] >= preliminary.size()) throw InvalidArgument("group_cir: index out of range");
    observed[r] = preliminary.gains[indices[r]];
  }
  GroupCir out{indices, transform, {}};
  out.taps = transform.inverse * observed;

  // Iterative refinement against the group's Vandermonde system.
  const ComplexVec nodes = numkernels::fourier_nodes(indices, preliminary.size());
  ComplexVec mismatch(indices.size());
  for (int pass = 0; pass < kRefinementPasses; ++pass) {
    for (std::size_t r = 0; r < indices.size(); ++r) {
      Complex value = 0.0;
      for (std::size_t t = out.taps.size(); t-- > 0;) value = value * nodes[r] + out.taps[t];
      mismatch[r] = observed[r] - value;
    }
    const ComplexVec correction = transform.inverse * mismatch;
    for (std::size_t t = 0; t < out.taps.size(); ++t) out.taps[t] += correction[t];
  }
  return out;
}

GroupObservation denoise_group(const GroupCir& group, std::size_t n_taps) {
  const std::size_t n2 = group.taps.size();
  if (n_taps == 0 || n_taps >= n2) {
    throw InvalidArgument("denoise_group: need 1 <= N_taps < group size");
  }
  const std::size_t n_w = n2 - n_taps;
  const std::span<const Complex> tail(group.taps.data() + n_taps, n_w);

  // The tail taps are F_w W for the unknown frequency-domain noise W; take the
  // minimum-norm W consistent with them and remove its full footprint.
  const ComplexMatrix noise_rows = group.transform.inverse.row_block(n_taps, n_w);
  const ComplexVec noise_freq = numkernels::min_norm_solve(noise_rows, tail);
  const ComplexVec noise_taps = group.transform.inverse * noise_freq;

  GroupObservation obs;
  obs.residual = group.transform.residual;
  obs.taps.resize(n_taps);
  for (std::size_t t = 0; t < n_taps; ++t) obs.taps[t] = group.taps[t] - noise_taps[t];
  for (std::size_t t = n_taps; t < n2; ++t) {
    obs.tail_residual = std::max(obs.tail_residual, std::abs(group.taps[t] - noise_taps[t]));
  }
  return obs;
}

std::optional<ComplexVec> one_mean_filter(std::span<const GroupObservation> observations,
                                          const RddceConfig& cfg) {
  if (observations.empty()) return std::nullopt;
  const std::size_t n_taps = observations.front().taps.size();
  for (const GroupObservation& obs : observations) {
    require_size(obs.taps.size(), n_taps, "one_mean_filter");
  }

  std::vector<std::size_t> order(observations.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  ComplexVec centre = mean_of(observations, order, n_taps);

  const std::size_t keep = std::min(cfg.k_keep, observations.size());
  std::vector<double> distance(observations.size());
  for (std::size_t iter = 0; iter < cfg.n_iter; ++iter) {
    for (std::size_t i = 0; i < observations.size(); ++i) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n_taps; ++t) acc += std::norm(observations[i].taps[t] - centre[t]);
      distance[i] = std::sqrt(acc);
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return distance[a] != distance[b] ? distance[a] < distance[b] : a < b;
                      });
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
    centre = mean_of(observations, std::span(order).first(keep), n_taps);
  }
  return centre;
}

Cfr finalize_estimate(std::span<const Complex> h_m, std::size_t nc) {
  if (h_m.empty() || h_m.size() > nc) throw InvalidArgument("finalize_estimate: need 1 <= |h| <= Nc");
  return Cfr{numkernels::dft_padded(h_m, nc)};
}

ComplexVec dft_truncate(const Cfr& estimate, std::size_t n_taps) {
  if (n_taps == 0 || n_taps > estimate.size()) {
    throw InvalidArgument("dft_truncate: need 1 <= N_taps <= Nc");
  }
  ComplexVec taps = numkernels::idft(estimate.gains);
  taps.resize(n_taps);
  return taps;
}

Cfr preamble_estimate(std::span<const Complex> y, std::span<const Complex> preamble,
                      std::size_t n_taps) {
  const Cfr raw = phy::ls_estimate(y, preamble);
  return finalize_estimate(dft_truncate(raw, n_taps), raw.size());
}

StepResult basic_step(std::span<const Complex> y, EstimatorState& state) {
  Preliminary pre = ddce_preliminary(y, state);
  state.previous = pre.estimate;
  return {std::move(pre.estimate), std::move(pre.decisions)};
}

StepResult filtering_step(std::span<const Complex> y, EstimatorState& state, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("filtering_step: gamma must lie in (0, 1]");
  Preliminary pre = ddce_preliminary(y, state);
  Cfr next{ComplexVec(y.size())};
  for (std::size_t k = 0; k < y.size(); ++k) {
    next.gains[k] = (1.0 - gamma) * state.previous.gains[k] + gamma * pre.estimate.gains[k];
  }
  state.previous = next;
  return {std::move(next), std::move(pre.decisions)};
}

InterpolationPilots make_interpolation_pilots(std::size_t nc, std::size_t count,
                                              std::size_t n_taps) {
  if (count == 0 || count > nc) throw InvalidArgument("interpolation pilots: need 1 <= count <= Nc");
  if (n_taps >= count) throw InvalidArgument("interpolation pilots: need N_taps < count");
  std::vector<std::size_t> idx(count);
  for (std::size_t i = 0; i < count; ++i) idx[i] = i * nc / count;
  IndexSet indices(std::move(idx), nc);
  auto transform = numkernels::vandermonde_inverse(numkernels::fourier_nodes(indices, nc));
  return {std::move(indices), std::move(transform), n_taps};
}

StepResult interpolation_step(std::span<const Complex> y, EstimatorState& state,
                              const InterpolationPilots& pilots) {
  Preliminary pre = ddce_preliminary(y, state);
  const GroupCir group = group_cir(pre.estimate, pilots.indices, pilots.transform);
  const GroupObservation obs = denoise_group(group, pilots.n_taps);
  state.previous = finalize_estimate(obs.taps, y.size());
  return {state.previous, std::move(pre.decisions)};
}

StepResult rddce_step(std::span<const Complex> y, EstimatorState& state, const RddceConfig& cfg,
                      RandomStream& rng, RddceDiagnostics* diagnostics) {
  const std::size_t nc = y.size();
  Preliminary pre = ddce_preliminary(y, state);

  std::vector<double> scores;
  RankOrder order = RankOrder::smallest;
  if (cfg.metric == SelectionMetric::relative_change) {
    scores = metric_m(pre.estimate, state.previous);
  } else {
    scores = metric_alpha(pre.estimate);
    order = RankOrder::largest;
  }
  for (std::size_t k = 0; k < nc; ++k) {
    if (pre.degenerate[k]) scores[k] = std::numeric_limits<double>::quiet_NaN();
  }
  const IndexSet selected = select_channels(scores, cfg.n0, order);

  RddceDiagnostics local;
  std::vector<GroupObservation> observations;
  observations.reserve(cfg.n1);
  for (IndexSet& indices : partition_groups(selected, cfg, nc, rng)) {
    std::optional<GroupCir> group;
    for (std::size_t attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      if (attempt > 0) {
        indices = draw_group(selected, cfg.n2, nc, rng);
        ++local.groups_redrawn;
      }
      try {
        GroupCir candidate = group_cir(pre.estimate, indices, nc);
        if (!candidate.transform.ill_conditioned()) {
          group = std::move(candidate);
          break;
        }
      } catch (const SingularMatrix&) {
      }
    }
    if (!group) {
      ++local.groups_dropped;
      continue;
    }
    try {
      observations.push_back(denoise_group(*group, cfg.n_taps));
    } catch (const SingularMatrix&) {
      ++local.groups_dropped;
    }
  }
  local.groups_used = observations.size();

  std::optional<ComplexVec> consensus = one_mean_filter(observations, cfg);
  if (!consensus) {
    ++local.fallbacks;
    consensus = dft_truncate(pre.estimate, cfg.n_taps);
  }
  state.previous = finalize_estimate(*consensus, nc);

  if (diagnostics) {
    diagnostics->groups_used += local.groups_used;
    diagnostics->groups_redrawn += local.groups_redrawn;
    diagnostics->groups_dropped += local.groups_dropped;
    diagnostics->fallbacks += local.fallbacks;
  }

  ComplexVec decisions = cfg.redecide
                             ? phy::qpsk_hard_decision(phy::equalize(y, state.previous).symbols)
                             : std::move(pre.decisions);
  return {state.previous, std::move(decisions)};
}

StepResult ideal_step(std::span<const Complex> y, const Cfr& truth, EstimatorState& state) {
  require_size(truth.size(), y.size(), "ideal_step");
  ComplexVec decisions = phy::qpsk_hard_decision(phy::equalize(y, truth).symbols);
  state.previous = truth;
  return {truth, std::move(decisions)};
}

namespace {

class BasicTracker final : public ChannelTracker {
 public:
  Method method() const noexcept override { return Method::basic; }
  StepResult step(std::span<const Complex> y, const Cfr&, RandomStream&) override {
    return basic_step(y, state_);
  }
};

class FilteringTracker final : public ChannelTracker {
 public:
  explicit FilteringTracker(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  }
  Method method() const noexcept override { return Method::filtering; }
  StepResult step(std::span<const Complex> y, const Cfr&, RandomStream&) override {
    return filtering_step(y, state_, gamma_);
  }

 private:
  double gamma_;
};

class InterpolationTracker final : public ChannelTracker {
 public:
  InterpolationTracker(std::size_t nc, std::size_t n_taps)
      : pilots_(make_interpolation_pilots(nc, kInterpolationSubcarriers, n_taps)) {}
  Method method() const noexcept override { return Method::interpolation; }
  StepResult step(std::span<const Complex> y, const Cfr&, RandomStream&) override {
    return interpolation_step(y, state_, pilots_);
  }

 private:
  InterpolationPilots pilots_;
};

class RddceTracker final : public ChannelTracker {
 public:
  explicit RddceTracker(const RddceConfig& cfg) : cfg_(cfg) {}
  Method method() const noexcept override { return Method::rddce; }
  StepResult step(std::span<const Complex> y, const Cfr&, RandomStream& rng) override {
    return rddce_step(y, state_, cfg_, rng);
  }

 private:
  RddceConfig cfg_;
};

class IdealTracker final : public ChannelTracker {
 public:
  Method method() const noexcept override { return Method::ideal; }
  StepResult step(std::span<const Complex> y, const Cfr& truth, RandomStream&) override {
    return ideal_step(y, truth, state_);
  }
};

}  // namespace

std::unique_ptr<ChannelTracker> make_tracker(Method method, const TrackerSettings& settings) {
  switch (method) {
    case Method::basic: return std::make_unique<BasicTracker>();
    case Method::filtering: return std::make_unique<FilteringTracker>(settings.gamma);
    case Method::interpolation:
      return std::make_unique<InterpolationTracker>(settings.nc, settings.rddce.n_taps);
    case Method::rddce:
      settings.rddce.validate(settings.nc);
      return std::make_unique<RddceTracker>(settings.rddce);
    case Method::ideal: return std::make_unique<IdealTracker>();
  }
  throw InvalidArgument("make_tracker: unknown method");
}

}  // namespace rddce::estimators
