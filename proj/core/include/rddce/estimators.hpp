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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rddce/numkernels.hpp"
#include "rddce/random.hpp"
#include "rddce/types.hpp"

/// Decision-directed channel trackers: the reliable grouped-DFT tracker (RDDCE) and the
/// Basic, Filtering, Interpolation and Ideal reference methods.
///
/// Every tracker advances one OFDM symbol at a time. The hard decisions it reports are the
/// ones made from the previous estimate, before that estimate is refined with the current
/// symbol (Ideal decides from the true channel instead).
namespace rddce::estimators {

enum class Method { basic, filtering, interpolation, rddce, ideal };

std::string_view to_string(Method method) noexcept;
/// Throws ConfigError for unknown names.
Method parse_method(std::string_view name);

/// How subcarriers are ranked before grouping.
enum class SelectionMetric {
  /// |H~[k] - H^[k]| / |H^[k]|, smallest first.
  relative_change,
  /// |H~[k]|, largest first.
  magnitude,
};

std::string_view to_string(SelectionMetric metric) noexcept;
SelectionMetric parse_metric(std::string_view name);

enum class RankOrder { smallest, largest };

struct RddceConfig {
  std::size_t n0 = 100;     ///< subcarriers kept by the selection stage
  std::size_t n1 = 15;      ///< number of groups
  std::size_t n2 = 20;      ///< subcarriers per group, == n_taps + n_w
  std::size_t n_taps = 11;  ///< delay window in samples
  std::size_t n_w = 9;      ///< taps past the delay window used to observe the noise
  std::size_t n_iter = 10;  ///< 1-mean iterations
  std::size_t k_keep = 5;   ///< observations averaged per 1-mean iteration
  SelectionMetric metric = SelectionMetric::relative_change;
  std::size_t max_redraws = 3;
  /// Re-decide the reported symbols from the refined estimate (second equalization pass).
  bool redecide = false;

  /// Throws ConfigError naming the offending field.
  void validate(std::size_t nc) const;

  friend bool operator==(const RddceConfig&, const RddceConfig&) = default;
};

/// Size of the fixed pilot-role subset used by the Interpolation baseline.
inline constexpr std::size_t kInterpolationSubcarriers = 20;
inline constexpr double kDefaultGamma = 0.5;

struct EstimatorState {
  Cfr previous;
};

struct StepResult {
  Cfr estimate;
  ComplexVec decisions;
};

struct Preliminary {
  ComplexVec decisions;
  Cfr estimate;
  std::vector<bool> degenerate;
};

/// Equalize with the previous estimate, hard-decide, then LS-estimate from the decisions.
Preliminary ddce_preliminary(std::span<const Complex> y, const EstimatorState& state);

/// Relative change per subcarrier; +inf where the previous estimate is a null.
std::vector<double> metric_m(const Cfr& preliminary, const Cfr& previous);
std::vector<double> metric_alpha(const Cfr& estimate);

/// Indices of the n0 best finite scores, ties broken by lower index, returned in
/// increasing order. Throws SelectionStarvation if fewer than n0 scores are finite.
IndexSet select_channels(std::span<const double> scores, std::size_t n0, RankOrder order);

/// n2 distinct members of `selected`, uniformly without replacement.
IndexSet draw_group(const IndexSet& selected, std::size_t n2, std::size_t nc, RandomStream& rng);

/// n1 independent groups; members are distinct within a group, groups may overlap.
std::vector<IndexSet> partition_groups(const IndexSet& selected, const RddceConfig& cfg,
                                       std::size_t nc, RandomStream& rng);

/// Impulse response seen through one group of subcarriers.
struct GroupCir {
  IndexSet indices;
  /// inverse of the group's Fourier submatrix, plus its conditioning residual
  numkernels::VandermondeInverse transform;
  /// length |indices|; the first n_taps carry the channel, the rest only noise
  ComplexVec taps;
};

/// Throws InvalidArgument if |indices| is zero or exceeds nc.
GroupCir group_cir(const Cfr& preliminary, const IndexSet& indices, std::size_t nc);
/// Same, reusing a transform computed earlier for the same indices.
GroupCir group_cir(const Cfr& preliminary, const IndexSet& indices,
                   const numkernels::VandermondeInverse& transform);

struct GroupObservation {
  ComplexVec taps;  ///< length n_taps
  double residual = 0.0;
  /// max |compensated tail|; zero up to rounding by construction
  double tail_residual = 0.0;
};

/// Removes the noise component visible in the taps past the delay window.
/// Throws SingularMatrix when the noise-observation rows are rank deficient.
GroupObservation denoise_group(const GroupCir& group, std::size_t n_taps);

/// Consensus of the observations; std::nullopt when there are none.
std::optional<ComplexVec> one_mean_filter(std::span<const GroupObservation> observations,
                                          const RddceConfig& cfg);

/// DFT of h_m zero-padded to nc.
Cfr finalize_estimate(std::span<const Complex> h_m, std::size_t nc);

/// Full-band DFT channel estimation: idft, keep the first n_taps taps.
ComplexVec dft_truncate(const Cfr& estimate, std::size_t n_taps);

/// Channel estimate from a known preamble: LS, then full-band DFT denoising.
Cfr preamble_estimate(std::span<const Complex> y, std::span<const Complex> preamble,
                      std::size_t n_taps);

struct RddceDiagnostics {
  std::size_t groups_used = 0;
  std::size_t groups_redrawn = 0;
  std::size_t groups_dropped = 0;
  std::size_t fallbacks = 0;
};

StepResult basic_step(std::span<const Complex> y, EstimatorState& state);

/// H^_t = (1 - gamma) H^_{t-1} + gamma H~_t. Throws InvalidArgument unless 0 < gamma <= 1.
StepResult filtering_step(std::span<const Complex> y, EstimatorState& state, double gamma);

/// Fixed, evenly spread subset used by the Interpolation baseline, with its transform.
struct InterpolationPilots {
  IndexSet indices;
  numkernels::VandermondeInverse transform;
  std::size_t n_taps = 0;
};

/// Subcarriers floor(i * nc / count) for i < count.
InterpolationPilots make_interpolation_pilots(std::size_t nc, std::size_t count,
                                              std::size_t n_taps);

StepResult interpolation_step(std::span<const Complex> y, EstimatorState& state,
                              const InterpolationPilots& pilots);

StepResult rddce_step(std::span<const Complex> y, EstimatorState& state, const RddceConfig& cfg,
                      RandomStream& rng, RddceDiagnostics* diagnostics = nullptr);

StepResult ideal_step(std::span<const Complex> y, const Cfr& truth, EstimatorState& state);

struct TrackerSettings {
  std::size_t nc = 128;
  RddceConfig rddce;
  double gamma = kDefaultGamma;
};

/// Single-owner stateful wrapper around one of the step functions.
class ChannelTracker {
 public:
  virtual ~ChannelTracker() = default;

  virtual Method method() const noexcept = 0;

  void initialize(Cfr initial) { state_.previous = std::move(initial); }

  /// `truth` is only consulted by the Ideal tracker.
  virtual StepResult step(std::span<const Complex> y, const Cfr& truth, RandomStream& rng) = 0;

  const EstimatorState& state() const noexcept { return state_; }

 protected:
  EstimatorState state_;
};

std::unique_ptr<ChannelTracker> make_tracker(Method method, const TrackerSettings& settings);

}  // namespace rddce::estimators
