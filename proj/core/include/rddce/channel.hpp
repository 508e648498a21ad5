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
#include <span>
#include <string>
#include <vector>

#include "rddce/random.hpp"
#include "rddce/types.hpp"

/// Tapped-delay-line Rayleigh fading channels and the per-subcarrier signal model
/// Y[k] = H[k] X[k] + W[k].
namespace rddce::channel {

inline constexpr double kDefaultSamplePeriodNs = 520.8;

/// Power-delay profile in physical units.
struct TapProfile {
  std::string name;
  std::vector<double> delays_ns;
  std::vector<double> powers_db;
  double sample_period_ns = kDefaultSamplePeriodNs;

  friend bool operator==(const TapProfile&, const TapProfile&) = default;
};

/// 3GPP Extended Vehicular A.
TapProfile eva_profile(double sample_period_ns = kDefaultSamplePeriodNs);
/// 3GPP Extended Typical Urban.
TapProfile etu_profile(double sample_period_ns = kDefaultSamplePeriodNs);

/// Throws ConfigError on malformed profiles (empty, size mismatch, delays not strictly
/// increasing from zero, non-positive sample period).
void validate_profile(const TapProfile& profile);

struct QuantizedTap {
  std::size_t delay_index = 0;
  double variance = 0.0;
};

/// Integer-delay profile with unit total power inside a delay window of n_taps samples.
struct QuantizedProfile {
  std::vector<QuantizedTap> taps;
  std::size_t n_taps = 0;
};

/// Rounds delays to the nearest sample, merges colliding taps by adding linear power
/// and normalizes the total to one. Throws ConfigError if a tap falls outside the window.
QuantizedProfile quantize_profile(const TapProfile& profile, std::size_t n_taps);

Cir draw_cir(const QuantizedProfile& profile, RandomStream& rng);

/// lambda * prev + sqrt(1 - lambda^2) * (fresh draw).
Cir evolve_cir(const Cir& prev, double lambda, const QuantizedProfile& profile, RandomStream& rng);

/// DFT of the taps zero-padded to nc.
Cfr cir_to_cfr(const Cir& cir, std::size_t nc);

/// Noise variance for a given SNR with unit transmit power.
double noise_variance(double snr_db);

/// Y[k] = H[k] X[k] + W[k] with W[k] ~ CN(0, noise_var).
ComplexVec apply_channel(std::span<const Complex> x, const Cfr& h, double noise_var,
                         RandomStream& rng);

}  // namespace rddce::channel
