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

#include "rddce/channel.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "rddce/errors.hpp"
#include "rddce/numkernels.hpp"

namespace rddce::channel {

TapProfile eva_profile(double sample_period_ns) {
  return {"EVA",
          {0, 30, 150, 310, 370, 710, 1090, 1730, 2510},
          {0, -1.5, -1.4, -3.6, -0.6, -9.1, -7, -12, -16.9},
          sample_period_ns};
}

TapProfile etu_profile(double sample_period_ns) {
  return {"ETU",
          {0, 50, 120, 200, 230, 500, 1600, 2300, 5000},
          {-1, -1, -1, 0, 0, 0, -3, -5, -7},
          sample_period_ns};
}

void validate_profile(const TapProfile& profile) {
  if (profile.delays_ns.empty()) throw ConfigError("profile " + profile.name + ": no taps");
  if (profile.delays_ns.size() != profile.powers_db.size()) {
    throw ConfigError("profile " + profile.name + ": " +
                      std::to_string(profile.delays_ns.size()) + " delays but " +
                      std::to_string(profile.powers_db.size()) + " powers");
  }
  if (!(profile.sample_period_ns > 0.0) || !std::isfinite(profile.sample_period_ns)) {
    throw ConfigError("sample_period_ns must be positive");
  }
  if (profile.delays_ns.front() != 0.0) {
    throw ConfigError("profile " + profile.name + ": first delay must be 0 ns");
  }
  for (std::size_t i = 0; i < profile.delays_ns.size(); ++i) {
    if (!std::isfinite(profile.delays_ns[i]) || !std::isfinite(profile.powers_db[i])) {
      throw ConfigError("profile " + profile.name + ": non-finite value at tap " +
                        std::to_string(i));
    }
    if (i > 0 && !(profile.delays_ns[i] > profile.delays_ns[i - 1])) {
      throw ConfigError("profile " + profile.name + ": delays must be strictly increasing");
    }
  }
}

QuantizedProfile quantize_profile(const TapProfile& profile, std::size_t n_taps) {
  validate_profile(profile);
  std::map<std::size_t, double> merged;
  double total = 0.0;
  for (std::size_t i = 0; i < profile.delays_ns.size(); ++i) {
    const auto index =
        static_cast<std::size_t>(std::llround(profile.delays_ns[i] / profile.sample_period_ns));
    if (index >= n_taps) {
      std::ostringstream msg;
      msg << "profile " << profile.name << ": tap " << i << " (" << profile.delays_ns[i]
          << " ns) lands on delay index " << index << ", outside the " << n_taps
          << "-tap window";
      throw ConfigError(msg.str());
    }
    const double linear = std::pow(10.0, profile.powers_db[i] / 10.0);
    merged[index] += linear;
    total += linear;
  }
  QuantizedProfile out;
  out.n_taps = n_taps;
  for (const auto& [index, power] : merged) out.taps.push_back({index, power / total});
  return out;
}

Cir draw_cir(const QuantizedProfile& profile, RandomStream& rng) {
  Cir cir{ComplexVec(profile.n_taps, Complex{0.0})};
  for (const QuantizedTap& tap : profile.taps) cir.taps[tap.delay_index] = rng.cscg(tap.variance);
  return cir;
}

Cir evolve_cir(const Cir& prev, double lambda, const QuantizedProfile& profile,
               RandomStream& rng) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidArgument("evolve_cir: lambda must lie in [0, 1]");
  }
  if (prev.size() != profile.n_taps) throw InvalidArgument("evolve_cir: window mismatch");
  if (lambda == 1.0) return prev;
  const Cir fresh = draw_cir(profile, rng);
  const double innovation = std::sqrt(1.0 - lambda * lambda);
  Cir next{ComplexVec(prev.size())};
  for (std::size_t i = 0; i < prev.size(); ++i) {
    next.taps[i] = lambda * prev.taps[i] + innovation * fresh.taps[i];
  }
  return next;
}

Cfr cir_to_cfr(const Cir& cir, std::size_t nc) {
  if (cir.size() > nc) throw InvalidArgument("cir_to_cfr: more taps than subcarriers");
  return Cfr{numkernels::dft_padded(cir.taps, nc)};
}

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

ComplexVec apply_channel(std::span<const Complex> x, const Cfr& h, double noise_var,
                         RandomStream& rng) {
  if (x.size() != h.size()) throw InvalidArgument("apply_channel: |X| != |H|");
  if (!(noise_var >= 0.0)) throw InvalidArgument("apply_channel: negative noise variance");
  ComplexVec y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    y[k] = h.gains[k] * x[k];
    if (noise_var > 0.0) y[k] += rng.cscg(noise_var);
  }
  return y;
}

}  // namespace rddce::channel
