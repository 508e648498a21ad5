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
#include <random>

#include "rddce/types.hpp"

namespace rddce {

/// What a random stream is used for. Each purpose gets its own independent stream so
/// that, for example, the payload bits of a symbol do not depend on which estimator runs.
enum class StreamPurpose : std::uint64_t {
  channel = 1,
  payload = 2,
  noise = 3,
  partition = 4,
  preamble = 5,
  scatter = 6,
};

/// A replayable random stream keyed by (seed, sample, symbol, purpose).
///
/// Keys are hashed with splitmix64 into the seed of a std::mt19937_64, so two streams
/// with different keys are statistically independent and a stream can be recreated
/// anywhere without replaying the ones before it.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t sample, std::uint64_t symbol,
               StreamPurpose purpose);

  /// N(0, 1).
  double gaussian();
  /// Circularly symmetric complex Gaussian with E|z|^2 == variance.
  Complex cscg(double variance);
  /// Uniform on [0, n).
  std::size_t uniform_index(std::size_t n);
  /// A fair bit.
  std::uint8_t bit();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// The splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace rddce
