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

#include "rddce/random.hpp"

#include <cmath>

namespace rddce {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t sample, std::uint64_t symbol,
                         StreamPurpose purpose) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ sample);
  h = mix64(h ^ symbol);
  return mix64(h ^ static_cast<std::uint64_t>(purpose));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t sample, std::uint64_t symbol,
                           StreamPurpose purpose)
    : engine_(stream_key(seed, sample, symbol, purpose)) {}

double RandomStream::gaussian() { return normal_(engine_); }

Complex RandomStream::cscg(double variance) {
  const double sigma = std::sqrt(variance / 2.0);
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {sigma * re, sigma * im};
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

std::uint8_t RandomStream::bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

}  // namespace rddce
