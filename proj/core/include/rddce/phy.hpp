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
#include <span>
#include <vector>

#include "rddce/types.hpp"

/// QPSK mapping, hard decisions, zero-forcing equalization and per-subcarrier LS estimation.
namespace rddce::phy {

/// |H[k]| below this is treated as a null and never divided by.
inline constexpr double kDegenerateGain = 1e-12;

/// Gray mapping (b0, b1) -> ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2). |bits| must be even.
ComplexVec qpsk_modulate(std::span<const std::uint8_t> bits);

/// Nearest constellation point by quadrant. A zero real or imaginary part maps to the
/// positive side.
ComplexVec qpsk_hard_decision(std::span<const Complex> x);

/// Inverse of the Gray mapping for points produced by qpsk_hard_decision.
std::vector<std::uint8_t> qpsk_demodulate(std::span<const Complex> symbols);

struct Equalized {
  ComplexVec symbols;
  /// degenerate[k] is set where |H[k]| < kDegenerateGain; symbols[k] is 0 there.
  std::vector<bool> degenerate;
};

Equalized equalize(std::span<const Complex> y, const Cfr& h);

/// H[k] = Y[k] / X[k]. Throws InvalidArgument on a size mismatch or a zero symbol.
Cfr ls_estimate(std::span<const Complex> y, std::span<const Complex> x_bar);

/// Number of positions whose QPSK quadrant matches.
std::size_t count_matching_decisions(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace rddce::phy
