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

#include "rddce/phy.hpp"

#include <cmath>
#include <numbers>

#include "rddce/errors.hpp"

namespace rddce::phy {
namespace {

constexpr double kScale = 1.0 / std::numbers::sqrt2;

bool positive_side(double v) { return !(v < 0.0); }

}  // namespace

ComplexVec qpsk_modulate(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw InvalidArgument("qpsk_modulate: odd number of bits");
  ComplexVec out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t b0 = bits[2 * i];
    const std::uint8_t b1 = bits[2 * i + 1];
    if (b0 > 1 || b1 > 1) throw InvalidArgument("qpsk_modulate: bits must be 0 or 1");
    out[i] = {(1.0 - 2.0 * b0) * kScale, (1.0 - 2.0 * b1) * kScale};
  }
  return out;
}

ComplexVec qpsk_hard_decision(std::span<const Complex> x) {
  ComplexVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = {positive_side(x[i].real()) ? kScale : -kScale,
              positive_side(x[i].imag()) ? kScale : -kScale};
  }
  return out;
}

std::vector<std::uint8_t> qpsk_demodulate(std::span<const Complex> symbols) {
  std::vector<std::uint8_t> bits(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = positive_side(symbols[i].real()) ? 0 : 1;
    bits[2 * i + 1] = positive_side(symbols[i].imag()) ? 0 : 1;
  }
  return bits;
}

Equalized equalize(std::span<const Complex> y, const Cfr& h) {
  if (y.size() != h.size()) throw InvalidArgument("equalize: |Y| != |H|");
  Equalized out{ComplexVec(y.size()), std::vector<bool>(y.size(), false)};
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (std::abs(h.gains[k]) < kDegenerateGain) {
      out.symbols[k] = 0.0;
      out.degenerate[k] = true;
    } else {
      out.symbols[k] = y[k] / h.gains[k];
    }
  }
  return out;
}

Cfr ls_estimate(std::span<const Complex> y, std::span<const Complex> x_bar) {
  if (y.size() != x_bar.size()) throw InvalidArgument("ls_estimate: |Y| != |X|");
  Cfr h{ComplexVec(y.size())};
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (x_bar[k] == Complex{0.0}) {
      throw InvalidArgument("ls_estimate: zero reference symbol at subcarrier " +
                            std::to_string(k));
    }
    h.gains[k] = y[k] / x_bar[k];
  }
  return h;
}

std::size_t count_matching_decisions(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("count_matching_decisions: size mismatch");
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (positive_side(a[i].real()) == positive_side(b[i].real()) &&
        positive_side(a[i].imag()) == positive_side(b[i].imag())) {
      ++matches;
    }
  }
  return matches;
}

}  // namespace rddce::phy
