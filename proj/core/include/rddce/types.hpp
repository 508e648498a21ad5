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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rddce {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Complex> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const Complex> entries() const noexcept { return data_; }

  /// Rows [first, first + count) as a new matrix.
  ComplexMatrix row_block(std::size_t first, std::size_t count) const;

  ComplexMatrix conjugate_transpose() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Strictly increasing subcarrier indices, each below the subcarrier count it was built for.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<std::size_t> indices, std::size_t limit);

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t operator[](std::size_t i) const noexcept { return indices_[i]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  const std::vector<std::size_t>& values() const noexcept { return indices_; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Channel impulse response: one complex gain per sample delay in the delay window.
struct Cir {
  ComplexVec taps;

  std::size_t size() const noexcept { return taps.size(); }
  Complex operator[](std::size_t i) const noexcept { return taps[i]; }
  friend bool operator==(const Cir&, const Cir&) = default;
};

/// Channel frequency response: one complex gain per subcarrier.
struct Cfr {
  ComplexVec gains;

  std::size_t size() const noexcept { return gains.size(); }
  Complex operator[](std::size_t i) const noexcept { return gains[i]; }
  friend bool operator==(const Cfr&, const Cfr&) = default;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVec operator*(const ComplexMatrix& a, std::span<const Complex> x);

/// max |m(r, c) - δ(r, c)|; m must be square.
double max_abs_deviation_from_identity(const ComplexMatrix& m);

double max_abs_difference(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> x);

bool all_finite(std::span<const Complex> x) noexcept;

}  // namespace rddce
