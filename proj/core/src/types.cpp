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

#include "rddce/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rddce/errors.hpp"

namespace rddce {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("ComplexMatrix: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                          " needs " + std::to_string(rows_ * cols_) + " entries, got " +
                          std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw InvalidArgument("row_block: rows out of range");
  ComplexMatrix out(count, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_), count * cols_,
              out.data_.begin());
  return out;
}

ComplexMatrix ComplexMatrix::conjugate_transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

IndexSet::IndexSet(std::vector<std::size_t> indices, std::size_t limit)
    : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= limit) {
      throw InvalidArgument("IndexSet: index " + std::to_string(indices_[i]) + " >= " +
                            std::to_string(limit));
    }
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InvalidArgument("IndexSet: indices must be strictly increasing");
    }
  }
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto out_row = out.row(r);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex s = a(r, k);
      const auto b_row = b.row(k);
      for (std::size_t c = 0; c < b.cols(); ++c) out_row[c] += s * b_row[c];
    }
  }
  return out;
}

ComplexVec operator*(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: size mismatch");
  ComplexVec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Complex acc = 0.0;
    const auto row = a.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
  return out;
}

double max_abs_deviation_from_identity(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("identity deviation needs a square matrix");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Complex target = r == c ? Complex{1.0} : Complex{0.0};
      worst = std::max(worst, std::abs(m(r, c) - target));
    }
  }
  return worst;
}

double max_abs_difference(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("max_abs_difference: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double norm2(std::span<const Complex> x) {
  double acc = 0.0;
  for (const Complex& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

bool all_finite(std::span<const Complex> x) noexcept {
  return std::all_of(x.begin(), x.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace rddce
