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

#include "rddce/types.hpp"

/// Deterministic numerical primitives shared by the channel model and the estimators.
///
/// Conventions: the forward transform carries no scale factor and uses the kernel
/// exp(-j 2 pi k n / N); the inverse carries 1/N. A Fourier submatrix built from
/// subcarrier rows I and tap columns 0..n-1 is the Vandermonde matrix V(r, c) = z_r^c
/// with nodes z_r = exp(-j 2 pi I[r] / N).
namespace rddce::numkernels {

/// Residual above which a Vandermonde inverse is reported as ill-conditioned.
inline constexpr double kIllConditionedResidual = 1e-6;

ComplexVec dft(std::span<const Complex> x);
ComplexVec idft(std::span<const Complex> x);

/// dft of x zero-padded to length n, in O(n |x|). Requires 1 <= |x| <= n.
ComplexVec dft_padded(std::span<const Complex> x, std::size_t n);

/// exp(-j 2 pi i / nc) for every i in the set.
ComplexVec fourier_nodes(const IndexSet& indices, std::size_t nc);

/// Rows indexed by `indices`, columns 0..n_cols-1 of the nc-point DFT matrix.
/// Throws InvalidArgument unless |indices| == n_cols <= nc.
ComplexMatrix fourier_submatrix(const IndexSet& indices, std::size_t n_cols, std::size_t nc);

/// V(r, c) = nodes[r]^c.
ComplexMatrix vandermonde(std::span<const Complex> nodes);

struct VandermondeInverse {
  ComplexMatrix inverse;
  /// max |V * inverse - I|, the conditioning diagnostic.
  double residual = 0.0;

  bool ill_conditioned() const noexcept { return !(residual <= kIllConditionedResidual); }
};

/// Inverse of the square Vandermonde matrix V(r, c) = nodes[r]^c by Traub's O(n^2)
/// recurrence. Throws SingularMatrix when two nodes coincide.
VandermondeInverse vandermonde_inverse(std::span<const Complex> nodes);

/// Minimum-norm solution x = A^H (A A^H)^-1 b of the underdetermined system A x = b.
/// Computed by Householder QR of A^H. Throws InvalidArgument for rows > cols or |b| != rows,
/// SingularMatrix when the rows of A are linearly dependent.
ComplexVec min_norm_solve(const ComplexMatrix& a, std::span<const Complex> b);

/// Solves the square system m x = b by Gaussian elimination with partial pivoting.
ComplexVec lu_solve(ComplexMatrix m, std::span<const Complex> b);

}  // namespace rddce::numkernels
