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

#include "rddce/numkernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "rddce/errors.hpp"

namespace rddce::numkernels {
namespace {

// exp(-j 2 pi m / n) for m in [0, n); reused across calls with the same n.
const ComplexVec& twiddles(std::size_t n) {
  thread_local ComplexVec table;
  thread_local std::size_t table_n = 0;
  if (table_n != n) {
    table.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
      table[m] = std::polar(1.0, angle);
    }
    table_n = n;
  }
  return table;
}

ComplexVec transform(std::span<const Complex> x, bool inverse) {
  const std::size_t n = x.size();
  if (n == 0) throw InvalidArgument(inverse ? "idft: empty input" : "dft: empty input");
  const ComplexVec& w = twiddles(n);
  ComplexVec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    std::size_t phase = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * (inverse ? std::conj(w[phase]) : w[phase]);
      phase += k;
      if (phase >= n) phase -= n;
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

// max |V * inverse - I| without forming V: row r of the product is the column
// polynomials of `inverse` evaluated at nodes[r] by Horner's rule.
double identity_residual(std::span<const Complex> nodes, const ComplexMatrix& inverse) {
  const std::size_t n = nodes.size();
  std::vector<double> coeff_re(n * n);
  std::vector<double> coeff_im(n * n);
  for (std::size_t i = 0; i < n * n; ++i) {
    coeff_re[i] = inverse.entries()[i].real();
    coeff_im[i] = inverse.entries()[i].imag();
  }
  std::vector<double> re(n);
  std::vector<double> im(n);
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double zr = nodes[r].real();
    const double zi = nodes[r].imag();
    std::copy_n(coeff_re.begin() + static_cast<std::ptrdiff_t>((n - 1) * n), n, re.begin());
    std::copy_n(coeff_im.begin() + static_cast<std::ptrdiff_t>((n - 1) * n), n, im.begin());
    for (std::size_t c = n - 1; c-- > 0;) {
      const double* cr = coeff_re.data() + c * n;
      const double* ci = coeff_im.data() + c * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double a = re[j];
        const double b = im[j];
        re[j] = a * zr - b * zi + cr[j];
        im[j] = a * zi + b * zr + ci[j];
      }
    }
    re[r] -= 1.0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, re[j] * re[j] + im[j] * im[j]);
  }
  return std::sqrt(worst);
}

}  // namespace

ComplexVec dft(std::span<const Complex> x) { return transform(x, false); }

ComplexVec idft(std::span<const Complex> x) { return transform(x, true); }

ComplexVec dft_padded(std::span<const Complex> x, std::size_t n) {
  if (x.empty() || x.size() > n) throw InvalidArgument("dft_padded: need 1 <= |x| <= n");
  const ComplexVec& w = twiddles(n);
  ComplexVec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0.0;
    std::size_t phase = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += x[i] * w[phase];
      phase += k;
      if (phase >= n) phase -= n;
    }
    out[k] = acc;
  }
  return out;
}

ComplexVec fourier_nodes(const IndexSet& indices, std::size_t nc) {
  if (nc == 0) throw InvalidArgument("fourier_nodes: nc must be positive");
  ComplexVec nodes;
  nodes.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= nc) throw InvalidArgument("fourier_nodes: index " + std::to_string(i) + " >= nc");
    nodes.push_back(twiddles(nc)[i]);
  }
  return nodes;
}

ComplexMatrix fourier_submatrix(const IndexSet& indices, std::size_t n_cols, std::size_t nc) {
  if (indices.size() != n_cols) {
    throw InvalidArgument("fourier_submatrix: " + std::to_string(indices.size()) +
                          " rows requested for a square matrix with " + std::to_string(n_cols) +
                          " columns");
  }
  if (n_cols > nc) throw InvalidArgument("fourier_submatrix: more columns than subcarriers");
  const ComplexVec& w = twiddles(nc);
  ComplexMatrix m(n_cols, n_cols);
  for (std::size_t r = 0; r < n_cols; ++r) {
    if (indices[r] >= nc) throw InvalidArgument("fourier_submatrix: row index out of range");
    for (std::size_t c = 0; c < n_cols; ++c) m(r, c) = w[(indices[r] * c) % nc];
  }
  return m;
}

ComplexMatrix vandermonde(std::span<const Complex> nodes) {
  const std::size_t n = nodes.size();
  ComplexMatrix v(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex p = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
      v(r, c) = p;
      p *= nodes[r];
    }
  }
  return v;
}

VandermondeInverse vandermonde_inverse(std::span<const Complex> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw InvalidArgument("vandermonde_inverse: no nodes");

  // Master polynomial P(x) = prod (x - z_m), coefficients in ascending order, monic.
  ComplexVec master(n + 1, Complex{0.0});
  master[0] = 1.0;
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m + 1; k > 0; --k) master[k] = master[k - 1] - nodes[m] * master[k];
    master[0] = -nodes[m] * master[0];
  }

  // Column j of the inverse holds the coefficients of the Lagrange polynomial
  // P(x) / ((x - z_j) P'(z_j)); the quotient comes from synthetic division.
  VandermondeInverse result{ComplexMatrix(n, n), 0.0};
  ComplexVec quotient(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex denom = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
      if (m != j) denom *= nodes[j] - nodes[m];
    }
    if (denom == Complex{0.0}) {
      throw SingularMatrix("vandermonde_inverse: nodes " + std::to_string(j) +
                           " and another node coincide");
    }
    quotient[n - 1] = 1.0;
    for (std::size_t k = n - 1; k > 0; --k) quotient[k - 1] = master[k] + nodes[j] * quotient[k];
    const Complex scale = 1.0 / denom;
    for (std::size_t c = 0; c < n; ++c) result.inverse(c, j) = quotient[c] * scale;
  }

  result.residual = identity_residual(nodes, result.inverse);
  return result;
}

ComplexVec lu_solve(ComplexMatrix m, std::span<const Complex> b) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n) throw InvalidArgument("lu_solve: size mismatch");
  ComplexVec x(b.begin(), b.end());

  double scale = 0.0;
  for (const Complex& v : m.entries()) scale = std::max(scale, std::norm(v));
  const double tiny = scale * 1e-26;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::norm(m(r, col)) > std::norm(m(pivot, col))) pivot = r;
    }
    if (!(std::norm(m(pivot, col)) > tiny)) {
      throw SingularMatrix("lu_solve: matrix is singular at column " + std::to_string(col));
    }
    if (pivot != col) {
      std::swap_ranges(m.row(col).begin(), m.row(col).end(), m.row(pivot).begin());
      std::swap(x[col], x[pivot]);
    }
    const Complex inv_pivot = 1.0 / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = m(r, col) * inv_pivot;
      if (factor == Complex{0.0}) continue;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
      x[r] -= factor * x[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    Complex acc = x[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= m(r, c) * x[c];
    x[r] = acc / m(r, r);
  }
  return x;
}

ComplexVec min_norm_solve(const ComplexMatrix& a, std::span<const Complex> b) {
  if (a.rows() == 0 || a.rows() > a.cols()) {
    throw InvalidArgument("min_norm_solve: expected an underdetermined system (rows <= cols)");
  }
  if (b.size() != a.rows()) throw InvalidArgument("min_norm_solve: |b| != rows of A");

  // Householder QR of A^H = Q R, stored column-wise: A x = b becomes R^H y = b with x = Q y.
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<ComplexVec> cols(m, ComplexVec(n));
  double scale = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      cols[r][k] = std::conj(a(r, k));
      scale = std::max(scale, std::norm(cols[r][k]));
    }
  }
  const double tiny = scale * 1e-26;

  std::vector<ComplexVec> reflectors(m);
  ComplexVec diag(m);
  for (std::size_t j = 0; j < m; ++j) {
    ComplexVec& v = cols[j];
    double tail = 0.0;
    for (std::size_t k = j; k < n; ++k) tail += std::norm(v[k]);
    if (!(tail > tiny)) {
      throw SingularMatrix("min_norm_solve: rows are linearly dependent at row " + std::to_string(j));
    }
    const double norm = std::sqrt(tail);
    const Complex phase = v[j] == Complex{0.0} ? Complex{1.0} : v[j] / std::abs(v[j]);
    diag[j] = -phase * norm;
    ComplexVec u(v.begin() + static_cast<std::ptrdiff_t>(j), v.end());
    u[0] -= diag[j];
    double u_norm = 0.0;
    for (const Complex& e : u) u_norm += std::norm(e);
    const double inv = 1.0 / std::sqrt(u_norm);
    for (Complex& e : u) e *= inv;
    for (std::size_t c = j + 1; c < m; ++c) {
      Complex dot = 0.0;
      for (std::size_t k = 0; k < u.size(); ++k) dot += std::conj(u[k]) * cols[c][j + k];
      dot *= 2.0;
      for (std::size_t k = 0; k < u.size(); ++k) cols[c][j + k] -= dot * u[k];
    }
    reflectors[j] = std::move(u);
  }

  ComplexVec y(m);
  for (std::size_t j = 0; j < m; ++j) {
    Complex acc = b[j];
    for (std::size_t i = 0; i < j; ++i) acc -= std::conj(cols[j][i]) * y[i];
    y[j] = acc / std::conj(diag[j]);
  }

  ComplexVec x(n, Complex{0.0});
  std::copy(y.begin(), y.end(), x.begin());
  for (std::size_t j = m; j-- > 0;) {
    const ComplexVec& u = reflectors[j];
    Complex dot = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) dot += std::conj(u[k]) * x[j + k];
    dot *= 2.0;
    for (std::size_t k = 0; k < u.size(); ++k) x[j + k] -= dot * u[k];
  }
  return x;
}

}  // namespace rddce::numkernels
