// Copyright 2026 The idc-release Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idc/linalg.hpp"

#include <cmath>

#include "idc/errors.hpp"
#include "idc/noise.hpp"

namespace idc {

bool Matrix::is_zero() const {
  for (double v : a_) {
    if (v != 0.0) return false;
  }
  return true;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) fail(ErrorKind::kDimension, "matrix-vector size mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    const double* r = a_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> Matrix::apply_transpose(std::span<const double> x) const {
  if (x.size() != rows_) fail(ErrorKind::kDimension, "matrix-vector size mismatch");
  std::vector<double> y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = a_.data() + i * cols_;
    const double xi = x[i];
    for (std::size_t j = 0; j < cols_; ++j) y[j] += r[j] * xi;
  }
  return y;
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorKind::kDimension, "dot size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

namespace {

void normalize(std::vector<double>& v) {
  const double n = norm2(v);
  if (n > 0.0) {
    for (double& x : v) x /= n;
  }
}

}  // namespace

SingularPair top_singular_pair(const Matrix& a, double tol,
                               std::size_t max_iters, std::uint64_t seed) {
  SingularPair out;
  out.left.assign(a.rows(), 0.0);
  out.right.assign(a.cols(), 0.0);
  if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) {
    out.converged = true;
    return out;
  }

  NoiseSource rng(seed);
  std::vector<double> v(a.cols());
  for (double& x : v) x = rng.uniform01() - 0.5;
  normalize(v);

  double sigma_prev = -1.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    std::vector<double> u = a.apply(v);
    const double sigma = norm2(u);
    out.iterations = it;
    if (sigma == 0.0) {
      // Start vector landed in the null space; re-seed once.
      for (double& x : v) x = rng.uniform01() - 0.5;
      normalize(v);
      continue;
    }
    for (double& x : u) x /= sigma;
    v = a.apply_transpose(u);
    normalize(v);
    out.sigma = sigma;
    out.left = std::move(u);
    if (sigma_prev >= 0.0 && std::abs(sigma - sigma_prev) <= tol * std::max(1.0, sigma)) {
      out.converged = true;
      break;
    }
    sigma_prev = sigma;
  }
  out.right = v;
  // Final consistent estimate: sigma = |A v| for the settled right vector.
  std::vector<double> u = a.apply(out.right);
  const double sigma = norm2(u);
  if (sigma > 0.0) {
    for (double& x : u) x /= sigma;
    out.sigma = sigma;
    out.left = std::move(u);
  }
  return out;
}

Matrix symmetric_from_pairs(std::span<const double> pair_weights,
                            std::size_t vertex_count) {
  const std::size_t expect = vertex_count * (vertex_count - 1) / 2;
  if (pair_weights.size() != expect) {
    fail(ErrorKind::kDimension, "pair vector length does not match vertex count");
  }
  Matrix m(vertex_count, vertex_count);
  std::size_t e = 0;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    for (std::size_t j = i + 1; j < vertex_count; ++j, ++e) {
      m.at(i, j) = pair_weights[e];
      m.at(j, i) = pair_weights[e];
    }
  }
  return m;
}

}  // namespace idc
