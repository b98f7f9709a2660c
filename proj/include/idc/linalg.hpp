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

#ifndef IDC_LINALG_HPP_
#define IDC_LINALG_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace idc {

// Small dense row-major matrix. Everything in this project is desk scale, so
// no attempt is made at blocking or sparsity.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {a_.data() + i * cols_, cols_};
  }
  bool is_zero() const;
  double frobenius_norm() const;

  // y = A x  /  y = A^T x
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transpose(std::span<const double> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

struct SingularPair {
  double sigma = 0.0;
  std::vector<double> left;   // unit vector, A v = sigma * u
  std::vector<double> right;  // unit vector
  bool converged = false;
  std::size_t iterations = 0;
};

// Top singular pair by power iteration on A^T A, deterministic seeded start.
// A zero matrix yields sigma = 0 with converged = true.
SingularPair top_singular_pair(const Matrix& a, double tol = 1e-8,
                               std::size_t max_iters = 1000,
                               std::uint64_t seed = 0x51D5EEDULL);

// Symmetric |V|x|V| matrix with zero diagonal from a vector indexed by
// unordered pairs {i,j}, i<j, in lexicographic order.
Matrix symmetric_from_pairs(std::span<const double> pair_weights,
                            std::size_t vertex_count);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);

}  // namespace idc

#endif  // IDC_LINALG_HPP_
