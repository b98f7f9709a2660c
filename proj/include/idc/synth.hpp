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

#ifndef IDC_SYNTH_HPP_
#define IDC_SYNTH_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "idc/core.hpp"
#include "idc/linalg.hpp"
#include "idc/noise.hpp"

namespace idc {

// Laplace-perturbed edge indicators; entries may be negative or exceed 1.
struct NoisyGraph {
  std::size_t vertex_count = 0;
  std::vector<double> weights;  // pair-indexed, length |V|(|V|-1)/2
};

// Weighted synthetic graph: pair weights inside [0,1].
struct WeightedSyntheticGraph {
  std::size_t vertex_count = 0;
  std::vector<double> weights;
};

struct SeparationResult {
  std::vector<std::size_t> row_set;
  std::vector<std::size_t> col_set;
  double violation = 0.0;  // A(S,T) recomputed; divided by sqrt(|S||T|) when normalized
  bool normalized = false;
  bool converged = true;
};

struct CutNormResult {
  double value = 0.0;
  std::vector<std::size_t> row_set;
  std::vector<std::size_t> col_set;
};

// Per-pair Lap(1/epsilon) perturbation of the edge indicators. (epsilon, 0)
// differentially private; everything downstream is post-processing.
NoisyGraph randomized_response(const DataHistogram& graph_db, double epsilon,
                               NoiseSource& src);

// Ordered-pair sum A(S,T) = sum_{i in S, j in T} A_ij.
double cut_sum(const Matrix& a, const std::vector<std::size_t>& s,
               const std::vector<std::size_t>& t);

// Exact cut norm max_{S,T} |A(S,T)| by enumerating row sets (at most 20 rows);
// for each S the optimal T follows from the column-sum signs.
CutNormResult cut_norm_bruteforce(const Matrix& a);

// Exact normalized cut norm max |A(S,T)| / sqrt(|S||T|) by full enumeration
// of both sets (rows + cols at most 26).
CutNormResult normalized_cut_norm_bruteforce(const Matrix& a);

// Approximate separation via the top singular pair: sweeps the
// magnitude-ordered prefixes of both singular vectors (both signs) and keeps
// the pair with the best (normalized) objective. The returned value never
// exceeds the true norm. On a zero matrix the result is the empty pair.
SeparationResult spectral_separation(const Matrix& a, bool normalized,
                                     double tol = 1e-8,
                                     std::size_t max_iters = 1000);

using SeparationOracle = std::function<SeparationResult(const Matrix&)>;

SeparationOracle spectral_oracle(bool normalized, double tol = 1e-8,
                                 std::size_t max_iters = 1000);
SeparationOracle bruteforce_oracle(bool normalized);

// Projects a noisy graph into the [0,1] box by repeated most-violated-cut
// corrections: starting from the clipped graph, each round asks the oracle
// for the worst cut of (x - z) and takes one projection step onto that
// constraint, reclipping. The best iterate by |violation| is returned; x is
// always inside the box, residual quality is the caller's to measure.
WeightedSyntheticGraph project_to_synthetic(const NoisyGraph& z,
                                            const SeparationOracle& oracle,
                                            std::uint64_t budget);

// Independent per-edge rounding: edge {i,j} present with probability x_ij.
DataHistogram round_to_unweighted(const WeightedSyntheticGraph& x,
                                  NoiseSource& src);

Matrix graph_matrix(std::span<const double> pair_weights,
                    std::size_t vertex_count);

}  // namespace idc

#endif  // IDC_SYNTH_HPP_
