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

#include "idc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idc/errors.hpp"

namespace idc {

NoisyGraph randomized_response(const DataHistogram& graph_db, double epsilon,
                               NoiseSource& src) {
  if (!graph_db.universe().has_graph_structure()) {
    fail(ErrorKind::kDomainMismatch, "randomized response needs a graph universe");
  }
  if (!(epsilon > 0.0)) fail(ErrorKind::kConfig, "epsilon must be positive");
  NoisyGraph out;
  out.vertex_count = graph_db.universe().vertex_count();
  out.weights.resize(graph_db.universe().size());
  for (std::size_t e = 0; e < out.weights.size(); ++e) {
    out.weights[e] = graph_db.weight(e) + laplace_sample(1.0 / epsilon, src);
  }
  return out;
}

double cut_sum(const Matrix& a, const std::vector<std::size_t>& s,
               const std::vector<std::size_t>& t) {
  double total = 0.0;
  for (std::size_t i : s) {
    const auto row = a.row(i);
    for (std::size_t j : t) total += row[j];
  }
  return total;
}

namespace {

std::vector<std::size_t> mask_to_set(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

}  // namespace

CutNormResult cut_norm_bruteforce(const Matrix& a) {
  if (a.rows() > 20) {
    fail(ErrorKind::kValidation, "cut_norm_bruteforce caps at 20 rows");
  }
  CutNormResult best;  // zero matrix -> 0 with empty sets
  if (a.rows() == 0 || a.cols() == 0) return best;

  const std::uint32_t masks = 1u << a.rows();
  std::vector<double> colsum(a.cols(), 0.0);
  std::uint32_t prev = 0;
  for (std::uint32_t g = 1; g < masks; ++g) {
    // Gray-code walk: one row enters or leaves per step.
    const std::uint32_t mask = g ^ (g >> 1);
    const std::uint32_t flip = mask ^ prev;
    const std::size_t row = static_cast<std::size_t>(std::countr_zero(flip));
    const double sign = (mask & flip) ? 1.0 : -1.0;
    const auto r = a.row(row);
    for (std::size_t j = 0; j < a.cols(); ++j) colsum[j] += sign * r[j];
    prev = mask;

    double pos = 0.0, neg = 0.0;
    for (double s : colsum) {
      if (s > 0.0) pos += s;
      if (s < 0.0) neg += s;
    }
    const double candidate = std::max(pos, -neg);
    if (candidate > best.value) {
      best.value = candidate;
      best.row_set = mask_to_set(mask);
      best.col_set.clear();
      const bool take_positive = pos >= -neg;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if ((take_positive && colsum[j] > 0.0) || (!take_positive && colsum[j] < 0.0)) {
          best.col_set.push_back(j);
        }
      }
    }
  }
  return best;
}

CutNormResult normalized_cut_norm_bruteforce(const Matrix& a) {
  if (a.rows() + a.cols() > 26) {
    fail(ErrorKind::kValidation, "normalized_cut_norm_bruteforce caps at 26 rows+cols");
  }
  CutNormResult best;
  if (a.rows() == 0 || a.cols() == 0) return best;

  const std::uint32_t row_masks = 1u << a.rows();
  const std::uint32_t col_masks = 1u << a.cols();
  std::vector<double> colsum(a.cols(), 0.0);
  std::uint32_t prev = 0;
  for (std::uint32_t g = 1; g < row_masks; ++g) {
    const std::uint32_t mask = g ^ (g >> 1);
    const std::uint32_t flip = mask ^ prev;
    const std::size_t row = static_cast<std::size_t>(std::countr_zero(flip));
    const double sign = (mask & flip) ? 1.0 : -1.0;
    const auto r = a.row(row);
    for (std::size_t j = 0; j < a.cols(); ++j) colsum[j] += sign * r[j];
    prev = mask;
    const double s_size = static_cast<double>(std::popcount(mask));

    double total = 0.0;
    std::uint32_t cprev = 0;
    for (std::uint32_t cg = 1; cg < col_masks; ++cg) {
      const std::uint32_t cmask = cg ^ (cg >> 1);
      const std::uint32_t cflip = cmask ^ cprev;
      const std::size_t col = static_cast<std::size_t>(std::countr_zero(cflip));
      total += ((cmask & cflip) ? 1.0 : -1.0) * colsum[col];
      cprev = cmask;
      const double value =
          std::abs(total) / std::sqrt(s_size * std::popcount(cmask));
      if (value > best.value) {
        best.value = value;
        best.row_set = mask_to_set(mask);
        best.col_set = mask_to_set(cmask);
      }
    }
  }
  return best;
}

namespace {

struct PrefixChain {
  // Indices with sign*x > 0, by decreasing magnitude.
  std::vector<std::size_t> order;
};

PrefixChain chain_for(std::span<const double> x, double sign) {
  PrefixChain c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sign * x[i] > 0.0) c.order.push_back(i);
  }
  std::sort(c.order.begin(), c.order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  return c;
}

}  // namespace

SeparationResult spectral_separation(const Matrix& a, bool normalized,
                                     double tol, std::size_t max_iters) {
  SeparationResult best;
  best.normalized = normalized;
  if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) return best;

  const SingularPair top = top_singular_pair(a, tol, max_iters);
  best.converged = top.converged;

  double best_objective = -1.0;
  std::vector<double> colsum(a.cols(), 0.0);
  for (double s_sign : {+1.0, -1.0}) {
    const PrefixChain rows = chain_for(top.left, s_sign);
    if (rows.order.empty()) continue;
    std::fill(colsum.begin(), colsum.end(), 0.0);
    std::vector<std::size_t> s;
    for (std::size_t si = 0; si < rows.order.size(); ++si) {
      const std::size_t row = rows.order[si];
      s.push_back(row);
      const auto r = a.row(row);
      for (std::size_t j = 0; j < a.cols(); ++j) colsum[j] += r[j];
      for (double t_sign : {+1.0, -1.0}) {
        const PrefixChain cols = chain_for(top.right, t_sign);
        double total = 0.0;
        std::vector<std::size_t> t;
        for (std::size_t ti = 0; ti < cols.order.size(); ++ti) {
          t.push_back(cols.order[ti]);
          total += colsum[cols.order[ti]];
          const double denom =
              normalized ? std::sqrt(static_cast<double>(s.size()) *
                                     static_cast<double>(t.size()))
                         : 1.0;
          const double objective = std::abs(total) / denom;
          if (objective > best_objective) {
            best_objective = objective;
            best.row_set = s;
            best.col_set = t;
          }
        }
      }
    }
  }
  if (best_objective >= 0.0) {
    const double raw = cut_sum(a, best.row_set, best.col_set);
    const double denom =
        normalized ? std::sqrt(static_cast<double>(best.row_set.size()) *
                               static_cast<double>(best.col_set.size()))
                   : 1.0;
    best.violation = raw / denom;
  }
  return best;
}

SeparationOracle spectral_oracle(bool normalized, double tol,
                                 std::size_t max_iters) {
  return [=](const Matrix& a) {
    return spectral_separation(a, normalized, tol, max_iters);
  };
}

SeparationOracle bruteforce_oracle(bool normalized) {
  return [=](const Matrix& a) {
    const CutNormResult r =
        normalized ? normalized_cut_norm_bruteforce(a) : cut_norm_bruteforce(a);
    SeparationResult out;
    out.row_set = r.row_set;
    out.col_set = r.col_set;
    out.normalized = normalized;
    out.converged = true;
    const double raw = cut_sum(a, r.row_set, r.col_set);
    const double denom =
        normalized && !r.row_set.empty()
            ? std::sqrt(static_cast<double>(r.row_set.size()) *
                        static_cast<double>(r.col_set.size()))
            : 1.0;
    out.violation = raw / denom;
    return out;
  };
}

Matrix graph_matrix(std::span<const double> pair_weights,
                    std::size_t vertex_count) {
  return symmetric_from_pairs(pair_weights, vertex_count);
}

WeightedSyntheticGraph project_to_synthetic(const NoisyGraph& z,
                                            const SeparationOracle& oracle,
                                            std::uint64_t budget) {
  if (budget == 0) fail(ErrorKind::kConfig, "projection budget must be >= 1");
  const std::size_t v = z.vertex_count;
  const Universe universe = Universe::graph(v);
  if (z.weights.size() != universe.size()) {
    fail(ErrorKind::kDimension, "noisy graph has wrong pair-vector length");
  }

  WeightedSyntheticGraph x;
  x.vertex_count = v;
  x.weights.resize(z.weights.size());
  for (std::size_t e = 0; e < z.weights.size(); ++e) {
    x.weights[e] = std::clamp(z.weights[e], 0.0, 1.0);
  }

  WeightedSyntheticGraph best = x;
  double best_violation = std::numeric_limits<double>::infinity();
  std::vector<double> diff(z.weights.size());
  std::vector<bool> in_s(v), in_t(v);

  for (std::uint64_t iter = 0; iter < budget; ++iter) {
    for (std::size_t e = 0; e < diff.size(); ++e) {
      diff[e] = x.weights[e] - z.weights[e];
    }
    const SeparationResult sep = oracle(symmetric_from_pairs(diff, v));
    const double violation = std::abs(sep.violation);
    if (violation < best_violation) {
      best_violation = violation;
      best = x;
    }
    if (violation <= 1e-12 || sep.row_set.empty() || sep.col_set.empty()) break;

    std::fill(in_s.begin(), in_s.end(), false);
    std::fill(in_t.begin(), in_t.end(), false);
    for (std::size_t i : sep.row_set) in_s[i] = true;
    for (std::size_t j : sep.col_set) in_t[j] = true;
    const double denom =
        sep.normalized ? std::sqrt(static_cast<double>(sep.row_set.size()) *
                                   static_cast<double>(sep.col_set.size()))
                       : 1.0;

    // Projection step onto the violated constraint: the constraint is linear
    // in the pair vector with gradient g, so eta = violation / |g|^2 zeroes
    // it before reclipping.
    double g_norm2 = 0.0;
    std::size_t e = 0;
    std::vector<double> g(diff.size(), 0.0);
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = i + 1; j < v; ++j, ++e) {
        const int crossings = int(in_s[i] && in_t[j]) + int(in_s[j] && in_t[i]);
        if (crossings == 0) continue;
        g[e] = static_cast<double>(crossings) / denom;
        g_norm2 += g[e] * g[e];
      }
    }
    if (g_norm2 == 0.0) break;
    const double eta = sep.violation / g_norm2;
    for (std::size_t idx = 0; idx < x.weights.size(); ++idx) {
      if (g[idx] != 0.0) {
        x.weights[idx] = std::clamp(x.weights[idx] - eta * g[idx], 0.0, 1.0);
      }
    }
  }
  return best;
}

DataHistogram round_to_unweighted(const WeightedSyntheticGraph& x,
                                  NoiseSource& src) {
  const Universe universe = Universe::graph(x.vertex_count);
  if (x.weights.size() != universe.size()) {
    fail(ErrorKind::kDimension, "synthetic graph has wrong pair-vector length");
  }
  std::vector<double> w(x.weights.size(), 0.0);
  for (std::size_t e = 0; e < w.size(); ++e) {
    const double p = x.weights[e];
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorKind::kValidation, "synthetic weights must lie in [0, 1]");
    }
    w[e] = src.uniform01() < p ? 1.0 : 0.0;
  }
  return DataHistogram(universe, std::move(w));
}

}  // namespace idc
