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

#include "idc/core.hpp"

#include <algorithm>

#include "idc/errors.hpp"

namespace idc {

Universe Universe::plain(std::size_t size) {
  if (size == 0) fail(ErrorKind::kValidation, "universe must be nonempty");
  return Universe(size, 0);
}

Universe Universe::graph(std::size_t vertex_count) {
  if (vertex_count < 2) {
    fail(ErrorKind::kValidation, "graph universe needs at least 2 vertices");
  }
  return Universe(vertex_count * (vertex_count - 1) / 2, vertex_count);
}

std::size_t Universe::vertex_count() const {
  if (!has_graph_structure()) {
    fail(ErrorKind::kDomainMismatch, "universe has no graph structure");
  }
  return vertex_count_;
}

std::size_t Universe::edge_index(std::size_t i, std::size_t j) const {
  const std::size_t v = vertex_count();
  if (i == j || i >= v || j >= v) {
    fail(ErrorKind::kValidation, "edge endpoints out of range");
  }
  if (i > j) std::swap(i, j);
  return i * (2 * v - i - 1) / 2 + (j - i - 1);
}

std::pair<std::size_t, std::size_t> Universe::edge_endpoints(
    std::size_t index) const {
  const std::size_t v = vertex_count();
  if (index >= size_) fail(ErrorKind::kValidation, "edge index out of range");
  std::size_t i = 0;
  std::size_t row = v - 1;  // pairs in row i
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + index};
}

DataHistogram::DataHistogram(Universe universe, std::vector<double> weights)
    : universe_(universe), weights_(std::move(weights)) {
  if (weights_.size() != universe_.size()) {
    fail(ErrorKind::kDimension, "histogram length does not match universe");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) fail(ErrorKind::kValidation, "histogram weights must be >= 0");
  }
}

DataHistogram::DataHistogram(Universe universe)
    : universe_(universe), weights_(universe.size(), 0.0) {}

DataHistogram DataHistogram::from_edges(
    std::size_t vertex_count,
    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Universe u = Universe::graph(vertex_count);
  std::vector<double> w(u.size(), 0.0);
  for (const auto& [a, b] : edges) {
    w[u.edge_index(a, b)] = 1.0;
  }
  return DataHistogram(u, std::move(w));
}

double DataHistogram::n() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double DataHistogram::n2() const {
  double s = 0.0;
  for (double w : weights_) s += w * w;
  return s;
}

LinearQuery::LinearQuery(std::vector<double> coefficients, double rescale,
                         Tag tag)
    : coefficients_(std::move(coefficients)), rescale_(rescale), tag_(std::move(tag)) {
  if (!(rescale_ > 0.0)) fail(ErrorKind::kValidation, "rescale must be positive");
  for (double c : coefficients_) {
    if (!(c >= 0.0 && c <= 1.0)) {
      fail(ErrorKind::kValidation, "query coefficients must lie in [0, 1]");
    }
  }
}

LinearQuery LinearQuery::generic(std::vector<double> coefficients,
                                 double rescale) {
  return LinearQuery(std::move(coefficients), rescale, Tag{});
}

double LinearQuery::canonical(std::span<const double> h) const {
  if (h.size() != coefficients_.size()) {
    fail(ErrorKind::kDimension, "query/vector dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) s += coefficients_[i] * h[i];
  return s;
}

double LinearQuery::evaluate(std::span<const double> h) const {
  return rescale_ * canonical(h);
}

namespace {

std::vector<bool> membership(const std::vector<std::size_t>& set,
                             std::size_t vertex_count) {
  std::vector<bool> in(vertex_count, false);
  for (std::size_t v : set) {
    if (v >= vertex_count) fail(ErrorKind::kValidation, "vertex out of range");
    in[v] = true;
  }
  return in;
}

}  // namespace

LinearQuery compile_cut_query(const std::vector<std::size_t>& s,
                              const std::vector<std::size_t>& t,
                              const Universe& universe) {
  if (!universe.has_graph_structure()) {
    fail(ErrorKind::kDomainMismatch, "cut queries need a graph universe");
  }
  const std::size_t v = universe.vertex_count();
  const std::vector<bool> in_s = membership(s, v);
  const std::vector<bool> in_t = membership(t, v);
  std::vector<double> coeff(universe.size(), 0.0);
  std::size_t e = 0;
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t j = i + 1; j < v; ++j, ++e) {
      const int crossings = int(in_s[i] && in_t[j]) + int(in_s[j] && in_t[i]);
      coeff[e] = 0.5 * crossings;
    }
  }
  return LinearQuery(std::move(coeff), 2.0, LinearQuery::Tag(CutQuery{s, t}));
}

LinearQuery compile_rank1_query(const std::vector<double>& u,
                                const std::vector<double>& v,
                                const Universe& universe) {
  if (!universe.has_graph_structure()) {
    fail(ErrorKind::kDomainMismatch, "rank-1 queries need a graph universe");
  }
  const std::size_t n = universe.vertex_count();
  if (u.size() != n || v.size() != n) {
    fail(ErrorKind::kDimension, "rank-1 vectors must have |V| entries");
  }
  for (double x : u) {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::kValidation, "u entries must lie in [0, 1]");
  }
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::kValidation, "v entries must lie in [0, 1]");
  }
  std::vector<double> coeff(universe.size(), 0.0);
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++e) {
      coeff[e] = 0.5 * (u[i] * v[j] + u[j] * v[i]);
    }
  }
  return LinearQuery(std::move(coeff), 2.0, LinearQuery::Tag(Rank1Query{u, v}));
}

double evaluate(const LinearQuery& query, std::span<const double> h) {
  return query.evaluate(h);
}

}  // namespace idc
