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

#ifndef IDC_CORE_HPP_
#define IDC_CORE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace idc {

// The data domain X. For graph data the universe elements are the unordered
// vertex pairs {i,j}, i<j, in lexicographic order, so |X| = |V|(|V|-1)/2.
class Universe {
 public:
  static Universe plain(std::size_t size);
  static Universe graph(std::size_t vertex_count);

  std::size_t size() const { return size_; }
  bool has_graph_structure() const { return vertex_count_ > 0; }
  std::size_t vertex_count() const;  // requires graph structure

  // Bijection between universe indices and unordered pairs.
  std::size_t edge_index(std::size_t i, std::size_t j) const;
  std::pair<std::size_t, std::size_t> edge_endpoints(std::size_t index) const;

  bool operator==(const Universe&) const = default;

 private:
  Universe(std::size_t size, std::size_t vertex_count)
      : size_(size), vertex_count_(vertex_count) {}
  std::size_t size_ = 0;
  std::size_t vertex_count_ = 0;  // 0 means no graph structure
};

// Histogram representation of a database: non-negative per-item counts.
class DataHistogram {
 public:
  DataHistogram(Universe universe, std::vector<double> weights);
  // All-zero histogram.
  explicit DataHistogram(Universe universe);
  // 0/1 graph histogram from an edge list.
  static DataHistogram from_edges(
      std::size_t vertex_count,
      const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  const Universe& universe() const { return universe_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_[i]; }

  double n() const;   // L1 norm
  double n2() const;  // squared L2 norm

 private:
  Universe universe_;
  std::vector<double> weights_;
};

struct CutQuery {
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
  bool operator==(const CutQuery&) const = default;
};

struct Rank1Query {
  std::vector<double> u;  // entries in [0,1]
  std::vector<double> v;
  bool operator==(const Rank1Query&) const = default;
};

// A linear query: coefficients in [0,1]^|X| plus a public rescale factor.
// The canonical (pre-rescale) form has sensitivity at most 1 on adjacent
// histograms; mechanisms add noise at the canonical scale and apply rescale
// only at the answer boundary.
class LinearQuery {
 public:
  using Tag = std::variant<std::monostate, CutQuery, Rank1Query>;

  LinearQuery() = default;  // empty query; records default-construct to this
  static LinearQuery generic(std::vector<double> coefficients,
                             double rescale = 1.0);

  std::span<const double> coefficients() const { return coefficients_; }
  double rescale() const { return rescale_; }
  const Tag& tag() const { return tag_; }
  bool is_cut() const { return std::holds_alternative<CutQuery>(tag_); }
  bool is_rank1() const { return std::holds_alternative<Rank1Query>(tag_); }
  std::size_t dimension() const { return coefficients_.size(); }

  // Canonical evaluation: <coefficients, h>. Works on histograms and on
  // fractional or negative hypothesis vectors alike.
  double canonical(std::span<const double> h) const;
  // Public evaluation: rescale * canonical(h).
  double evaluate(std::span<const double> h) const;

  bool operator==(const LinearQuery&) const = default;

 private:
  LinearQuery(std::vector<double> coefficients, double rescale, Tag tag);
  friend LinearQuery compile_cut_query(const std::vector<std::size_t>&,
                                       const std::vector<std::size_t>&,
                                       const Universe&);
  friend LinearQuery compile_rank1_query(const std::vector<double>&,
                                         const std::vector<double>&,
                                         const Universe&);
  std::vector<double> coefficients_;
  double rescale_ = 1.0;
  Tag tag_;
};

// Cut query Q_{S,T} over the symmetric adjacency matrix. Stored coefficient
// on edge {i,j} is (1_{i in S, j in T} + 1_{j in S, i in T}) / 2 with
// rescale = 2, so the public answer equals A_G(S,T) over ordered pairs while
// canonical sensitivity stays 1.
LinearQuery compile_cut_query(const std::vector<std::size_t>& s,
                              const std::vector<std::size_t>& t,
                              const Universe& universe);

// Rank-1 query u v^T, u, v in [0,1]^|V|; coefficient on edge {i,j} is
// (u_i v_j + u_j v_i) / 2 with rescale = 2.
LinearQuery compile_rank1_query(const std::vector<double>& u,
                                const std::vector<double>& v,
                                const Universe& universe);

double evaluate(const LinearQuery& query, std::span<const double> h);

}  // namespace idc

#endif  // IDC_CORE_HPP_
