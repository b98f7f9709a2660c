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

#ifndef IDC_IDC_HPP_
#define IDC_IDC_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idc/core.hpp"

namespace idc {

// Hypothesis of the Frieze/Kannan construction: an unconstrained real vector
// over the universe (entries may be negative or exceed the true counts).
struct FkHypothesis {
  std::vector<double> weights;
  bool operator==(const FkHypothesis&) const = default;
};

// Hypothesis of the multiplicative-weights construction: a strictly positive
// probability distribution over the universe. The database L1 norm is treated
// as public; answers are normalized internally and rescaled at the boundary.
struct MwHypothesis {
  std::vector<double> distribution;
  double public_n = 0.0;
  bool operator==(const MwHypothesis&) const = default;
};

// One candidate histogram of the median construction: integer counts summing
// to m, plus its multiset weight (the number of length-m element sequences
// producing this histogram). Counting with weights keeps the initial
// candidate population at |X|^m, which is what the halving bound divides.
struct MmCandidate {
  std::vector<std::uint32_t> counts;
  std::uint64_t weight = 1;
  bool operator==(const MmCandidate&) const = default;
};

struct MmHypothesis {
  std::vector<MmCandidate> candidates;  // distinct, lexicographic order
  std::uint64_t m = 0;                  // per-candidate L1 norm
  double public_n = 0.0;
  bool operator==(const MmHypothesis&) const = default;

  std::uint64_t total_weight() const;
};

using Hypothesis = std::variant<FkHypothesis, MwHypothesis, MmHypothesis>;

bool hypotheses_equal(const Hypothesis& a, const Hypothesis& b);

// Dense vector view of a hypothesis at the canonical (unnormalized) scale,
// when one exists. FK: the weight vector; MW: distribution * public_n;
// median structures have no single vector and yield nullopt.
std::optional<std::vector<double>> hypothesis_dense_vector(const Hypothesis& h);

// One audited update-rule invocation: hypothesis before, the distinguishing
// query, the approximate answer fed to the rule, hypothesis after.
struct UpdateRound {
  Hypothesis before;
  LinearQuery query;
  double noisy_answer = 0.0;
  Hypothesis after;
};

// An update rule U together with its certified update budget B(alpha): any
// update sequence whose rounds are genuine alpha-distinguishers answered to
// within alpha has length at most B(alpha). Updates are pure; hypotheses are
// immutable values.
class IdcAlgorithm {
 public:
  virtual ~IdcAlgorithm() = default;

  virtual std::string_view name() const = 0;
  virtual double update_scale() const = 0;
  virtual std::unique_ptr<IdcAlgorithm> with_update_scale(double alpha) const = 0;

  virtual Hypothesis init(const Universe& universe) const = 0;
  virtual Hypothesis update(const Hypothesis& h, const LinearQuery& query,
                            double noisy_answer) const = 0;
  // Canonical-scale answer of the hypothesis (comparable to Q(D) pre-rescale).
  virtual double eval(const Hypothesis& h, const LinearQuery& query) const = 0;

  // Real-valued bound, no ceiling; used by fixed-point solvers.
  virtual double bound_updates_real(double alpha) const = 0;
  // Certified integer budget: ceil of the real bound.
  virtual std::uint64_t bound_updates(double alpha) const;
};

// Frieze/Kannan update: move the hypothesis by (alpha/|X|) * Q toward the
// reported answer. B(alpha) = n2 * |X| / alpha^2 with n2 = ||D||_2^2.
class FkIdc final : public IdcAlgorithm {
 public:
  FkIdc(double update_alpha, double n2, std::size_t universe_size);

  std::string_view name() const override { return "fk"; }
  double update_scale() const override { return alpha_; }
  std::unique_ptr<IdcAlgorithm> with_update_scale(double alpha) const override;
  Hypothesis init(const Universe& universe) const override;
  Hypothesis update(const Hypothesis& h, const LinearQuery& query,
                    double noisy_answer) const override;
  double eval(const Hypothesis& h, const LinearQuery& query) const override;
  double bound_updates_real(double alpha) const override;

 private:
  double alpha_;
  double n2_;
  std::size_t universe_size_;
};

// Multiplicative-weights update over the normalized histogram, learning rate
// eta = alpha / (2n). B(alpha) = 4 n^2 ln|X| / alpha^2.
class MwIdc final : public IdcAlgorithm {
 public:
  MwIdc(double update_alpha, double public_n, std::size_t universe_size);

  std::string_view name() const override { return "mw"; }
  double update_scale() const override { return alpha_; }
  std::unique_ptr<IdcAlgorithm> with_update_scale(double alpha) const override;
  Hypothesis init(const Universe& universe) const override;
  Hypothesis update(const Hypothesis& h, const LinearQuery& query,
                    double noisy_answer) const override;
  double eval(const Hypothesis& h, const LinearQuery& query) const override;
  double bound_updates_real(double alpha) const override;

 private:
  double alpha_;
  double public_n_;
  std::size_t universe_size_;
};

// Median construction over all histograms with L1 norm m = ceil(n^2 ln k /
// alpha^2), counted with multiset weights (initial population |X|^m). Each
// update discards the candidates on the median's side of the reported answer,
// at least halving the population. B(alpha) = n^2 ln|X| ln k / alpha^2.
// Candidate answers are rescaled by n/m so the median is comparable to Q(D).
class MmIdc final : public IdcAlgorithm {
 public:
  MmIdc(double update_alpha, double public_n, std::uint64_t query_count,
        std::size_t universe_size, std::uint64_t candidate_cap = 1000000);

  std::string_view name() const override { return "mm"; }
  double update_scale() const override { return alpha_; }
  std::unique_ptr<IdcAlgorithm> with_update_scale(double alpha) const override;
  Hypothesis init(const Universe& universe) const override;
  Hypothesis update(const Hypothesis& h, const LinearQuery& query,
                    double noisy_answer) const override;
  double eval(const Hypothesis& h, const LinearQuery& query) const override;
  double bound_updates_real(double alpha) const override;
  std::uint64_t bound_updates(double alpha) const override;

  std::uint64_t net_size(double alpha) const;  // m
  std::uint64_t candidate_cap() const { return cap_; }

 private:
  void check_cap(double alpha) const;
  double alpha_;
  double public_n_;
  std::uint64_t query_count_;
  std::size_t universe_size_;
  std::uint64_t cap_;
};

struct DusReport {
  bool ok = true;
  std::size_t failed_round = 0;  // 1-based when !ok
  std::string violation;
};

// Audits a recorded trace against the database-update-sequence contract:
//   1. round 1 starts from the rule's initial hypothesis,
//   2. every round's query is a genuine alpha-distinguisher,
//   3. every reported answer is within alpha of the true answer (strict),
//   4. consecutive hypotheses chain.
// Returns the first violation, or ok.
DusReport verify_dus(std::span<const UpdateRound> trace,
                     const DataHistogram& true_db, double alpha,
                     const IdcAlgorithm& idc);

}  // namespace idc

#endif  // IDC_IDC_HPP_
