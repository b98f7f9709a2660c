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

#ifndef IDC_OFFLINE_HPP_
#define IDC_OFFLINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idc/core.hpp"
#include "idc/idc.hpp"
#include "idc/noise.hpp"

namespace idc {

// A hypothesis bundled with the update rule that knows how to evaluate it.
struct EvaluableHypothesis {
  const IdcAlgorithm* idc = nullptr;
  const Hypothesis* hypothesis = nullptr;

  double eval(const LinearQuery& query) const { return idc->eval(*hypothesis, query); }
  std::optional<std::vector<double>> dense() const {
    return hypothesis_dense_vector(*hypothesis);
  }
};

// Returns a query from its class whose discrepancy between the database and
// the hypothesis is within F(eps) of the maximum, with probability 1-gamma.
class Distinguisher {
 public:
  virtual ~Distinguisher() = default;
  virtual std::string_view name() const = 0;
  virtual LinearQuery distinguish(double eps0, const DataHistogram& db,
                                  const EvaluableHypothesis& hypothesis,
                                  NoiseSource& src) const = 0;
  virtual bool is_private() const = 0;
  virtual double gamma() const = 0;
  virtual std::string f_epsilon_description() const = 0;
  virtual bool in_class(const LinearQuery& query) const = 0;
};

// Exponential-mechanism distinguisher over a finite query class: samples a
// query with probability proportional to exp(eps0 * score / 2), where the
// score is the canonical-scale discrepancy |Q(D) - Q(H)| (sensitivity 1).
// The zero-noise hook returns the exact argmax with first-index tie break.
class ExpMechDistinguisher final : public Distinguisher {
 public:
  explicit ExpMechDistinguisher(std::vector<LinearQuery> query_class);

  std::string_view name() const override { return "exp-mech"; }
  LinearQuery distinguish(double eps0, const DataHistogram& db,
                          const EvaluableHypothesis& hypothesis,
                          NoiseSource& src) const override;
  bool is_private() const override { return true; }
  double gamma() const override { return 0.0; }
  std::string f_epsilon_description() const override;
  bool in_class(const LinearQuery& query) const override;

  const std::vector<LinearQuery>& query_class() const { return class_; }

 private:
  std::vector<LinearQuery> class_;
};

// NON-PRIVATE-EXPERIMENTAL.
//
// Rank-1 distinguisher via the top singular pair of the difference matrix
// A = D - H: the singular vectors are sign-split into the four candidate
// (u, v) pairs in [0,1]^|V| (positive/negative parts, rescaled to unit max
// entry), each refined by alternating vertex ascent; a fixed set of seeded
// binary starts joins the ascent so the winning score dominates every cut
// query. The candidate with the largest |sum_{i,j} u_i v_j A_ij| wins.
// A private distinguisher with comparable accuracy is an open problem; this
// one exists to measure achievable accuracy only, and release paths refuse
// to emit a privacy claim while it is in use.
class SvdRank1Distinguisher final : public Distinguisher {
 public:
  explicit SvdRank1Distinguisher(double tol = 1e-8, std::size_t max_iters = 1000,
                                 std::size_t ascent_restarts = 64);

  std::string_view name() const override { return "svd-rank1"; }
  LinearQuery distinguish(double eps0, const DataHistogram& db,
                          const EvaluableHypothesis& hypothesis,
                          NoiseSource& src) const override;
  bool is_private() const override { return false; }
  double gamma() const override { return 0.0; }
  std::string f_epsilon_description() const override;
  bool in_class(const LinearQuery& query) const override;

  // The underlying matrix routine: best rank-1 query pair for a symmetric
  // zero-diagonal difference given by pair weights.
  struct Rank1Pick {
    std::vector<double> u, v;
    double score = 0.0;  // sum_{i,j} u_i v_j A_ij, ordered-sum convention
  };
  Rank1Pick pick(std::span<const double> diff_pairs, std::size_t vertex_count) const;

 private:
  double tol_;
  std::size_t max_iters_;
  std::size_t restarts_;
};

struct IcConfig {
  PrivacyParams privacy;
  double alpha = 0.0;
  // When set, the distinguisher's failure probability gamma must satisfy
  // gamma <= beta / (2 B(alpha)) (the accuracy guarantee's precondition).
  std::optional<double> certify_beta;

  void validate() const;
};

struct IcRoundRecord {
  LinearQuery query;
  double noisy_answer = 0.0;
  double hypothesis_answer = 0.0;
  bool updated = false;
};

struct IcResult {
  Hypothesis synthetic;
  bool early_exit = false;
  std::uint64_t rounds = 0;  // distinguisher rounds executed
  std::uint64_t budget = 0;  // B(alpha)
  double eps0 = 0.0;
  // Absent when a NON-PRIVATE distinguisher was used.
  std::optional<PrivacyParams> privacy;
  std::vector<IcRoundRecord> transcript;
  std::vector<UpdateRound> update_rounds;  // a DUS at scale alpha/2
};

// The iterative-construction release: up to B(alpha) rounds of
// (distinguish at eps0, Laplace-check at eps0), early exit once the reported
// discrepancy falls below 3*alpha/4, updates at scale alpha/2, where
// eps0 = epsilon / (4 sqrt(B(alpha) ln(1/delta))). The privacy report is the
// composition over the 2B data accesses.
IcResult ic_release(const DataHistogram& db, const IdcAlgorithm& idc_proto,
                    const Distinguisher& distinguisher, const IcConfig& config,
                    NoiseSource noise);

}  // namespace idc

#endif  // IDC_OFFLINE_HPP_
