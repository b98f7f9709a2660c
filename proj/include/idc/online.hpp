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

#ifndef IDC_ONLINE_HPP_
#define IDC_ONLINE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idc/core.hpp"
#include "idc/idc.hpp"
#include "idc/noise.hpp"

namespace idc {

// Interactive release configuration. Derived quantities, frozen at mechanism
// construction with B = B(alpha) of the chosen update rule:
//   sigma = sigma_constant * sqrt(B) * ln(4/delta) / epsilon
//   T     = t_constant * sigma * ln(2k/beta)
// The default constants give the certified guarantees; they are
// astronomically conservative at desk scale, so "practical" presets
// (sigma_constant = 1) are supported. The privacy report always reflects the
// constants actually used.
struct OnlineConfig {
  PrivacyParams privacy;
  double alpha = 0.0;
  double beta = 0.0;            // in (0,1)
  std::uint64_t k = 0;          // declared query count
  double sigma_constant = 1000.0;
  double t_constant = 4.0;
  // When set, constructing a mechanism whose threshold T falls outside
  // [4*alpha/3, 2*alpha] (the window the accuracy guarantee needs) is a
  // configuration error instead of a warning.
  bool enforce_accuracy_window = false;

  void validate() const;
};

struct AnswerRecord {
  enum class Kind { kLazy, kUpdate, kExhausted };

  LinearQuery query;
  double answer = 0.0;  // public scale (query rescale applied)
  Kind kind = Kind::kLazy;

  // Internal instrumentation, exported only under the test flag.
  double canonical_answer = 0.0;
  double true_answer = 0.0;  // canonical scale
  double noise_draw = 0.0;
  double noisy_answer = 0.0;
  double fake_answer = 0.0;
};

// One interactive session: queries are answered strictly sequentially. Each
// query gets a Laplace-noised true answer; if it agrees with the hypothesis
// answer to within T the hypothesis answers (lazy round), otherwise the noisy
// answer is released and drives one update. After B(alpha) updates the budget
// is exhausted and every further query fails with a budget-exhausted error.
class OnlineMechanism {
 public:
  OnlineMechanism(DataHistogram db, const IdcAlgorithm& idc_proto,
                  OnlineConfig config, NoiseSource noise);

  // Throws ErrorKind::kBudgetExhausted once the update budget is spent (an
  // exhausted record is still appended to the transcript), and
  // ErrorKind::kConfig when more than the declared k queries arrive.
  AnswerRecord answer(const LinearQuery& query);

  bool exhausted() const { return update_count_ == budget_; }
  double sigma() const { return sigma_; }
  double threshold() const { return threshold_; }
  std::uint64_t update_count() const { return update_count_; }
  std::uint64_t update_budget() const { return budget_; }
  const std::vector<AnswerRecord>& transcript() const { return transcript_; }
  const std::vector<UpdateRound>& update_rounds() const { return update_rounds_; }
  const Hypothesis& hypothesis() const { return hypothesis_; }
  const IdcAlgorithm& idc() const { return *idc_; }
  const OnlineConfig& config() const { return config_; }
  const DataHistogram& database() const { return db_; }

  // The mechanism reports its configured (epsilon, delta); it does not
  // re-derive them.
  PrivacyParams privacy_report() const { return config_.privacy; }

  // Set when T(alpha) lies outside the accuracy guarantee's window.
  std::optional<std::string> config_warning() const { return warning_; }

 private:
  DataHistogram db_;
  std::unique_ptr<IdcAlgorithm> idc_;
  OnlineConfig config_;
  NoiseSource noise_;
  Hypothesis hypothesis_;
  std::uint64_t budget_ = 0;
  double sigma_ = 0.0;
  double threshold_ = 0.0;
  std::uint64_t update_count_ = 0;
  std::uint64_t submitted_ = 0;
  std::vector<AnswerRecord> transcript_;
  std::vector<UpdateRound> update_rounds_;
  std::optional<std::string> warning_;
};

// Smallest alpha with alpha = constant * sqrt(B(alpha)) * ln(4/delta) *
// ln(k/beta) / epsilon, found by bisection on the real-valued (un-ceilinged)
// bound to relative tolerance 1e-6. The bound must be nonincreasing in alpha.
double solve_alpha(const IdcAlgorithm& idc_proto, const PrivacyParams& privacy,
                   std::uint64_t k, double beta, double constant = 3000.0);

}  // namespace idc

#endif  // IDC_ONLINE_HPP_
