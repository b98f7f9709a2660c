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

#include "idc/online.hpp"

#include <cmath>
#include <limits>

#include "idc/errors.hpp"

namespace idc {

void OnlineConfig::validate() const {
  privacy.validate();
  if (!(privacy.delta > 0.0)) {
    fail(ErrorKind::kConfig, "online mechanism needs delta > 0");
  }
  if (!(alpha > 0.0)) fail(ErrorKind::kConfig, "alpha must be positive");
  if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::kConfig, "beta must lie in (0, 1)");
  if (k == 0) fail(ErrorKind::kConfig, "declared query count k must be >= 1");
  if (!(sigma_constant > 0.0)) fail(ErrorKind::kConfig, "sigma_constant must be positive");
  if (!(t_constant > 0.0)) fail(ErrorKind::kConfig, "t_constant must be positive");
}

OnlineMechanism::OnlineMechanism(DataHistogram db, const IdcAlgorithm& idc_proto,
                                 OnlineConfig config, NoiseSource noise)
    : db_(std::move(db)),
      idc_(idc_proto.with_update_scale(config.alpha)),
      config_(config),
      noise_(noise),
      hypothesis_(idc_->init(db_.universe())) {
  config_.validate();
  budget_ = idc_->bound_updates(config_.alpha);
  sigma_ = config_.sigma_constant * std::sqrt(static_cast<double>(budget_)) *
           std::log(4.0 / config_.privacy.delta) / config_.privacy.epsilon;
  threshold_ = config_.t_constant * sigma_ *
               std::log(2.0 * static_cast<double>(config_.k) / config_.beta);
  const double lo = 4.0 * config_.alpha / 3.0;
  const double hi = 2.0 * config_.alpha;
  if (threshold_ < lo || threshold_ > hi) {
    const std::string msg =
        "threshold T = " + std::to_string(threshold_) +
        " is outside the accuracy window [4a/3, 2a] = [" + std::to_string(lo) +
        ", " + std::to_string(hi) + "]; the utility guarantee does not apply";
    if (config_.enforce_accuracy_window) fail(ErrorKind::kConfig, msg);
    warning_ = msg;
  }
}

AnswerRecord OnlineMechanism::answer(const LinearQuery& query) {
  if (submitted_ == config_.k) {
    fail(ErrorKind::kConfig,
         "more queries than the declared count k; T was calibrated for k");
  }
  ++submitted_;
  if (exhausted()) {
    AnswerRecord record;
    record.query = query;
    record.kind = AnswerRecord::Kind::kExhausted;
    record.answer = std::numeric_limits<double>::quiet_NaN();
    record.canonical_answer = record.answer;
    transcript_.push_back(record);
    fail(ErrorKind::kBudgetExhausted,
         "update budget B(alpha) spent; no further queries can be answered");
  }

  AnswerRecord record;
  record.query = query;
  record.true_answer = query.canonical(db_.weights());
  record.noise_draw = laplace_sample(sigma_, noise_);
  record.noisy_answer = record.true_answer + record.noise_draw;
  record.fake_answer = idc_->eval(hypothesis_, query);

  if (std::abs(record.noisy_answer - record.fake_answer) <= threshold_) {
    record.kind = AnswerRecord::Kind::kLazy;
    record.canonical_answer = record.fake_answer;
  } else {
    record.kind = AnswerRecord::Kind::kUpdate;
    record.canonical_answer = record.noisy_answer;
    Hypothesis before = hypothesis_;
    hypothesis_ = idc_->update(hypothesis_, query, record.noisy_answer);
    update_rounds_.push_back(
        UpdateRound{std::move(before), query, record.noisy_answer, hypothesis_});
    ++update_count_;
  }
  record.answer = record.canonical_answer * query.rescale();
  transcript_.push_back(record);
  return record;
}

double solve_alpha(const IdcAlgorithm& idc_proto, const PrivacyParams& privacy,
                   std::uint64_t k, double beta, double constant) {
  privacy.validate();
  if (!(privacy.delta > 0.0)) fail(ErrorKind::kConfig, "solve_alpha needs delta > 0");
  if (k == 0) fail(ErrorKind::kConfig, "k must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::kConfig, "beta must lie in (0, 1)");
  if (!(constant > 0.0)) fail(ErrorKind::kConfig, "constant must be positive");
  const double logs = std::log(4.0 / privacy.delta) *
                      std::log(static_cast<double>(k) / beta);
  if (!(logs > 0.0)) fail(ErrorKind::kConfig, "need k/beta > 1");

  const auto rhs = [&](double alpha) {
    return constant * std::sqrt(idc_proto.bound_updates_real(alpha)) * logs /
           privacy.epsilon;
  };
  // rhs is nonincreasing in alpha, so f(alpha) = rhs(alpha) - alpha crosses
  // zero at most once.
  double lo = 1e-9;
  if (rhs(lo) <= lo) {
    fail(ErrorKind::kConfig, "no fixed point: update bound vanishes");
  }
  double hi = 1.0;
  int guard = 0;
  while (rhs(hi) > hi) {
    hi *= 2.0;
    if (++guard > 300) fail(ErrorKind::kConfig, "no fixed point in bracket");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rhs(mid) > mid) {
      lo = mid;
    } else {
      hi = mid;
    }
    if ((hi - lo) <= 1e-9 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace idc
