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

#include "idc/idc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "idc/errors.hpp"

namespace idc {
namespace {

constexpr std::uint64_t kMaxBudget = 1ULL << 62;

double checked_alpha(double alpha) {
  if (!(alpha > 0.0)) fail(ErrorKind::kConfig, "alpha must be positive");
  return alpha;
}

}  // namespace

std::uint64_t MmHypothesis::total_weight() const {
  std::uint64_t w = 0;
  for (const MmCandidate& c : candidates) w += c.weight;
  return w;
}

bool hypotheses_equal(const Hypothesis& a, const Hypothesis& b) {
  return a == b;
}

std::optional<std::vector<double>> hypothesis_dense_vector(const Hypothesis& h) {
  if (const auto* fk = std::get_if<FkHypothesis>(&h)) return fk->weights;
  if (const auto* mw = std::get_if<MwHypothesis>(&h)) {
    std::vector<double> v(mw->distribution.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = mw->public_n * mw->distribution[i];
    }
    return v;
  }
  return std::nullopt;
}

std::uint64_t IdcAlgorithm::bound_updates(double alpha) const {
  const double real = bound_updates_real(checked_alpha(alpha));
  if (!(real >= 0.0) || real > static_cast<double>(kMaxBudget)) {
    fail(ErrorKind::kConfig, "update bound overflow; alpha too small");
  }
  return static_cast<std::uint64_t>(std::ceil(real));
}

// ---------------------------------------------------------------------------
// Frieze/Kannan

FkIdc::FkIdc(double update_alpha, double n2, std::size_t universe_size)
    : alpha_(checked_alpha(update_alpha)), n2_(n2), universe_size_(universe_size) {
  if (!(n2 >= 0.0)) fail(ErrorKind::kConfig, "n2 must be >= 0");
  if (universe_size == 0) fail(ErrorKind::kConfig, "empty universe");
}

std::unique_ptr<IdcAlgorithm> FkIdc::with_update_scale(double alpha) const {
  return std::make_unique<FkIdc>(alpha, n2_, universe_size_);
}

Hypothesis FkIdc::init(const Universe& universe) const {
  if (universe.size() != universe_size_) {
    fail(ErrorKind::kDimension, "universe size mismatch");
  }
  return FkHypothesis{std::vector<double>(universe_size_, 0.0)};
}

double FkIdc::eval(const Hypothesis& h, const LinearQuery& query) const {
  const auto* fk = std::get_if<FkHypothesis>(&h);
  if (fk == nullptr) fail(ErrorKind::kContract, "expected FK hypothesis");
  return query.canonical(fk->weights);
}

Hypothesis FkIdc::update(const Hypothesis& h, const LinearQuery& query,
                         double noisy_answer) const {
  const auto* fk = std::get_if<FkHypothesis>(&h);
  if (fk == nullptr) fail(ErrorKind::kContract, "expected FK hypothesis");
  const double current = query.canonical(fk->weights);
  FkHypothesis next = *fk;
  if (current == noisy_answer) return next;  // tie: no-op
  const double step = alpha_ / static_cast<double>(universe_size_);
  const double sign = current > noisy_answer ? -1.0 : 1.0;
  const auto coeff = query.coefficients();
  for (std::size_t i = 0; i < next.weights.size(); ++i) {
    next.weights[i] += sign * step * coeff[i];
  }
  return next;
}

double FkIdc::bound_updates_real(double alpha) const {
  checked_alpha(alpha);
  return n2_ * static_cast<double>(universe_size_) / (alpha * alpha);
}

// ---------------------------------------------------------------------------
// Multiplicative weights

MwIdc::MwIdc(double update_alpha, double public_n, std::size_t universe_size)
    : alpha_(checked_alpha(update_alpha)),
      public_n_(public_n),
      universe_size_(universe_size) {
  if (!(public_n > 0.0)) fail(ErrorKind::kConfig, "public_n must be positive");
  if (universe_size == 0) fail(ErrorKind::kConfig, "empty universe");
}

std::unique_ptr<IdcAlgorithm> MwIdc::with_update_scale(double alpha) const {
  return std::make_unique<MwIdc>(alpha, public_n_, universe_size_);
}

Hypothesis MwIdc::init(const Universe& universe) const {
  if (universe.size() != universe_size_) {
    fail(ErrorKind::kDimension, "universe size mismatch");
  }
  const double u = 1.0 / static_cast<double>(universe_size_);
  return MwHypothesis{std::vector<double>(universe_size_, u), public_n_};
}

double MwIdc::eval(const Hypothesis& h, const LinearQuery& query) const {
  const auto* mw = std::get_if<MwHypothesis>(&h);
  if (mw == nullptr) fail(ErrorKind::kContract, "expected MW hypothesis");
  return mw->public_n * query.canonical(mw->distribution);
}

Hypothesis MwIdc::update(const Hypothesis& h, const LinearQuery& query,
                         double noisy_answer) const {
  const auto* mw = std::get_if<MwHypothesis>(&h);
  if (mw == nullptr) fail(ErrorKind::kContract, "expected MW hypothesis");
  MwHypothesis next = *mw;
  const double on_hypothesis = query.canonical(mw->distribution);
  const double normalized_answer = noisy_answer / mw->public_n;
  if (normalized_answer == on_hypothesis) return next;  // tie: no-op

  const double eta = alpha_ / (2.0 * mw->public_n);
  const auto coeff = query.coefficients();
  const bool penalize_query = normalized_answer < on_hypothesis;
  double total = 0.0;
  for (std::size_t i = 0; i < next.distribution.size(); ++i) {
    const double r = penalize_query ? coeff[i] : 1.0 - coeff[i];
    next.distribution[i] *= std::exp(-eta * r);
    total += next.distribution[i];
  }
  for (double& d : next.distribution) d /= total;
  return next;
}

double MwIdc::bound_updates_real(double alpha) const {
  checked_alpha(alpha);
  return 4.0 * public_n_ * public_n_ *
         std::log(static_cast<double>(universe_size_)) / (alpha * alpha);
}

// ---------------------------------------------------------------------------
// Median mechanism

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return static_cast<std::uint64_t>(r);
}

// Multiset weight of a histogram: multinomial(m; counts).
std::uint64_t multiset_weight(const std::vector<std::uint32_t>& counts) {
  std::uint64_t total = 0;
  unsigned __int128 w = 1;
  for (std::uint32_t c : counts) {
    total += c;
    w *= binomial(total, c);
  }
  return static_cast<std::uint64_t>(w);
}

void enumerate_compositions(std::uint64_t remaining, std::size_t index,
                            std::vector<std::uint32_t>& scratch,
                            std::vector<MmCandidate>& out) {
  if (index + 1 == scratch.size()) {
    scratch[index] = static_cast<std::uint32_t>(remaining);
    out.push_back(MmCandidate{scratch, multiset_weight(scratch)});
    return;
  }
  for (std::uint64_t c = 0; c <= remaining; ++c) {
    scratch[index] = static_cast<std::uint32_t>(c);
    enumerate_compositions(remaining - c, index + 1, scratch, out);
  }
}

struct MedianView {
  double median = 0.0;
  std::vector<double> values;  // per candidate, canonical scale
};

MedianView mm_values(const MmHypothesis& mm, const LinearQuery& query) {
  MedianView out;
  out.values.reserve(mm.candidates.size());
  const double scale =
      mm.m == 0 ? 0.0 : mm.public_n / static_cast<double>(mm.m);
  const auto coeff = query.coefficients();
  for (const MmCandidate& c : mm.candidates) {
    if (c.counts.size() != coeff.size()) {
      fail(ErrorKind::kDimension, "query/candidate dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      s += coeff[i] * static_cast<double>(c.counts[i]);
    }
    out.values.push_back(scale * s);
  }
  // Weighted lower median over the multiset expansion.
  std::vector<std::size_t> order(out.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return out.values[a] < out.values[b];
  });
  std::uint64_t total = mm.total_weight();
  if (total == 0) fail(ErrorKind::kContract, "empty candidate set");
  const std::uint64_t target = (total + 1) / 2;
  std::uint64_t cum = 0;
  for (std::size_t idx : order) {
    cum += mm.candidates[idx].weight;
    if (cum >= target) {
      out.median = out.values[idx];
      break;
    }
  }
  return out;
}

}  // namespace

MmIdc::MmIdc(double update_alpha, double public_n, std::uint64_t query_count,
             std::size_t universe_size, std::uint64_t candidate_cap)
    : alpha_(checked_alpha(update_alpha)),
      public_n_(public_n),
      query_count_(query_count),
      universe_size_(universe_size),
      cap_(candidate_cap) {
  if (!(public_n > 0.0)) fail(ErrorKind::kConfig, "public_n must be positive");
  if (query_count == 0) fail(ErrorKind::kConfig, "query_count must be >= 1");
  if (universe_size == 0) fail(ErrorKind::kConfig, "empty universe");
}

std::unique_ptr<IdcAlgorithm> MmIdc::with_update_scale(double alpha) const {
  return std::make_unique<MmIdc>(alpha, public_n_, query_count_, universe_size_, cap_);
}

std::uint64_t MmIdc::net_size(double alpha) const {
  checked_alpha(alpha);
  const double m_real = public_n_ * public_n_ *
                        std::log(static_cast<double>(query_count_)) /
                        (alpha * alpha);
  return static_cast<std::uint64_t>(std::ceil(std::max(0.0, m_real)));
}

void MmIdc::check_cap(double alpha) const {
  const double m = static_cast<double>(net_size(alpha));
  const double log_population = m * std::log(static_cast<double>(universe_size_));
  if (log_population > std::log(static_cast<double>(cap_)) + 1e-9) {
    fail(ErrorKind::kToyScaleCap,
         "median mechanism is toy-scale only: |X|^m exceeds the candidate cap (" +
             std::to_string(cap_) + "); lower n/k or raise alpha");
  }
}

Hypothesis MmIdc::init(const Universe& universe) const {
  if (universe.size() != universe_size_) {
    fail(ErrorKind::kDimension, "universe size mismatch");
  }
  check_cap(alpha_);
  const std::uint64_t m = net_size(alpha_);
  MmHypothesis mm;
  mm.m = m;
  mm.public_n = public_n_;
  std::vector<std::uint32_t> scratch(universe_size_, 0);
  enumerate_compositions(m, 0, scratch, mm.candidates);
  return mm;
}

double MmIdc::eval(const Hypothesis& h, const LinearQuery& query) const {
  const auto* mm = std::get_if<MmHypothesis>(&h);
  if (mm == nullptr) fail(ErrorKind::kContract, "expected MM hypothesis");
  return mm_values(*mm, query).median;
}

Hypothesis MmIdc::update(const Hypothesis& h, const LinearQuery& query,
                         double noisy_answer) const {
  const auto* mm = std::get_if<MmHypothesis>(&h);
  if (mm == nullptr) fail(ErrorKind::kContract, "expected MM hypothesis");
  const MedianView view = mm_values(*mm, query);
  if (view.median == noisy_answer) return *mm;  // tie: no-op

  MmHypothesis next;
  next.m = mm->m;
  next.public_n = mm->public_n;
  const bool drop_upper = view.median > noisy_answer;
  for (std::size_t i = 0; i < mm->candidates.size(); ++i) {
    const bool dropped = drop_upper ? view.values[i] >= view.median
                                    : view.values[i] <= view.median;
    if (!dropped) next.candidates.push_back(mm->candidates[i]);
  }
  if (next.candidates.empty()) {
    fail(ErrorKind::kContract,
         "median update would empty the candidate set; answers are "
         "inconsistent with the net guarantee (parameter misuse)");
  }
  return next;
}

double MmIdc::bound_updates_real(double alpha) const {
  checked_alpha(alpha);
  return public_n_ * public_n_ * std::log(static_cast<double>(universe_size_)) *
         std::log(static_cast<double>(query_count_)) / (alpha * alpha);
}

std::uint64_t MmIdc::bound_updates(double alpha) const {
  check_cap(alpha);
  return IdcAlgorithm::bound_updates(alpha);
}

// ---------------------------------------------------------------------------

DusReport verify_dus(std::span<const UpdateRound> trace,
                     const DataHistogram& true_db, double alpha,
                     const IdcAlgorithm& idc) {
  DusReport report;
  if (trace.empty()) return report;

  const Hypothesis start = idc.init(true_db.universe());
  if (!hypotheses_equal(trace.front().before, start)) {
    return DusReport{false, 1, "property 1: trace does not start from the initial hypothesis"};
  }
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const UpdateRound& round = trace[t];
    const double on_db = round.query.canonical(true_db.weights());
    const double on_hyp = idc.eval(round.before, round.query);
    if (!(std::abs(on_db - on_hyp) >= alpha)) {
      return DusReport{false, t + 1,
                       "property 2: query is not an alpha-distinguisher"};
    }
    if (!(std::abs(on_db - round.noisy_answer) < alpha)) {
      return DusReport{false, t + 1,
                       "property 3: reported answer off by >= alpha"};
    }
    if (t + 1 < trace.size() &&
        !hypotheses_equal(round.after, trace[t + 1].before)) {
      return DusReport{false, t + 2, "property 4: hypothesis chain broken"};
    }
  }
  return report;
}

}  // namespace idc
