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

#include "idc/offline.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "idc/errors.hpp"
#include "idc/linalg.hpp"

namespace idc {

// ---------------------------------------------------------------------------
// Exponential-mechanism distinguisher

ExpMechDistinguisher::ExpMechDistinguisher(std::vector<LinearQuery> query_class)
    : class_(std::move(query_class)) {
  if (class_.empty()) fail(ErrorKind::kConfig, "empty query class");
}

std::string ExpMechDistinguisher::f_epsilon_description() const {
  return "F(eps) = O(log(|Q|)/eps) over a finite class of " +
         std::to_string(class_.size()) + " queries";
}

bool ExpMechDistinguisher::in_class(const LinearQuery& query) const {
  return std::find(class_.begin(), class_.end(), query) != class_.end();
}

LinearQuery ExpMechDistinguisher::distinguish(double eps0,
                                              const DataHistogram& db,
                                              const EvaluableHypothesis& hyp,
                                              NoiseSource& src) const {
  if (!(eps0 > 0.0)) fail(ErrorKind::kConfig, "eps0 must be positive");
  std::vector<double> score(class_.size());
  double best = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < class_.size(); ++i) {
    score[i] = std::abs(class_[i].canonical(db.weights()) - hyp.eval(class_[i]));
    if (score[i] > best) {
      best = score[i];
      best_idx = i;
    }
  }
  if (src.zero_noise()) return class_[best_idx];

  // Shift by the max score so the weights stay in (0, 1].
  std::vector<double> w(class_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < class_.size(); ++i) {
    w[i] = std::exp(0.5 * eps0 * (score[i] - best));
    total += w[i];
  }
  double r = src.uniform01() * total;
  for (std::size_t i = 0; i < class_.size(); ++i) {
    r -= w[i];
    if (r <= 0.0) return class_[i];
  }
  return class_.back();
}

// ---------------------------------------------------------------------------
// SVD rank-1 distinguisher

SvdRank1Distinguisher::SvdRank1Distinguisher(double tol, std::size_t max_iters,
                                              std::size_t ascent_restarts)
    : tol_(tol), max_iters_(max_iters), restarts_(ascent_restarts) {}

std::string SvdRank1Distinguisher::f_epsilon_description() const {
  return "NON-PRIVATE-EXPERIMENTAL; score within power-iteration tolerance of "
         "the best rank-1 query";
}

bool SvdRank1Distinguisher::in_class(const LinearQuery& query) const {
  return query.is_rank1();
}

namespace {

double bilinear(const Matrix& a, std::span<const double> u,
                std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (u[i] == 0.0) continue;
    s += u[i] * dot(a.row(i), v);
  }
  return s;
}

std::vector<double> signed_part(std::span<const double> x, double sign) {
  std::vector<double> out(x.size(), 0.0);
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = sign * x[i];
    if (v > 0.0) {
      out[i] = v;
      peak = std::max(peak, v);
    }
  }
  if (peak > 0.0) {
    for (double& v : out) v /= peak;
  }
  return out;
}

// Alternating vertex ascent on s * u^T A v over the [0,1] box: for fixed v
// an optimal u is the indicator of the non-negative entries of s*A v, and
// symmetrically. Zero-marginal coordinates are included so the ascent can
// escape plateaus. Monotone, terminates at a fixed point, never leaves the
// rank-1 class.
void vertex_ascent(const Matrix& a, double s, std::vector<double>& u,
                   std::vector<double>& v) {
  for (std::size_t pass = 0; pass < 2 * a.rows() + 4; ++pass) {
    bool changed = false;
    std::vector<double> av = a.apply(v);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double want = s * av[i] >= 0.0 ? 1.0 : 0.0;
      if (u[i] != want) {
        u[i] = want;
        changed = true;
      }
    }
    std::vector<double> atu = a.apply_transpose(u);
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double want = s * atu[j] >= 0.0 ? 1.0 : 0.0;
      if (v[j] != want) {
        v[j] = want;
        changed = true;
      }
    }
    if (!changed) break;
  }
}

}  // namespace

SvdRank1Distinguisher::Rank1Pick SvdRank1Distinguisher::pick(
    std::span<const double> diff_pairs, std::size_t vertex_count) const {
  Rank1Pick out;
  out.u.assign(vertex_count, 0.0);
  out.v.assign(vertex_count, 0.0);
  const Matrix a = symmetric_from_pairs(diff_pairs, vertex_count);
  if (a.is_zero()) return out;

  const SingularPair top = top_singular_pair(a, tol_, max_iters_);
  const auto consider = [&](std::vector<double> u, std::vector<double> v) {
    for (double s : {+1.0, -1.0}) {
      std::vector<double> uu = u;
      std::vector<double> vv = v;
      vertex_ascent(a, s, uu, vv);
      const double score = bilinear(a, uu, vv);
      if (std::abs(score) > std::abs(out.score)) {
        out.score = score;
        out.u = std::move(uu);
        out.v = std::move(vv);
      }
    }
  };
  for (double su : {+1.0, -1.0}) {
    for (double sv : {+1.0, -1.0}) {
      consider(signed_part(top.left, su), signed_part(top.right, sv));
    }
  }
  // Binary starts seeded from the matrix content; pure in the input,
  // deterministic across runs.
  std::uint64_t content_hash = 0xA5CE17u;
  for (const double x : diff_pairs) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(x));
    std::memcpy(&bits, &x, sizeof(bits));
    content_hash = (content_hash ^ bits) * 0x100000001B3ULL;
  }
  NoiseSource starts(content_hash);
  for (std::size_t r = 0; r < restarts_; ++r) {
    std::vector<double> u(vertex_count), v(vertex_count);
    for (double& x : u) x = starts.uniform01() < 0.5 ? 1.0 : 0.0;
    for (double& x : v) x = starts.uniform01() < 0.5 ? 1.0 : 0.0;
    consider(std::move(u), std::move(v));
  }
  return out;
}

LinearQuery SvdRank1Distinguisher::distinguish(double /*eps0*/,
                                               const DataHistogram& db,
                                               const EvaluableHypothesis& hyp,
                                               NoiseSource& /*src*/) const {
  const Universe& universe = db.universe();
  if (!universe.has_graph_structure()) {
    fail(ErrorKind::kDomainMismatch, "rank-1 distinguisher needs a graph universe");
  }
  const auto hyp_vec = hyp.dense();
  if (!hyp_vec.has_value()) {
    fail(ErrorKind::kContract,
         "hypothesis is not expressible as a symmetric matrix");
  }
  std::vector<double> diff(universe.size());
  for (std::size_t e = 0; e < diff.size(); ++e) {
    diff[e] = db.weight(e) - (*hyp_vec)[e];
  }
  const Rank1Pick best = pick(diff, universe.vertex_count());
  return compile_rank1_query(best.u, best.v, universe);
}

// ---------------------------------------------------------------------------
// Iterative construction release

void IcConfig::validate() const {
  privacy.validate();
  if (!(privacy.delta > 0.0)) fail(ErrorKind::kConfig, "IC needs delta > 0");
  if (!(alpha > 0.0)) fail(ErrorKind::kConfig, "alpha must be positive");
  if (certify_beta.has_value() && !(*certify_beta > 0.0 && *certify_beta < 1.0)) {
    fail(ErrorKind::kConfig, "certify_beta must lie in (0, 1)");
  }
}

IcResult ic_release(const DataHistogram& db, const IdcAlgorithm& idc_proto,
                    const Distinguisher& distinguisher, const IcConfig& config,
                    NoiseSource noise) {
  config.validate();
  IcResult result;
  result.budget = idc_proto.bound_updates(config.alpha);
  if (result.budget == 0) {
    fail(ErrorKind::kConfig, "update bound B(alpha) is zero; nothing to construct");
  }
  result.eps0 = config.privacy.epsilon /
                (4.0 * std::sqrt(static_cast<double>(result.budget) *
                                 std::log(1.0 / config.privacy.delta)));
  if (config.certify_beta.has_value()) {
    const double limit =
        *config.certify_beta / (2.0 * static_cast<double>(result.budget));
    if (!(distinguisher.gamma() <= limit)) {
      fail(ErrorKind::kConfig,
           "distinguisher failure probability gamma exceeds beta / (2 B(alpha))");
    }
  }

  const auto updater = idc_proto.with_update_scale(config.alpha / 2.0);
  Hypothesis hypothesis = updater->init(db.universe());
  const double exit_threshold = 3.0 * config.alpha / 4.0;

  for (std::uint64_t t = 1; t <= result.budget; ++t) {
    const EvaluableHypothesis view{updater.get(), &hypothesis};
    LinearQuery query = distinguisher.distinguish(result.eps0, db, view, noise);
    if (!distinguisher.in_class(query)) {
      fail(ErrorKind::kContract, "distinguisher returned an out-of-class query");
    }
    const double noisy =
        query.canonical(db.weights()) + laplace_sample(1.0 / result.eps0, noise);
    const double on_hypothesis = updater->eval(hypothesis, query);
    result.rounds = t;
    if (std::abs(noisy - on_hypothesis) < exit_threshold) {
      result.transcript.push_back(IcRoundRecord{query, noisy, on_hypothesis, false});
      result.early_exit = true;
      break;
    }
    result.transcript.push_back(IcRoundRecord{query, noisy, on_hypothesis, true});
    Hypothesis before = hypothesis;
    hypothesis = updater->update(hypothesis, query, noisy);
    result.update_rounds.push_back(
        UpdateRound{std::move(before), std::move(query), noisy, hypothesis});
  }

  result.synthetic = std::move(hypothesis);
  if (distinguisher.is_private()) {
    result.privacy = compose_budget(result.budget, result.eps0,
                                    config.privacy.delta,
                                    /*two_accesses_per_round=*/true);
  }
  return result;
}

}  // namespace idc
