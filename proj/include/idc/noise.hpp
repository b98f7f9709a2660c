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

#ifndef IDC_NOISE_HPP_
#define IDC_NOISE_HPP_

#include <cstddef>
#include <cstdint>

namespace idc {

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  // epsilon > 0 and 0 <= delta < 1.
  void validate() const;
};

// Deterministic, splittable PRNG (splitmix64 streams). Identical seeds yield
// identical sample streams; split() derives an independent child stream so
// parallel trials stay reproducible regardless of how far the parent has
// advanced. The zero-noise mode is a test hook: laplace_sample returns
// exactly 0 while uniform draws stay live.
class NoiseSource {
 public:
  enum class Mode { kLive, kZero };

  explicit NoiseSource(std::uint64_t seed, Mode mode = Mode::kLive);
  static NoiseSource zero_hook(std::uint64_t seed = 0);

  std::uint64_t next_u64();
  // Uniform in the open interval (0, 1), 53-bit resolution.
  double uniform01();

  NoiseSource split(std::uint64_t stream) const;

  bool zero_noise() const { return mode_ == Mode::kZero; }
  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  Mode mode_;
};

// One draw from Lap(scale), inverse-CDF method. scale must be positive.
// Returns exactly 0 when src is in zero-noise mode.
double laplace_sample(double scale, NoiseSource& src);

// Upper bound on Pr[sum_i q_i Y_i >= alpha] for k i.i.d. Y_i ~ Lap(b) and
// weights q_i in [0,1]:
//   exp(-alpha^2 / (6 k b^2))   if alpha <= k*b,
//   exp(-alpha / (6 b))         otherwise.
double laplace_sum_tail_bound(std::uint64_t k, double b, double alpha);

// Additive error bound for answering num_queries linear queries from a
// coordinate-wise Lap(1/epsilon)-perturbed histogram, at failure probability
// beta. Small query classes (num_queries <= (beta/2) * 2^{|X|/6}) get
//   (1/epsilon) * sqrt(6 |X| ln(num_queries/beta));
// larger classes lose an extra sqrt(ln(|X|/beta)) factor.
double rr_error_bound(std::size_t universe_size, double num_queries,
                      double beta, double epsilon);

// Advanced-composition accountant for `rounds` mechanism rounds of
// eps0-private data accesses:
//   eps' = sqrt(2 A ln(1/delta)) * eps0 + A * eps0 * (e^{eps0} - 1)
// where A is the total access count: 2*rounds when two_accesses_per_round is
// set (one distinguisher call plus one Laplace check per round), else rounds.
PrivacyParams compose_budget(std::uint64_t rounds, double eps0, double delta,
                             bool two_accesses_per_round = true);

}  // namespace idc

#endif  // IDC_NOISE_HPP_
