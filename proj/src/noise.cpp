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

#include "idc/noise.hpp"

#include <cmath>

#include "idc/errors.hpp"

namespace idc {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

void PrivacyParams::validate() const {
  if (!(epsilon > 0.0)) fail(ErrorKind::kConfig, "epsilon must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) {
    fail(ErrorKind::kConfig, "delta must lie in [0, 1)");
  }
}

NoiseSource::NoiseSource(std::uint64_t seed, Mode mode)
    : seed_(seed), state_(seed), mode_(mode) {}

NoiseSource NoiseSource::zero_hook(std::uint64_t seed) {
  return NoiseSource(seed, Mode::kZero);
}

std::uint64_t NoiseSource::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double NoiseSource::uniform01() {
  // (x >> 11) is uniform on [0, 2^53); the +0.5 keeps both endpoints out.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

NoiseSource NoiseSource::split(std::uint64_t stream) const {
  return NoiseSource(mix64(seed_ + kGolden * (stream + 1)), mode_);
}

double laplace_sample(double scale, NoiseSource& src) {
  if (!(scale > 0.0)) fail(ErrorKind::kConfig, "Laplace scale must be positive");
  if (src.zero_noise()) return 0.0;
  const double u = src.uniform01();
  return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

double laplace_sum_tail_bound(std::uint64_t k, double b, double alpha) {
  if (k == 0) fail(ErrorKind::kConfig, "tail bound needs k >= 1");
  if (!(b > 0.0)) fail(ErrorKind::kConfig, "tail bound needs b > 0");
  if (!(alpha > 0.0)) fail(ErrorKind::kConfig, "tail bound needs alpha > 0");
  const double kb = static_cast<double>(k) * b;
  if (alpha <= kb) {
    return std::exp(-(alpha * alpha) / (6.0 * static_cast<double>(k) * b * b));
  }
  return std::exp(-alpha / (6.0 * b));
}

double rr_error_bound(std::size_t universe_size, double num_queries,
                      double beta, double epsilon) {
  if (universe_size == 0) fail(ErrorKind::kConfig, "empty universe");
  if (!(num_queries >= 1.0)) fail(ErrorKind::kConfig, "need at least one query");
  if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::kConfig, "beta must lie in (0, 1)");
  if (!(epsilon > 0.0)) fail(ErrorKind::kConfig, "epsilon must be positive");

  const double x = static_cast<double>(universe_size);
  const double base = std::sqrt(6.0 * x * std::log(num_queries / beta)) / epsilon;
  // Small-class test in log space: |Q| <= (beta/2) * 2^{|X|/6}.
  const bool small_class =
      std::log(num_queries) <= std::log(beta / 2.0) + (x / 6.0) * std::log(2.0);
  if (small_class) return base;
  return base * std::sqrt(std::log(x / beta));
}

PrivacyParams compose_budget(std::uint64_t rounds, double eps0, double delta,
                             bool two_accesses_per_round) {
  if (!(eps0 > 0.0)) fail(ErrorKind::kConfig, "eps0 must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorKind::kConfig, "composition needs delta in (0, 1)");
  }
  const double accesses =
      static_cast<double>(rounds) * (two_accesses_per_round ? 2.0 : 1.0);
  const double eps_prime =
      std::sqrt(2.0 * accesses * std::log(1.0 / delta)) * eps0 +
      accesses * eps0 * std::expm1(eps0);
  return PrivacyParams{eps_prime, delta};
}

}  // namespace idc
