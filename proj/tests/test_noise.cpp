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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "idc/errors.hpp"
#include "idc/noise.hpp"

using namespace idc;

TEST_CASE("privacy params validation") {
  CHECK_NOTHROW((PrivacyParams{1.0, 0.0}).validate());
  CHECK_NOTHROW((PrivacyParams{0.5, 1e-6}).validate());
  CHECK_THROWS_AS((PrivacyParams{0.0, 0.0}).validate(), Error);
  CHECK_THROWS_AS((PrivacyParams{1.0, 1.0}).validate(), Error);
  CHECK_THROWS_AS((PrivacyParams{1.0, -0.1}).validate(), Error);
}

TEST_CASE("noise source determinism and splitting") {
  NoiseSource a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // Child streams are independent of parent progress.
  NoiseSource parent1(7), parent2(7);
  (void)parent1.next_u64();
  (void)parent1.next_u64();
  NoiseSource c1 = parent1.split(3);
  NoiseSource c2 = parent2.split(3);
  for (int i = 0; i < 10; ++i) CHECK(c1.next_u64() == c2.next_u64());

  // Distinct streams diverge.
  NoiseSource d1 = parent2.split(4);
  NoiseSource d2 = parent2.split(5);
  CHECK(d1.next_u64() != d2.next_u64());
}

TEST_CASE("uniform01 stays inside the open interval") {
  NoiseSource src(123);
  for (int i = 0; i < 100000; ++i) {
    const double u = src.uniform01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("laplace zero-noise hook returns exactly 0") {
  NoiseSource src = NoiseSource::zero_hook();
  for (double b : {0.1, 1.0, 50.0}) CHECK(laplace_sample(b, src) == 0.0);
  CHECK_THROWS_AS(laplace_sample(0.0, src), Error);
  CHECK_THROWS_AS(laplace_sample(-1.0, src), Error);
}

TEST_CASE("laplace empirical median and variance") {
  // Median of |X| is b ln 2; variance is 2 b^2.
  const double b = 2.5;
  const int n = 100000;
  NoiseSource src(2024);
  std::vector<double> absdraws(n);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = laplace_sample(b, src);
    absdraws[i] = std::abs(x);
    sum += x;
    sumsq += x * x;
  }
  std::nth_element(absdraws.begin(), absdraws.begin() + n / 2, absdraws.end());
  const double median = absdraws[n / 2];
  CHECK(median == doctest::Approx(b * std::log(2.0)).epsilon(0.05));
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(var == doctest::Approx(2.0 * b * b).epsilon(0.10));
}

TEST_CASE("tail bound closed form") {
  // Boundary alpha = k b hits the first branch.
  CHECK(laplace_sum_tail_bound(50, 1.0, 50.0) ==
        doctest::Approx(std::exp(-50.0 / 6.0)).epsilon(1e-12));
  CHECK(laplace_sum_tail_bound(50, 1.0, 50.0) == doctest::Approx(2.357e-4).epsilon(1e-3));
  // Past the boundary the linear branch applies.
  CHECK(laplace_sum_tail_bound(50, 1.0, 100.0) ==
        doctest::Approx(std::exp(-100.0 / 6.0)).epsilon(1e-12));
  CHECK(laplace_sum_tail_bound(50, 1.0, 100.0) == doctest::Approx(5.96e-8).epsilon(1e-2));
  CHECK_THROWS_AS(laplace_sum_tail_bound(0, 1.0, 1.0), Error);
}

TEST_CASE("tail bound dominates Monte Carlo at the 1/20 point") {
  const std::uint64_t k = 50;
  const double alpha = std::sqrt(6.0 * k * std::log(20.0));
  const double bound = laplace_sum_tail_bound(k, 1.0, alpha);
  CHECK(bound == doctest::Approx(0.05).epsilon(1e-9));

  const int trials = 100000;
  NoiseSource src(99);
  int exceed = 0;
  for (int t = 0; t < trials; ++t) {
    double s = 0.0;
    for (std::uint64_t i = 0; i < k; ++i) s += laplace_sample(1.0, src);
    if (s >= alpha) ++exceed;
  }
  const double freq = double(exceed) / trials;
  CHECK(freq <= bound);
}

TEST_CASE("tail bound soundness over random parameter triples") {
  // 20 seeded (k, b, alpha) triples with alpha placed where the bound is
  // informative; Monte Carlo exceedance must stay within the bound plus
  // three binomial standard errors.
  NoiseSource pick(7777);
  const int trials = 100000;
  for (int c = 0; c < 20; ++c) {
    const std::uint64_t k = 5 + pick.next_u64() % 60;
    const double b = 0.25 + 2.0 * pick.uniform01();
    const double p_target = 0.01 + 0.4 * pick.uniform01();
    const double alpha = std::sqrt(6.0 * double(k) * std::log(1.0 / p_target)) * b;
    const double bound = laplace_sum_tail_bound(k, b, alpha);

    NoiseSource src = pick.split(c);
    int exceed = 0;
    for (int t = 0; t < trials; ++t) {
      double s = 0.0;
      for (std::uint64_t i = 0; i < k; ++i) s += laplace_sample(b, src);
      if (s >= alpha) ++exceed;
    }
    const double freq = double(exceed) / trials;
    const double stderr3 = 3.0 * std::sqrt(bound * (1.0 - bound) / trials);
    CAPTURE(k);
    CAPTURE(b);
    CAPTURE(alpha);
    CHECK(freq <= bound + stderr3);
  }
}

TEST_CASE("randomized response error bound") {
  // Small-class closed form, recomputed: sqrt(6 * 190 * ln(2^40 / 0.01)) with
  // natural logs is 191.98. Those inputs land in the general branch, which
  // multiplies in the extra sqrt(ln(|X|/beta)) factor.
  const double closed_form = std::sqrt(6.0 * 190.0 * std::log(std::exp2(40.0) / 0.01));
  CHECK(closed_form == doctest::Approx(192.0).epsilon(1e-3));
  const double general = rr_error_bound(190, std::exp2(40.0), 0.01, 1.0);
  CHECK(general ==
        doctest::Approx(closed_form * std::sqrt(std::log(190.0 / 0.01))).epsilon(1e-12));

  // Inputs inside the small-class region return the closed form itself.
  const double small = rr_error_bound(190, 1000.0, 0.01, 1.0);
  CHECK(small ==
        doctest::Approx(std::sqrt(6.0 * 190.0 * std::log(1000.0 / 0.01))).epsilon(1e-12));

  // eps -> infinity limit vanishes; doubling eps halves the bound.
  CHECK(rr_error_bound(190, 1000.0, 0.01, 1e12) < 1e-9);
  CHECK(rr_error_bound(190, 1000.0, 0.01, 2.0) ==
        doctest::Approx(small / 2.0).epsilon(1e-12));
}

TEST_CASE("composition accountant") {
  // B=100, eps0=0.01, delta=1/e: eps' = 0.2 + 2 (e^{0.01} - 1).
  const PrivacyParams p = compose_budget(100, 0.01, std::exp(-1.0));
  CHECK(p.epsilon ==
        doctest::Approx(0.2 + 2.0 * (std::exp(0.01) - 1.0)).epsilon(1e-12));
  CHECK(p.epsilon == doctest::Approx(0.2201).epsilon(1e-3));
  CHECK(p.delta == doctest::Approx(std::exp(-1.0)));

  // B = 0 rounds leaks nothing.
  CHECK(compose_budget(0, 0.5, 0.1).epsilon == 0.0);

  // Monotone in B and eps0; vanishes as eps0 -> 0.
  double prev = 0.0;
  for (std::uint64_t b : {1, 2, 5, 10, 100}) {
    const double e = compose_budget(b, 0.01, 0.1).epsilon;
    CHECK(e >= prev);
    prev = e;
  }
  prev = 0.0;
  for (double eps0 : {1e-6, 1e-4, 1e-2, 0.5}) {
    const double e = compose_budget(10, eps0, 0.1).epsilon;
    CHECK(e >= prev);
    prev = e;
  }
  CHECK(compose_budget(10, 1e-12, 0.1).epsilon < 1e-9);

  // Single-access-per-round accounting is strictly cheaper.
  CHECK(compose_budget(100, 0.01, 0.1, false).epsilon <
        compose_budget(100, 0.01, 0.1, true).epsilon);
}
