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

#include "idc/core.hpp"
#include "idc/errors.hpp"
#include "idc/experiments.hpp"
#include "idc/noise.hpp"
#include "idc/synth.hpp"

using namespace idc;

namespace {

// Naive double-exponential enumeration, the oracle for the closed-form
// brute force.
double naive_cut_norm(const Matrix& a, bool normalized = false) {
  double best = 0.0;
  for (unsigned smask = 0; smask < (1u << a.rows()); ++smask) {
    for (unsigned tmask = 0; tmask < (1u << a.cols()); ++tmask) {
      if (normalized && (smask == 0 || tmask == 0)) continue;
      double total = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!(smask & (1u << i))) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) {
          if (tmask & (1u << j)) total += a.at(i, j);
        }
      }
      const double value = normalized
                               ? std::abs(total) / std::sqrt(double(std::popcount(smask)) *
                                                             double(std::popcount(tmask)))
                               : std::abs(total);
      best = std::max(best, value);
    }
  }
  return best;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, NoiseSource& rng) {
  Matrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      a.at(i, j) = 2.0 * rng.uniform01() - 1.0;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("randomized response") {
  const DataHistogram g = DataHistogram::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});

  SUBCASE("zero-noise hook reproduces the adjacency indicators") {
    NoiseSource src = NoiseSource::zero_hook();
    const NoisyGraph z = randomized_response(g, 1.0, src);
    for (std::size_t e = 0; e < z.weights.size(); ++e) {
      CHECK(z.weights[e] == g.weight(e));
    }
  }
  SUBCASE("graph universe required") {
    const DataHistogram plain(Universe::plain(4), {1, 0, 0, 0});
    NoiseSource src(1);
    CHECK_THROWS_AS(randomized_response(plain, 1.0, src), Error);
  }
  SUBCASE("per-cut error spread matches the Laplace sum") {
    // Disjoint S, T: the public cut error is a sum of |S||T| independent
    // Lap(1/eps) draws, so its standard deviation is sqrt(2 |S||T|) / eps.
    const std::size_t v = 12;
    const DataHistogram big = gen_graph(v, 0.4, 99);
    const std::vector<std::size_t> s = {0, 1, 2, 3};
    const std::vector<std::size_t> t = {4, 5, 6, 7, 8, 9};
    const LinearQuery q = compile_cut_query(s, t, big.universe());
    const double eps = 1.0;
    const double truth = q.evaluate(big.weights());

    NoiseSource src(123);
    const int trials = 1000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < trials; ++i) {
      NoiseSource trial = src.split(i);
      const NoisyGraph z = randomized_response(big, eps, trial);
      const double err = q.evaluate(z.weights) - truth;
      sum += err;
      sumsq += err * err;
    }
    const double var = sumsq / trials - (sum / trials) * (sum / trials);
    const double expect_std = std::sqrt(2.0 * double(s.size() * t.size())) / eps;
    CHECK(std::sqrt(var) == doctest::Approx(expect_std).epsilon(0.15));
  }
  SUBCASE("sampled-cut max error stays under the bound") {
    const std::size_t v = 14;
    const DataHistogram big = gen_graph(v, 0.3, 7);
    const double eps = 1.0;
    const std::size_t cuts = 1000;
    const double bound = rr_error_bound(big.universe().size(), double(cuts),
                                        0.05, eps);
    for (std::uint64_t seed : {11u, 22u, 33u}) {
      NoiseSource src(seed);
      const NoisyGraph z = randomized_response(big, eps, src);
      const auto sample = gen_cut_stream(v, cuts, seed ^ 0xFACEu,
                                         CutStreamMode::kUniformRandomSets);
      double max_err = 0.0;
      for (const LinearQuery& q : sample) {
        max_err = std::max(max_err, std::abs(q.evaluate(z.weights) -
                                             q.evaluate(big.weights())));
      }
      CHECK(max_err <= bound);
    }
  }
}

TEST_CASE("cut norm brute force") {
  SUBCASE("zero matrix") {
    const CutNormResult r = cut_norm_bruteforce(Matrix(3, 3));
    CHECK(r.value == 0.0);
    CHECK(r.row_set.empty());
    CHECK(r.col_set.empty());
  }
  SUBCASE("worked 2x2 example") {
    Matrix a(2, 2);
    a.at(0, 0) = 1.0;
    a.at(0, 1) = -2.0;
    a.at(1, 0) = 0.0;
    a.at(1, 1) = 1.0;
    const CutNormResult r = cut_norm_bruteforce(a);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.row_set == std::vector<std::size_t>{0});
    CHECK(r.col_set == std::vector<std::size_t>{1});
  }
  SUBCASE("agrees with naive enumeration on random 4x4 matrices") {
    NoiseSource rng(42);
    for (int rep = 0; rep < 50; ++rep) {
      const Matrix a = random_matrix(4, 4, rng);
      CHECK(cut_norm_bruteforce(a).value ==
            doctest::Approx(naive_cut_norm(a)).epsilon(1e-12));
    }
  }
  SUBCASE("returned sets recompute to the returned value") {
    NoiseSource rng(43);
    const Matrix a = random_matrix(6, 5, rng);
    const CutNormResult r = cut_norm_bruteforce(a);
    CHECK(std::abs(cut_sum(a, r.row_set, r.col_set)) ==
          doctest::Approx(r.value).epsilon(1e-12));
  }
  SUBCASE("size cap") {
    CHECK_THROWS_AS(cut_norm_bruteforce(Matrix(21, 2)), Error);
  }
}

TEST_CASE("normalized cut norm brute force agrees with naive enumeration") {
  NoiseSource rng(77);
  for (int rep = 0; rep < 25; ++rep) {
    const Matrix a = random_matrix(5, 5, rng);
    CHECK(normalized_cut_norm_bruteforce(a).value ==
          doctest::Approx(naive_cut_norm(a, true)).epsilon(1e-12));
  }
}

TEST_CASE("top singular pair") {
  SUBCASE("known rank-1 matrix") {
    Matrix a(2, 2);
    a.at(0, 1) = 5.0;
    const SingularPair p = top_singular_pair(a);
    CHECK(p.converged);
    CHECK(p.sigma == doctest::Approx(5.0).epsilon(1e-9));
  }
  SUBCASE("known symmetric spectrum") {
    Matrix a(2, 2);
    a.at(0, 1) = 3.0;
    a.at(1, 0) = 3.0;
    const SingularPair p = top_singular_pair(a);
    CHECK(p.sigma == doctest::Approx(3.0).epsilon(1e-9));
  }
  SUBCASE("constructed outer product with known sigma") {
    // A = 4 u v^T for unit u, v has sigma_1 = 4.
    const std::vector<double> u = {0.6, 0.8, 0.0};
    const std::vector<double> v = {0.0, 1.0, 0.0};
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a.at(i, j) = 4.0 * u[i] * v[j];
    }
    const SingularPair p = top_singular_pair(a);
    CHECK(p.sigma == doctest::Approx(4.0).epsilon(1e-9));
    // A v = sigma u holds at the fixed point.
    const auto av = a.apply(p.right);
    for (int i = 0; i < 3; ++i) {
      CHECK(av[i] == doctest::Approx(p.sigma * p.left[i]).epsilon(1e-6));
    }
  }
  SUBCASE("zero matrix") {
    const SingularPair p = top_singular_pair(Matrix(4, 4));
    CHECK(p.sigma == 0.0);
    CHECK(p.converged);
  }
}

TEST_CASE("spectral separation") {
  SUBCASE("single nonzero entry") {
    Matrix a(3, 3);
    a.at(0, 1) = 5.0;
    const SeparationResult r = spectral_separation(a, /*normalized=*/true);
    CHECK(r.row_set == std::vector<std::size_t>{0});
    CHECK(r.col_set == std::vector<std::size_t>{1});
    CHECK(r.violation == doctest::Approx(5.0).epsilon(1e-9));
  }
  SUBCASE("zero matrix returns the empty pair") {
    const SeparationResult r = spectral_separation(Matrix(3, 3), false);
    CHECK(r.violation == 0.0);
    CHECK(r.row_set.empty());
  }
  SUBCASE("never exceeds the exhaustive optimum, and recomputes exactly") {
    NoiseSource rng(11);
    for (int rep = 0; rep < 20; ++rep) {
      const Matrix a = random_matrix(10, 10, rng);
      const SeparationResult r = spectral_separation(a, /*normalized=*/false);
      const CutNormResult exact = cut_norm_bruteforce(a);
      CHECK(std::abs(r.violation) <= exact.value + 1e-9);
      CHECK(r.violation ==
            doctest::Approx(cut_sum(a, r.row_set, r.col_set)).epsilon(1e-12));
    }
  }
  SUBCASE("sigma_1 dominates the normalized cut norm") {
    NoiseSource rng(12);
    for (int rep = 0; rep < 25; ++rep) {
      Matrix a(8, 8);
      for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = i; j < 8; ++j) {
          const double x = 2.0 * rng.uniform01() - 1.0;
          a.at(i, j) = x;
          a.at(j, i) = x;
        }
      }
      const SingularPair p = top_singular_pair(a, 1e-10, 4000);
      const double nc = normalized_cut_norm_bruteforce(a).value;
      CHECK(p.sigma >= nc - 1e-9);
    }
  }
}

TEST_CASE("projection to the synthetic box") {
  SUBCASE("in-box input is a fixed point") {
    const DataHistogram g = DataHistogram::from_edges(5, {{0, 1}, {2, 3}});
    NoisyGraph z;
    z.vertex_count = 5;
    z.weights.assign(g.weights().begin(), g.weights().end());
    const WeightedSyntheticGraph x =
        project_to_synthetic(z, spectral_oracle(true), 50);
    for (std::size_t e = 0; e < x.weights.size(); ++e) {
      CHECK(x.weights[e] == g.weight(e));
    }
  }
  SUBCASE("zero-noise pipeline reproduces the adjacency exactly") {
    const DataHistogram g = DataHistogram::from_edges(6, {{0, 1}, {1, 2}, {4, 5}});
    NoiseSource src = NoiseSource::zero_hook();
    const NoisyGraph z = randomized_response(g, 2.0, src);
    const WeightedSyntheticGraph x =
        project_to_synthetic(z, spectral_oracle(true), 50);
    std::vector<double> diff(x.weights.size());
    for (std::size_t e = 0; e < diff.size(); ++e) {
      diff[e] = x.weights[e] - g.weight(e);
    }
    CHECK(cut_norm_bruteforce(symmetric_from_pairs(diff, 6)).value ==
          doctest::Approx(0.0));
  }
  SUBCASE("output stays in the box; the residual never exceeds the clip residual") {
    // Residuals are violations against the noisy target z, the quantity the
    // projection controls; with the exact oracle the best-iterate rule makes
    // the final residual at most the initial clip residual, per trial.
    const std::size_t v = 10;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      const DataHistogram g = gen_graph(v, 0.5, seed);
      NoiseSource src(seed * 100 + 9);
      const NoisyGraph z = randomized_response(g, 2.0, src);
      const WeightedSyntheticGraph x =
          project_to_synthetic(z, bruteforce_oracle(false), 150);
      for (double w : x.weights) CHECK((w >= 0.0 && w <= 1.0));

      std::vector<double> clip_diff(z.weights.size()), final_diff(z.weights.size());
      for (std::size_t e = 0; e < z.weights.size(); ++e) {
        clip_diff[e] = std::clamp(z.weights[e], 0.0, 1.0) - z.weights[e];
        final_diff[e] = x.weights[e] - z.weights[e];
      }
      const double before =
          cut_norm_bruteforce(symmetric_from_pairs(clip_diff, v)).value;
      const double after =
          cut_norm_bruteforce(symmetric_from_pairs(final_diff, v)).value;
      CAPTURE(seed);
      CHECK(after <= before + 1e-9);
      CHECK(after < before);  // the oracle steps genuinely reduce it here
    }
  }
  SUBCASE("budget must be positive") {
    NoisyGraph z;
    z.vertex_count = 3;
    z.weights = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(project_to_synthetic(z, spectral_oracle(true), 0), Error);
  }
}

TEST_CASE("rounding to an unweighted graph") {
  SUBCASE("integral weights round deterministically") {
    WeightedSyntheticGraph x;
    x.vertex_count = 4;
    x.weights = {1.0, 0.0, 0.0, 1.0, 0.0, 1.0};
    NoiseSource src(5);
    const DataHistogram g = round_to_unweighted(x, src);
    for (std::size_t e = 0; e < x.weights.size(); ++e) {
      CHECK(g.weight(e) == x.weights[e]);
    }
  }
  SUBCASE("per-cut unbiasedness over repeated roundings") {
    const std::size_t v = 8;
    const Universe u = Universe::graph(v);
    NoiseSource wrng(17);
    WeightedSyntheticGraph x;
    x.vertex_count = v;
    x.weights.resize(u.size());
    for (double& w : x.weights) w = wrng.uniform01();
    const LinearQuery q = compile_cut_query({0, 1, 2}, {3, 4, 5, 6}, u);
    const double fractional = q.evaluate(x.weights);

    const int trials = 1000;
    double sum = 0.0;
    double per_round_var = 0.0;
    {
      // Exact variance of the rounded cut value.
      std::size_t e = 0;
      const auto coeff = q.coefficients();
      for (std::size_t i = 0; i < v; ++i) {
        for (std::size_t j = i + 1; j < v; ++j, ++e) {
          const double c = 2.0 * coeff[e];  // public-scale weight per edge
          per_round_var += c * c * x.weights[e] * (1.0 - x.weights[e]);
        }
      }
    }
    NoiseSource src(18);
    for (int t = 0; t < trials; ++t) {
      NoiseSource trial = src.split(t);
      const DataHistogram g = round_to_unweighted(x, trial);
      sum += q.evaluate(g.weights());
    }
    const double mean = sum / trials;
    const double se = std::sqrt(per_round_var / trials);
    CHECK(std::abs(mean - fractional) <= 3.0 * se + 1e-9);
  }
  SUBCASE("cut-norm inflation from rounding stays within the measured slack") {
    const std::size_t v = 12;
    const DataHistogram g = gen_graph(v, 0.5, 31);
    NoiseSource src(32);
    const NoisyGraph z = randomized_response(g, 2.0, src);
    const WeightedSyntheticGraph x =
        project_to_synthetic(z, bruteforce_oracle(false), 100);
    std::vector<double> frac_diff(x.weights.size()), round_diff(x.weights.size());
    const DataHistogram rounded = round_to_unweighted(x, src);
    for (std::size_t e = 0; e < x.weights.size(); ++e) {
      frac_diff[e] = x.weights[e] - g.weight(e);
      round_diff[e] = rounded.weight(e) - g.weight(e);
    }
    const double frac = cut_norm_bruteforce(symmetric_from_pairs(frac_diff, v)).value;
    const double round = cut_norm_bruteforce(symmetric_from_pairs(round_diff, v)).value;
    MESSAGE("fractional residual ", frac, ", rounded residual ", round);
    CHECK(round <= frac + 2.5 * double(v));
  }
}
