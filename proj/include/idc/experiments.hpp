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

#ifndef IDC_EXPERIMENTS_HPP_
#define IDC_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "idc/core.hpp"
#include "idc/idc.hpp"
#include "idc/noise.hpp"
#include "idc/offline.hpp"
#include "idc/online.hpp"

namespace idc {

// G(V, p): each unordered pair is an edge independently with probability p.
DataHistogram gen_graph(std::size_t vertex_count, double p, std::uint64_t seed);

enum class CutStreamMode { kUniformRandomSets, kAdversarialMaxGap };

// k cut queries. Uniform mode puts each vertex in S (and, independently, in
// T) with probability 1/2. Adversarial mode needs oracle access to the
// database and is test-only: it emits the brute-force max-gap cut against the
// empty hypothesis, a worst-case repeat stream.
std::vector<LinearQuery> gen_cut_stream(std::size_t vertex_count,
                                        std::uint64_t k, std::uint64_t seed,
                                        CutStreamMode mode,
                                        const DataHistogram* db = nullptr);

// Brute-force max-discrepancy cut between the database and a hypothesis pair
// vector (V <= 20). The adaptive-adversary primitive used by the harnesses.
LinearQuery max_gap_cut_query(const DataHistogram& db,
                              std::span<const double> hypothesis_pairs);

// Thread cap for parallel trials; IDC_RELEASE_THREADS overrides.
unsigned thread_cap();

// Runs fn(trial) for trial = 0..trials-1, in parallel up to the thread cap.
// Results land in a vector indexed by trial, so aggregation is
// order-independent.
void run_trials(std::uint64_t trials,
                const std::function<void(std::uint64_t)>& fn);

// Flat result row; one per trial (or sweep point). Columns are fixed across
// subcommands, empty where not applicable.
struct ResultRow {
  std::map<std::string, std::string> cells;

  void set(const std::string& column, const std::string& value);
  void set(const std::string& column, double value);
  void set(const std::string& column, std::uint64_t value);
};

extern const std::vector<std::string> kResultColumns;  // schema v1

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_json(const std::vector<ResultRow>& rows, std::ostream& out);
void save_rows(const std::vector<ResultRow>& rows, const std::string& path,
               const std::string& format);

// Shared experiment parameters, mirrored from the CLI flags.
struct ExperimentConfig {
  std::string mechanism;  // online | ic | rr
  std::string idc_kind = "fk";
  std::string distinguisher = "exp";  // exp | svd (release-offline)
  PrivacyParams privacy;
  std::optional<double> alpha;  // nullopt: solve the fixed point
  double beta = 0.1;
  std::uint64_t k = 1000;
  double sigma_constant = 1000.0;
  double t_constant = 4.0;
  bool zero_noise = false;
  std::uint64_t seed = 1;
  std::uint64_t trials = 1;
  std::optional<std::string> graph_path;
  std::size_t gen_v = 0;
  double gen_p = 0.5;
  std::optional<std::string> queries_path;
  std::size_t sample_cuts = 1000;
  std::uint64_t projection_budget = 200;
  bool enforce_accuracy_window = false;
  // When set, trial 0's answer transcript is exported as JSON lines.
  std::optional<std::string> transcript_path;
  bool transcript_internal = false;
  // When set, trial 0's synthetic output (the projected weighted graph, or
  // the dense release hypothesis) is written in the weighted-graph format.
  std::optional<std::string> synthetic_path;

  DataHistogram load_database() const;
  std::unique_ptr<IdcAlgorithm> make_idc(const DataHistogram& db,
                                         double alpha_value) const;
};

std::vector<ResultRow> run_release_online(const ExperimentConfig& config);
std::vector<ResultRow> run_release_offline(const ExperimentConfig& config);
std::vector<ResultRow> run_rr_synth(const ExperimentConfig& config);

struct BenchConfig {
  std::vector<std::size_t> vertex_counts;
  std::vector<double> densities;
  std::vector<double> epsilons;
  double delta = 1e-6;
  double beta = 0.1;
  std::uint64_t k = 1000;
  double sigma_constant = 1000.0;
  double t_constant = 4.0;
  std::uint64_t seed = 1;
  std::size_t sample_cuts = 1000;
  bool zero_noise = false;
};

// Sweeps (V, p, eps); per point emits one row per mechanism (online-fk,
// online-mw, rr) with the empirical error columns next to the fixed-point
// error bounds for FK and MW and the randomized-response bound.
std::vector<ResultRow> run_bench(const BenchConfig& config);

// Max and mean public-scale error of an evaluable structure over sampled
// cuts, plus the exact brute-force max when V <= 14 (nullopt otherwise).
struct CutErrorStats {
  double sampled_max = 0.0;
  double sampled_mean = 0.0;
  std::optional<double> exact_max;
};
CutErrorStats measure_cut_errors(
    const DataHistogram& truth,
    const std::function<double(const LinearQuery&)>& canonical_eval,
    const std::optional<std::vector<double>>& dense_hypothesis,
    std::size_t sample_count, std::uint64_t seed);

}  // namespace idc

#endif  // IDC_EXPERIMENTS_HPP_
