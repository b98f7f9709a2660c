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

#include "idc/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "idc/errors.hpp"
#include "idc/io.hpp"
#include "idc/synth.hpp"

namespace idc {
namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

DataHistogram gen_graph(std::size_t vertex_count, double p, std::uint64_t seed) {
  if (vertex_count < 2) fail(ErrorKind::kConfig, "gen_graph needs V >= 2");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::kConfig, "p must lie in [0, 1]");
  const Universe u = Universe::graph(vertex_count);
  NoiseSource rng(seed);
  std::vector<double> w(u.size(), 0.0);
  for (double& x : w) x = rng.uniform01() < p ? 1.0 : 0.0;
  return DataHistogram(u, std::move(w));
}

std::vector<LinearQuery> gen_cut_stream(std::size_t vertex_count,
                                        std::uint64_t k, std::uint64_t seed,
                                        CutStreamMode mode,
                                        const DataHistogram* db) {
  if (k == 0) fail(ErrorKind::kConfig, "need at least one query");
  const Universe u = Universe::graph(vertex_count);
  std::vector<LinearQuery> out;
  out.reserve(k);
  if (mode == CutStreamMode::kAdversarialMaxGap) {
    if (db == nullptr) {
      fail(ErrorKind::kConfig, "adversarial stream needs oracle access to the database");
    }
    const std::vector<double> zeros(u.size(), 0.0);
    const LinearQuery q = max_gap_cut_query(*db, zeros);
    for (std::uint64_t i = 0; i < k; ++i) out.push_back(q);
    return out;
  }
  NoiseSource rng(seed);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::vector<std::size_t> s, t;
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (rng.uniform01() < 0.5) s.push_back(v);
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
      if (rng.uniform01() < 0.5) t.push_back(v);
    }
    out.push_back(compile_cut_query(s, t, u));
  }
  return out;
}

LinearQuery max_gap_cut_query(const DataHistogram& db,
                              std::span<const double> hypothesis_pairs) {
  const Universe& u = db.universe();
  if (hypothesis_pairs.size() != u.size()) {
    fail(ErrorKind::kDimension, "hypothesis pair vector has wrong length");
  }
  std::vector<double> diff(u.size());
  for (std::size_t e = 0; e < diff.size(); ++e) {
    diff[e] = db.weight(e) - hypothesis_pairs[e];
  }
  const CutNormResult best =
      cut_norm_bruteforce(symmetric_from_pairs(diff, u.vertex_count()));
  return compile_cut_query(best.row_set, best.col_set, u);
}

unsigned thread_cap() {
  if (const char* env = std::getenv("IDC_RELEASE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void run_trials(std::uint64_t trials,
                const std::function<void(std::uint64_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(thread_cap(), trials));
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::uint64_t t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

const std::vector<std::string> kResultColumns = {
    "schema_version", "subcommand",   "mechanism",      "idc",
    "trial",          "V",            "p",              "eps",
    "delta",          "alpha",        "beta",           "k",
    "seed",           "n",            "n2",             "X",
    "sigma",          "T",            "updates",        "exhausted",
    "stream_max_err", "stream_mean_err", "sampled_max_err", "exact_max_err",
    "eps_prime",      "delta_report", "rr_bound",       "alpha_fk_bound",
    "alpha_mw_bound", "residual_clip", "residual_final", "err_rounded",
    "runtime_ms"};

void ResultRow::set(const std::string& column, const std::string& value) {
  cells[column] = value;
}
void ResultRow::set(const std::string& column, double value) {
  cells[column] = g17(value);
}
void ResultRow::set(const std::string& column, std::uint64_t value) {
  cells[column] = std::to_string(value);
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  for (std::size_t c = 0; c < kResultColumns.size(); ++c) {
    out << (c ? "," : "") << kResultColumns[c];
  }
  out << "\n";
  for (const ResultRow& row : rows) {
    for (std::size_t c = 0; c < kResultColumns.size(); ++c) {
      if (c) out << ",";
      const auto it = row.cells.find(kResultColumns[c]);
      if (it != row.cells.end()) out << it->second;
    }
    out << "\n";
  }
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& out) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRow& row : rows) {
    nlohmann::json obj;
    for (const auto& [key, value] : row.cells) {
      char* end = nullptr;
      const long long integer = std::strtoll(value.c_str(), &end, 10);
      if (end != value.c_str() && *end == '\0') {
        obj[key] = integer;
        continue;
      }
      const double num = std::strtod(value.c_str(), &end);
      if (end != value.c_str() && *end == '\0') {
        obj[key] = num;
      } else {
        obj[key] = value;
      }
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << "\n";
}

void save_rows(const std::vector<ResultRow>& rows, const std::string& path,
               const std::string& format) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path);
  if (format == "csv") {
    write_csv(rows, out);
  } else if (format == "json") {
    write_json(rows, out);
  } else {
    fail(ErrorKind::kConfig, "unknown format '" + format + "'");
  }
}

DataHistogram ExperimentConfig::load_database() const {
  if (graph_path.has_value()) return load_graph(*graph_path);
  if (gen_v < 2) {
    fail(ErrorKind::kConfig, "provide --graph FILE or --gen-v/--gen-p");
  }
  return gen_graph(gen_v, gen_p, seed);
}

std::unique_ptr<IdcAlgorithm> ExperimentConfig::make_idc(
    const DataHistogram& db, double alpha_value) const {
  const std::size_t x = db.universe().size();
  if (idc_kind == "fk") return std::make_unique<FkIdc>(alpha_value, db.n2(), x);
  if (idc_kind == "mw") return std::make_unique<MwIdc>(alpha_value, db.n(), x);
  if (idc_kind == "mm") {
    return std::make_unique<MmIdc>(alpha_value, db.n(), k, x);
  }
  fail(ErrorKind::kConfig, "unknown IDC '" + idc_kind + "'");
}

CutErrorStats measure_cut_errors(
    const DataHistogram& truth,
    const std::function<double(const LinearQuery&)>& canonical_eval,
    const std::optional<std::vector<double>>& dense_hypothesis,
    std::size_t sample_count, std::uint64_t seed) {
  CutErrorStats stats;
  const Universe& u = truth.universe();
  const std::vector<LinearQuery> sample = gen_cut_stream(
      u.vertex_count(), sample_count, seed, CutStreamMode::kUniformRandomSets);
  double total = 0.0;
  for (const LinearQuery& q : sample) {
    const double err =
        q.rescale() * std::abs(canonical_eval(q) - q.canonical(truth.weights()));
    stats.sampled_max = std::max(stats.sampled_max, err);
    total += err;
  }
  stats.sampled_mean = total / static_cast<double>(sample.size());
  if (dense_hypothesis.has_value() && u.vertex_count() <= 14) {
    std::vector<double> diff(u.size());
    for (std::size_t e = 0; e < diff.size(); ++e) {
      diff[e] = truth.weight(e) - (*dense_hypothesis)[e];
    }
    stats.exact_max =
        cut_norm_bruteforce(symmetric_from_pairs(diff, u.vertex_count())).value;
  }
  return stats;
}

namespace {

void fill_common(ResultRow& row, const ExperimentConfig& config,
                 const DataHistogram& db, const std::string& subcommand) {
  row.set("schema_version", std::uint64_t{1});
  row.set("subcommand", subcommand);
  row.set("mechanism", config.mechanism);
  row.set("V", std::uint64_t{db.universe().vertex_count()});
  if (!config.graph_path.has_value()) row.set("p", config.gen_p);
  row.set("eps", config.privacy.epsilon);
  row.set("delta", config.privacy.delta);
  row.set("beta", config.beta);
  row.set("k", config.k);
  row.set("seed", config.seed);
  row.set("n", db.n());
  row.set("n2", db.n2());
  row.set("X", std::uint64_t{db.universe().size()});
}

double resolve_alpha(const ExperimentConfig& config, const DataHistogram& db) {
  if (config.alpha.has_value()) return *config.alpha;
  // Fixed point of alpha = (3/4) T(alpha); the constant generalizes the
  // canonical 3000 to the configured sigma/T constants.
  const double constant = 0.75 * config.t_constant * config.sigma_constant;
  const auto proto = config.make_idc(db, 1.0);
  return solve_alpha(*proto, config.privacy, config.k, config.beta, constant);
}

NoiseSource trial_noise(const ExperimentConfig& config, std::uint64_t trial) {
  NoiseSource base(config.seed,
                   config.zero_noise ? NoiseSource::Mode::kZero
                                     : NoiseSource::Mode::kLive);
  return base.split(2 * trial);
}

std::uint64_t trial_stream_seed(const ExperimentConfig& config,
                                std::uint64_t trial) {
  return NoiseSource(config.seed).split(2 * trial + 1).seed();
}

}  // namespace

std::vector<ResultRow> run_release_online(const ExperimentConfig& config) {
  const DataHistogram db = config.load_database();
  const double alpha = resolve_alpha(config, db);
  std::optional<std::vector<LinearQuery>> fixed_stream;
  if (config.queries_path.has_value()) {
    fixed_stream = load_query_stream(*config.queries_path, db.universe());
    if (fixed_stream->size() > config.k) {
      fail(ErrorKind::kConfig, "query file holds more than the declared k queries");
    }
  }

  std::vector<ResultRow> rows(config.trials);
  run_trials(config.trials, [&](std::uint64_t trial) {
    const auto start = std::chrono::steady_clock::now();
    OnlineConfig online_config;
    online_config.privacy = config.privacy;
    online_config.alpha = alpha;
    online_config.beta = config.beta;
    online_config.k = config.k;
    online_config.sigma_constant = config.sigma_constant;
    online_config.t_constant = config.t_constant;
    online_config.enforce_accuracy_window = config.enforce_accuracy_window;
    const auto proto = config.make_idc(db, alpha);
    OnlineMechanism mechanism(db, *proto, online_config,
                              trial_noise(config, trial));
    const std::vector<LinearQuery> stream =
        fixed_stream.has_value()
            ? *fixed_stream
            : gen_cut_stream(db.universe().vertex_count(), config.k,
                             trial_stream_seed(config, trial),
                             CutStreamMode::kUniformRandomSets);

    double max_err = 0.0, total_err = 0.0;
    std::uint64_t answered = 0;
    bool exhausted = false;
    for (const LinearQuery& q : stream) {
      try {
        const AnswerRecord record = mechanism.answer(q);
        const double err = std::abs(record.canonical_answer - record.true_answer);
        max_err = std::max(max_err, err);
        total_err += err;
        ++answered;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kBudgetExhausted) throw;
        exhausted = true;
        break;
      }
    }

    ResultRow row;
    fill_common(row, config, db, "release-online");
    row.set("idc", config.idc_kind);
    row.set("trial", trial);
    row.set("alpha", alpha);
    row.set("sigma", mechanism.sigma());
    row.set("T", mechanism.threshold());
    row.set("updates", mechanism.update_count());
    row.set("exhausted", std::uint64_t{exhausted ? 1u : 0u});
    row.set("stream_max_err", max_err);
    if (answered > 0) {
      row.set("stream_mean_err", total_err / static_cast<double>(answered));
    }
    const Hypothesis& h = mechanism.hypothesis();
    const IdcAlgorithm& rule = mechanism.idc();
    const CutErrorStats stats = measure_cut_errors(
        db, [&](const LinearQuery& q) { return rule.eval(h, q); },
        hypothesis_dense_vector(h), config.sample_cuts,
        trial_stream_seed(config, trial) ^ 0xC5u);
    row.set("sampled_max_err", stats.sampled_max);
    if (stats.exact_max.has_value()) row.set("exact_max_err", *stats.exact_max);
    row.set("eps_prime", mechanism.privacy_report().epsilon);
    row.set("delta_report", mechanism.privacy_report().delta);
    row.set("runtime_ms", elapsed_ms(start));
    if (trial == 0 && config.transcript_path.has_value()) {
      save_transcript_jsonl(mechanism.transcript(), *config.transcript_path,
                            config.transcript_internal);
    }
    rows[trial] = std::move(row);
  });
  return rows;
}

std::vector<ResultRow> run_release_offline(const ExperimentConfig& config) {
  const DataHistogram db = config.load_database();
  if (!config.alpha.has_value()) {
    fail(ErrorKind::kConfig, "release-offline needs an explicit --alpha");
  }
  const double alpha = *config.alpha;

  std::vector<ResultRow> rows(config.trials);
  run_trials(config.trials, [&](std::uint64_t trial) {
    const auto start = std::chrono::steady_clock::now();
    const auto proto = config.make_idc(db, alpha);
    std::unique_ptr<Distinguisher> dist;
    if (config.distinguisher == "exp") {
      dist = std::make_unique<ExpMechDistinguisher>(gen_cut_stream(
          db.universe().vertex_count(), config.k,
          trial_stream_seed(config, trial), CutStreamMode::kUniformRandomSets));
    } else if (config.distinguisher == "svd") {
      dist = std::make_unique<SvdRank1Distinguisher>();
    } else {
      fail(ErrorKind::kConfig, "unknown distinguisher '" + config.distinguisher + "'");
    }

    IcConfig ic_config{config.privacy, alpha, std::nullopt};
    const IcResult result =
        ic_release(db, *proto, *dist, ic_config, trial_noise(config, trial));

    ResultRow row;
    fill_common(row, config, db, "release-offline");
    row.set("idc", config.idc_kind);
    row.set("trial", trial);
    row.set("alpha", alpha);
    row.set("updates", std::uint64_t{result.update_rounds.size()});
    row.set("exhausted", std::uint64_t{result.early_exit ? 0u : 1u});
    const Hypothesis& h = result.synthetic;
    if (trial == 0 && config.synthetic_path.has_value()) {
      const auto dense = hypothesis_dense_vector(h);
      if (!dense.has_value()) {
        fail(ErrorKind::kConfig,
             "median hypotheses have no dense form to serialize");
      }
      save_weighted_graph(db.universe().vertex_count(), *dense,
                          *config.synthetic_path);
    }
    const CutErrorStats stats = measure_cut_errors(
        db, [&](const LinearQuery& q) { return proto->eval(h, q); },
        hypothesis_dense_vector(h), config.sample_cuts,
        trial_stream_seed(config, trial) ^ 0xC5u);
    row.set("sampled_max_err", stats.sampled_max);
    row.set("stream_mean_err", stats.sampled_mean);
    if (stats.exact_max.has_value()) row.set("exact_max_err", *stats.exact_max);
    if (result.privacy.has_value()) {
      row.set("eps_prime", result.privacy->epsilon);
      row.set("delta_report", result.privacy->delta);
    }
    row.set("runtime_ms", elapsed_ms(start));
    rows[trial] = std::move(row);
  });
  return rows;
}

std::vector<ResultRow> run_rr_synth(const ExperimentConfig& config) {
  const DataHistogram db = config.load_database();
  const std::size_t v = db.universe().vertex_count();

  // Exact separation at desk scale; the spectral oracle carries larger
  // graphs, where enumeration is out of reach.
  const SeparationOracle oracle =
      v <= 20 ? bruteforce_oracle(/*normalized=*/false)
              : spectral_oracle(/*normalized=*/true);

  std::vector<ResultRow> rows(config.trials);
  run_trials(config.trials, [&](std::uint64_t trial) {
    const auto start = std::chrono::steady_clock::now();
    NoiseSource noise = trial_noise(config, trial);
    const NoisyGraph z = randomized_response(db, config.privacy.epsilon, noise);
    const WeightedSyntheticGraph projected =
        project_to_synthetic(z, oracle, config.projection_budget);
    const DataHistogram rounded = round_to_unweighted(projected, noise);
    if (trial == 0 && config.synthetic_path.has_value()) {
      save_weighted_graph(v, projected.weights, *config.synthetic_path);
    }

    ResultRow row;
    fill_common(row, config, db, "rr-synth");
    row.set("trial", trial);
    // Randomized response spends (eps, 0); projection and rounding are
    // post-processing.
    row.set("eps_prime", config.privacy.epsilon);
    row.set("delta_report", 0.0);
    row.set("rr_bound",
            rr_error_bound(db.universe().size(),
                           static_cast<double>(config.sample_cuts), config.beta,
                           config.privacy.epsilon));

    const CutErrorStats stats = measure_cut_errors(
        db, [&](const LinearQuery& q) { return q.canonical(projected.weights); },
        projected.weights, config.sample_cuts,
        trial_stream_seed(config, trial) ^ 0xC5u);
    row.set("sampled_max_err", stats.sampled_max);
    row.set("stream_mean_err", stats.sampled_mean);
    if (stats.exact_max.has_value()) row.set("exact_max_err", *stats.exact_max);

    if (v <= 20) {
      // Residuals are violations against the noisy target z (what the
      // projection controls); err_rounded is the true error of the rounded
      // output.
      std::vector<double> clip_diff(z.weights.size());
      std::vector<double> final_diff(z.weights.size());
      std::vector<double> round_diff(z.weights.size());
      for (std::size_t e = 0; e < z.weights.size(); ++e) {
        const double clipped = std::clamp(z.weights[e], 0.0, 1.0);
        clip_diff[e] = clipped - z.weights[e];
        final_diff[e] = projected.weights[e] - z.weights[e];
        round_diff[e] = db.weight(e) - rounded.weight(e);
      }
      row.set("residual_clip",
              cut_norm_bruteforce(symmetric_from_pairs(clip_diff, v)).value);
      row.set("residual_final",
              cut_norm_bruteforce(symmetric_from_pairs(final_diff, v)).value);
      row.set("err_rounded",
              cut_norm_bruteforce(symmetric_from_pairs(round_diff, v)).value);
    }
    row.set("runtime_ms", elapsed_ms(start));
    rows[trial] = std::move(row);
  });
  return rows;
}

std::vector<ResultRow> run_bench(const BenchConfig& config) {
  std::vector<ResultRow> rows;
  std::uint64_t point = 0;
  for (const std::size_t v : config.vertex_counts) {
    for (const double p : config.densities) {
      for (const double eps : config.epsilons) {
        const std::uint64_t point_seed =
            NoiseSource(config.seed).split(point).seed();
        ++point;
        const DataHistogram db = gen_graph(v, p, point_seed);
        const PrivacyParams privacy{eps, config.delta};

        // Fixed-point error bounds (the per-IDC accuracy shapes).
        std::optional<double> alpha_fk, alpha_mw;
        const double solve_constant =
            0.75 * config.t_constant * config.sigma_constant;
        if (db.n2() > 0.0) {
          alpha_fk = solve_alpha(FkIdc(1.0, db.n2(), db.universe().size()),
                                 privacy, config.k, config.beta, solve_constant);
          alpha_mw = solve_alpha(MwIdc(1.0, db.n(), db.universe().size()),
                                 privacy, config.k, config.beta, solve_constant);
        }
        const double rr_bound =
            rr_error_bound(db.universe().size(),
                           std::exp2(2.0 * static_cast<double>(v)), config.beta, eps);

        for (const std::string mechanism : {"online-fk", "online-mw", "rr"}) {
          ExperimentConfig run;
          run.mechanism = mechanism == "rr" ? "rr" : "online";
          run.idc_kind = mechanism == "online-mw" ? "mw" : "fk";
          run.privacy = privacy;
          run.beta = config.beta;
          run.k = config.k;
          run.sigma_constant = config.sigma_constant;
          run.t_constant = config.t_constant;
          run.zero_noise = config.zero_noise;
          run.seed = point_seed;
          run.trials = 1;
          run.gen_v = v;
          run.gen_p = p;
          run.sample_cuts = config.sample_cuts;

          std::vector<ResultRow> sub;
          if (mechanism == "rr") {
            sub = run_rr_synth(run);
          } else if (db.n2() > 0.0) {
            sub = run_release_online(run);
          } else {
            continue;  // empty graph: no online mechanism to run
          }
          ResultRow row = std::move(sub.front());
          row.set("subcommand", std::string("bench"));
          row.set("mechanism", mechanism);
          if (alpha_fk.has_value()) row.set("alpha_fk_bound", *alpha_fk);
          if (alpha_mw.has_value()) row.set("alpha_mw_bound", *alpha_mw);
          row.set("rr_bound", rr_bound);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace idc
