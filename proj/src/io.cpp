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

#include "idc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "idc/errors.hpp"

namespace idc {
namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path);
  return out;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DataHistogram read_graph(std::istream& in) {
  std::size_t v = 0;
  if (!(in >> v)) fail(ErrorKind::kIo, "graph file: missing vertex count");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t i = 0, j = 0;
  while (in >> i >> j) {
    if (i >= j) fail(ErrorKind::kValidation, "graph file: edges must have i < j");
    edges.emplace_back(i, j);
  }
  return DataHistogram::from_edges(v, edges);
}

DataHistogram load_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(const DataHistogram& graph_db, std::ostream& out) {
  const Universe& u = graph_db.universe();
  out << u.vertex_count() << "\n";
  for (std::size_t e = 0; e < u.size(); ++e) {
    if (graph_db.weight(e) != 0.0) {
      const auto [i, j] = u.edge_endpoints(e);
      out << i << " " << j << "\n";
    }
  }
}

void save_graph(const DataHistogram& graph_db, const std::string& path) {
  auto out = open_out(path);
  write_graph(graph_db, out);
}

std::vector<LinearQuery> read_query_stream(std::istream& in,
                                           const Universe& universe) {
  std::vector<LinearQuery> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json q;
    try {
      q = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::kIo, "query stream line " + std::to_string(line_no) +
                               ": " + e.what());
    }
    const std::string type = q.value("type", "");
    if (type == "cut") {
      queries.push_back(compile_cut_query(q.at("S").get<std::vector<std::size_t>>(),
                                          q.at("T").get<std::vector<std::size_t>>(),
                                          universe));
    } else if (type == "rank1") {
      queries.push_back(compile_rank1_query(q.at("u").get<std::vector<double>>(),
                                            q.at("v").get<std::vector<double>>(),
                                            universe));
    } else {
      fail(ErrorKind::kValidation, "query stream line " + std::to_string(line_no) +
                                       ": unknown type '" + type + "'");
    }
  }
  return queries;
}

std::vector<LinearQuery> load_query_stream(const std::string& path,
                                           const Universe& universe) {
  auto in = open_in(path);
  return read_query_stream(in, universe);
}

void write_query_stream(const std::vector<LinearQuery>& queries,
                        std::ostream& out) {
  for (const LinearQuery& q : queries) {
    json j;
    if (const auto* cut = std::get_if<CutQuery>(&q.tag())) {
      j["type"] = "cut";
      j["S"] = cut->s;
      j["T"] = cut->t;
    } else if (const auto* r1 = std::get_if<Rank1Query>(&q.tag())) {
      j["type"] = "rank1";
      j["u"] = r1->u;
      j["v"] = r1->v;
    } else {
      fail(ErrorKind::kValidation, "only cut/rank1 queries serialize to streams");
    }
    out << j.dump() << "\n";
  }
}

void save_query_stream(const std::vector<LinearQuery>& queries,
                       const std::string& path) {
  auto out = open_out(path);
  write_query_stream(queries, out);
}

void save_weighted_graph(std::size_t vertex_count,
                         std::span<const double> pair_weights,
                         const std::string& path) {
  const Universe u = Universe::graph(vertex_count);
  if (pair_weights.size() != u.size()) {
    fail(ErrorKind::kDimension, "pair vector length does not match vertex count");
  }
  auto out = open_out(path);
  out << vertex_count << "\n";
  for (std::size_t e = 0; e < pair_weights.size(); ++e) {
    const auto [i, j] = u.edge_endpoints(e);
    out << i << " " << j << " " << g17(pair_weights[e]) << "\n";
  }
}

std::pair<std::size_t, std::vector<double>> load_weighted_graph(
    const std::string& path) {
  auto in = open_in(path);
  std::size_t v = 0;
  if (!(in >> v)) fail(ErrorKind::kIo, "weighted graph file: missing vertex count");
  const Universe u = Universe::graph(v);
  std::vector<double> w(u.size(), 0.0);
  std::size_t i = 0, j = 0;
  double value = 0.0;
  while (in >> i >> j >> value) {
    w[u.edge_index(i, j)] = value;
  }
  return {v, std::move(w)};
}

std::string answer_record_to_json(const AnswerRecord& record,
                                  bool include_internal) {
  json j;
  switch (record.kind) {
    case AnswerRecord::Kind::kLazy:
      j["kind"] = "lazy";
      break;
    case AnswerRecord::Kind::kUpdate:
      j["kind"] = "update";
      break;
    case AnswerRecord::Kind::kExhausted:
      j["kind"] = "exhausted";
      break;
  }
  if (const auto* cut = std::get_if<CutQuery>(&record.query.tag())) {
    j["query"] = {{"type", "cut"}, {"S", cut->s}, {"T", cut->t}};
  } else if (const auto* r1 = std::get_if<Rank1Query>(&record.query.tag())) {
    j["query"] = {{"type", "rank1"}, {"u", r1->u}, {"v", r1->v}};
  } else {
    j["query"] = {{"type", "generic"},
                  {"coefficients", std::vector<double>(
                                       record.query.coefficients().begin(),
                                       record.query.coefficients().end())},
                  {"rescale", record.query.rescale()}};
  }
  if (record.kind != AnswerRecord::Kind::kExhausted) {
    j["answer"] = record.answer;
  }
  if (include_internal) {
    j["canonical_answer"] = record.canonical_answer;
    j["true_answer"] = record.true_answer;
    j["noise_draw"] = record.noise_draw;
    j["noisy_answer"] = record.noisy_answer;
    j["fake_answer"] = record.fake_answer;
  }
  return j.dump();
}

void save_transcript_jsonl(const std::vector<AnswerRecord>& transcript,
                           const std::string& path, bool include_internal) {
  auto out = open_out(path);
  for (const AnswerRecord& r : transcript) {
    out << answer_record_to_json(r, include_internal) << "\n";
  }
}

}  // namespace idc
