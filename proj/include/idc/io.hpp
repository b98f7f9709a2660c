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

#ifndef IDC_IO_HPP_
#define IDC_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "idc/core.hpp"
#include "idc/online.hpp"
#include "idc/synth.hpp"

namespace idc {

// Graph files: first line "|V|", then one "i j" edge per line (0-based,
// i < j).
DataHistogram load_graph(const std::string& path);
DataHistogram read_graph(std::istream& in);
void save_graph(const DataHistogram& graph_db, const std::string& path);
void write_graph(const DataHistogram& graph_db, std::ostream& out);

// Query streams: JSON lines, one query per line:
//   {"type":"cut","S":[...],"T":[...]}
//   {"type":"rank1","u":[...],"v":[...]}
std::vector<LinearQuery> load_query_stream(const std::string& path,
                                           const Universe& universe);
std::vector<LinearQuery> read_query_stream(std::istream& in,
                                           const Universe& universe);
void save_query_stream(const std::vector<LinearQuery>& queries,
                       const std::string& path);
void write_query_stream(const std::vector<LinearQuery>& queries,
                        std::ostream& out);

// Weighted pair-vector files: "|V|" header then "i j w" lines, w printed
// with 17 significant digits so round-trips are bit-exact.
void save_weighted_graph(std::size_t vertex_count,
                         std::span<const double> pair_weights,
                         const std::string& path);
std::pair<std::size_t, std::vector<double>> load_weighted_graph(
    const std::string& path);

// Transcript export: one AnswerRecord per line; instrumentation fields only
// when include_internal is set.
std::string answer_record_to_json(const AnswerRecord& record,
                                  bool include_internal);
void save_transcript_jsonl(const std::vector<AnswerRecord>& transcript,
                           const std::string& path, bool include_internal);

}  // namespace idc

#endif  // IDC_IO_HPP_
