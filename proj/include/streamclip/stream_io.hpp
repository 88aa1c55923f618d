// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STREAMCLIP_STREAM_IO_HPP
#define STREAMCLIP_STREAM_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "streamclip/bounds.hpp"
#include "streamclip/element.hpp"
#include "streamclip/run_result.hpp"

namespace streamclip {

// Identifier recorded in outputs for the order/stream generators.
inline constexpr const char* kRngId = "mt19937_64";

// Reads the JSON-Lines element format, one object per line:
// {"id": str, "features": {str: number >= 0}, "cost": number > 0,
//  "category": str}. cost and category are optional. Throws IngestError
// naming the offending line.
std::vector<Element> ingest(const std::string& path);
std::vector<Element> parse_jsonl(std::istream& in, const std::string& name);

std::string element_to_jsonl(const Element& e);
void write_jsonl(std::ostream& out, const std::vector<Element>& elements);

struct GenSpec {
  int n = 1;
  int n_features = 1;
  double density = 1.0;   // inclusion probability per (element, feature)
  double weight_scale = 1.0;
  std::uint64_t seed = 0;
  double cost_min = 1.0;
  double cost_max = 1.0;
  int n_categories = 0;  // > 0 assigns categories round-robin
};

// Seeded synthetic sparse elements; byte-identical across runs for a fixed
// spec. Throws ConfigError on invalid parameters.
std::vector<Element> gen_stream(const GenSpec& spec);

// Fisher-Yates permutation of 0..n-1 driven by mt19937_64(seed).
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

std::vector<Element> apply_order(const std::vector<Element>& elements,
                                 std::uint64_t seed);

// f / f_greedy, with 0/0 defined as 1. Throws ConfigError when f_greedy is
// zero but f is positive.
double relative_utility(double f, double f_greedy);

nlohmann::json run_result_to_json(const RunResult& result,
                                  bool include_timing = true);
nlohmann::json bound_report_to_json(const BoundReport& report);

// Shortest-stable decimal formatting used for CSV cells ("%.9g").
std::string format_number(double x);

}  // namespace streamclip

#endif  // STREAMCLIP_STREAM_IO_HPP
