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

#ifndef STREAMCLIP_CONSTRAINTS_HPP
#define STREAMCLIP_CONSTRAINTS_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "streamclip/algorithms.hpp"

namespace streamclip {

struct KnapsackSpec {
  double budget = 1.0;  // bound on the total element cost of the solution
};

// Independence system over element ids. The partition kind caps the number
// of selected elements per category; the table kind stores the independent
// sets explicitly (test scale only) and is validated for downward closure
// at construction.
class MatroidSpec {
 public:
  enum class Kind { kPartition, kTable };

  static MatroidSpec partition(
      std::unordered_map<std::string, std::string> categories,
      std::unordered_map<std::string, int> capacities);
  static MatroidSpec table(std::vector<std::vector<std::string>> independent);
  // {"capacities": {"A": 1, ...}, "categories": {"elementId": "A", ...}}
  static MatroidSpec from_json_text(const std::string& text);

  Kind kind() const { return kind_; }
  bool knows(const std::string& id) const;
  // Throws ConfigError for ids the spec does not know.
  bool is_independent(std::span<const std::string> ids) const;
  // Partition: sum of capacities. Table: largest stored set size.
  int rank_upper_bound() const;
  const std::string& category_of(const std::string& id) const;

 private:
  explicit MatroidSpec(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::unordered_map<std::string, std::string> categories_;
  std::unordered_map<std::string, int> capacities_;
  std::set<std::vector<std::string>> independent_;  // canonical sorted ids
  std::set<std::string> ground_;                    // table kind only
};

struct KnapsackClipperParams {
  double tau_minus = 0.0;
  double tau_plus = 0.0;
  bool test_mode = false;
};

// Two-threshold single pass over gain-to-cost ratios: accept at
// f(v|S)/c(v) >= tau_plus while the budget allows, buffer at ratio >
// tau_minus, otherwise reject. The final stage adds buffered elements by
// ratio argmax, skipping anything that would break the budget; the output
// is the better of that solution and the best fitting buffered singleton.
RunResult knapsack_clipper(std::span<const Element> stream,
                           const Objective& objective, const KnapsackSpec& spec,
                           const KnapsackClipperParams& params);

struct MatroidClipperParams {
  // Cap on |S|; when absent, the spec's rank upper bound is used.
  std::optional<int> k;
  double tau_minus = 0.0;
  double tau_plus = 0.0;
  bool test_mode = false;
};

// Naive clipper with acceptance additionally requiring S + v independent;
// independence failures fall through to the buffer test, and the final
// greedy stage considers feasible buffered elements only.
RunResult matroid_clipper(std::span<const Element> stream,
                          const Objective& objective, const MatroidSpec& spec,
                          const MatroidClipperParams& params);

}  // namespace streamclip

#endif  // STREAMCLIP_CONSTRAINTS_HPP
