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

#ifndef STREAMCLIP_RUN_RESULT_HPP
#define STREAMCLIP_RUN_RESULT_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace streamclip {

// One rejected element together with the lower threshold in force when it
// was turned away (recorded in test mode only).
struct RejectedRecord {
  std::string id;
  double tau_minus = 0.0;
  double gain = 0.0;
  std::int64_t arrival = 0;
};

struct Telemetry {
  std::int64_t evaluations = 0;  // marginal-gain / objective evaluations
  std::int64_t swaps = 0;
  std::int64_t cleanings = 0;
  std::int64_t rejections = 0;
  std::int64_t forced_evictions = 0;  // buffer evictions above tau_minus
  std::int64_t peak_stored_elements = 0;
  std::int64_t memory_units = 0;
  int stream_solution_size = 0;  // |S_n|, before the final greedy stage
  int final_buffer_size = 0;     // |B_n|
  double tau_minus_final = 0.0;
  double tau_plus_final = 0.0;
  double wall_ms = 0.0;
  // Invariant audit trail, maintained by the clipper state machines.
  int max_buffer_after_element = 0;
  double min_threshold_slack = std::numeric_limits<double>::infinity();
  bool thresholds_monotone = true;
};

struct RunResult {
  std::string algorithm;
  int k = 0;
  std::vector<std::string> solution_ids;  // final S, insertion order
  double objective = 0.0;
  std::vector<std::string> stream_solution_ids;  // S_n
  std::vector<std::string> final_buffer_ids;     // B_n, arrival order
  Telemetry telemetry;
  double fhat_initial = 0.0;
  double fhat_final = 0.0;
  std::vector<RejectedRecord> rejected_log;  // test mode only

  // Knapsack runs only: the first greedy-stage extension that would break
  // the budget, and alpha = budget - cost(S_plus \ S_n).
  std::vector<std::string> s_plus_ids;
  std::optional<double> knapsack_alpha;
  double solution_cost = 0.0;
};

}  // namespace streamclip

#endif  // STREAMCLIP_RUN_RESULT_HPP
