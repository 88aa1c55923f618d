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

#ifndef STREAMCLIP_SWEEP_HPP
#define STREAMCLIP_SWEEP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streamclip/constraints.hpp"
#include "streamclip/oracle.hpp"
#include "streamclip/stream_io.hpp"

namespace streamclip {

// Everything a single algorithm run needs; the CLI and the sweep runner
// fill this from flags. Unused fields are ignored by the dispatched
// algorithm.
struct AlgoConfig {
  std::string algo = "stream-clipper";
  int k = 1;
  bool k_set = true;  // CLI clears this when --k was not given
  int buffer = 64;
  std::optional<double> fhat;
  std::optional<double> tau_minus;
  std::optional<double> tau_plus;
  std::optional<double> delta_tau;
  double epsilon = 0.1;
  double swap_c = 1.0;
  std::optional<std::int64_t> declared_n;
  std::optional<double> budget;
  std::shared_ptr<const MatroidSpec> matroid;
  std::optional<double> fixed_estimate;
  int max_instances = 256;
  bool test_mode = false;
};

// Runs one algorithm by name. Throws ConfigError for unknown names or
// missing required flags (naive/knapsack/matroid clippers need both
// thresholds, minibatch needs --n, knapsack needs --budget, matroid needs
// a spec).
RunResult dispatch_run(std::span<const Element> stream,
                       const Objective& objective, const AlgoConfig& config);

struct SweepSpec {
  std::string variable;  // "n" | "buffer_b" | "fhat" | "order-seed"
  std::vector<double> values;
  int repeats = 1;
  std::vector<std::string> algorithms;
  AlgoConfig base;
  std::uint64_t seed = 0;  // base order seed
  int jobs = 1;
  bool include_timing = true;
};

struct SweepRow {
  std::string algorithm;
  std::string variable;
  double value = 0.0;
  int repeat = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double relative_utility = 0.0;
  std::int64_t evaluations = 0;
  std::int64_t memory_units = 0;
  double wall_ms = 0.0;
};

// Runs the (algorithm x value x repeat) cross-product. Every
// (value, repeat) cell group shares one permuted stream and one
// lazy-greedy baseline for the relative utilities. Cells are independent
// and run on up to spec.jobs threads; rows come back in spec order
// regardless of scheduling.
std::vector<SweepRow> run_sweep(const std::vector<Element>& base,
                                const Objective& objective,
                                const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace streamclip

#endif  // STREAMCLIP_SWEEP_HPP
