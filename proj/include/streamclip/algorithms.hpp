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

#ifndef STREAMCLIP_ALGORITHMS_HPP
#define STREAMCLIP_ALGORITHMS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>

#include "streamclip/objective.hpp"
#include "streamclip/run_result.hpp"

namespace streamclip {

// Marginal gains at or below this are treated as zero: such elements can
// never help the solution or the buffer.
inline constexpr double kZeroGain = 1e-12;

struct Thresholds {
  double tau_minus = 0.0;
  double tau_plus = 0.0;
  double delta_tau = 0.0;
};

struct BufferedElement {
  Element element;
  std::int64_t arrival = 0;
};

// Shared state machine for the two-threshold clipper family. Algorithms
// drive it element by element; the final greedy stage tops the solution up
// from the buffer. Single run, single thread.
struct ClipperState {
  explicit ClipperState(const Objective& objective)
      : solution(objective) {}

  SolutionState solution;
  std::vector<BufferedElement> buffer;  // arrival order
  Thresholds thresholds;
  int k = 1;
  int buffer_capacity = std::numeric_limits<int>::max();
  double fhat = 0.0;
  Telemetry telemetry;
  std::vector<RejectedRecord> rejected_log;
  bool test_mode = false;
  // Arrival index of every element currently held in S or B, for the
  // deterministic tie-break (smallest arrival, then id).
  std::unordered_map<std::string, std::int64_t> arrival;

  void note_stored();      // update peak_stored_elements
  void note_thresholds(double prev_minus, double prev_plus);
  void reject(const Element& v, double gain, std::int64_t arrival_index);
};

// Moves argmax-gain buffered elements into S until |S| = k or B empties.
// Gains are recomputed against the current S at every step; ties break by
// smallest arrival index, then id.
void final_greedy(ClipperState& state);

struct NaiveClipperParams {
  int k = 1;
  double tau_minus = 0.0;
  double tau_plus = 0.0;
  bool test_mode = false;
};

// Algorithm: single pass with fixed thresholds. Accept at gain >= tau_plus
// while |S| < k, buffer at gain > tau_minus, otherwise reject; then the
// final greedy stage fills S from the buffer.
RunResult naive_stream_clipper(std::span<const Element> stream,
                               const Objective& objective,
                               const NaiveClipperParams& params);

struct StreamClipperParams {
  int k = 1;
  int buffer_capacity = 1;
  // Estimate of the optimum; when absent it is seeded from the first
  // element with positive singleton value as k * f(v1).
  std::optional<double> fhat;
  // Individual threshold overrides; anything unset derives from fhat as
  // delta_tau = fhat/(20k), tau_minus = fhat/(2k) - delta_tau,
  // tau_plus = fhat/(2k) + delta_tau.
  std::optional<double> tau_minus;
  std::optional<double> tau_plus;
  std::optional<double> delta_tau;
  bool test_mode = false;
};

// Adaptive variant: borderline elements first try to swap into S (committed
// when the mean objective improvement rho is positive, raising both
// thresholds), and the buffer is cleaned by raising tau_minus whenever it
// reaches capacity.
RunResult stream_clipper(std::span<const Element> stream,
                         const Objective& objective,
                         const StreamClipperParams& params);

// Offline greedy: k rounds of argmax marginal gain, stopping early when the
// best remaining gain is <= kZeroGain.
RunResult greedy(std::span<const Element> elements, const Objective& objective,
                 int k);

// Priority-queue variant with stale gains; identical output to greedy
// (same tie-breaking) with no more gain evaluations.
RunResult lazy_greedy(std::span<const Element> elements,
                      const Objective& objective, int k);

struct SieveParams {
  int k = 1;
  double epsilon = 0.1;
  int max_instances = 256;
  // When set, runs a single thresholding instance with this estimate
  // instead of the geometric grid (the estimate-sensitivity experiments).
  std::optional<double> fixed_estimate;
};

RunResult sieve_streaming(std::span<const Element> stream,
                          const Objective& objective,
                          const SieveParams& params);

struct SwapStreamParams {
  int k = 1;
  double c = 1.0;
};

// Fills S with the first k elements, then swaps v for the best u in S
// whenever f(S - u + v) >= (1 + c/k) f(S).
RunResult swap_streaming(std::span<const Element> stream,
                         const Objective& objective,
                         const SwapStreamParams& params);

// Splits the stream into k contiguous segments (earlier ones longer by at
// most one) and adds the argmax-gain element of each segment. declared_n
// must equal the true stream length.
RunResult minibatch_secretary(std::span<const Element> stream,
                              const Objective& objective, int k,
                              std::int64_t declared_n);

}  // namespace streamclip

#endif  // STREAMCLIP_ALGORITHMS_HPP
