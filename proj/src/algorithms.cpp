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

#include "streamclip/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>

#include "streamclip/errors.hpp"

namespace streamclip {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Deterministic argmax tie-break: larger gain, then smaller arrival,
// then smaller id.
bool better_candidate(double gain, std::int64_t arrival, const std::string& id,
                      double best_gain, std::int64_t best_arrival,
                      const std::string& best_id) {
  if (gain != best_gain) return gain > best_gain;
  if (arrival != best_arrival) return arrival < best_arrival;
  return id < best_id;
}

RunResult finish_clipper(ClipperState& st, std::string algorithm,
                         double fhat_initial, Clock::time_point start) {
  RunResult r;
  r.algorithm = std::move(algorithm);
  r.k = st.k;
  r.stream_solution_ids = st.solution.member_ids();
  r.telemetry = st.telemetry;
  r.telemetry.stream_solution_size = static_cast<int>(st.solution.size());
  r.telemetry.final_buffer_size = static_cast<int>(st.buffer.size());
  r.telemetry.tau_minus_final = st.thresholds.tau_minus;
  r.telemetry.tau_plus_final = st.thresholds.tau_plus;
  for (const BufferedElement& b : st.buffer) {
    r.final_buffer_ids.push_back(b.element.id);
  }

  final_greedy(st);

  r.solution_ids = st.solution.member_ids();
  r.objective = st.solution.value();
  r.telemetry.evaluations = st.telemetry.evaluations;
  r.telemetry.peak_stored_elements = st.telemetry.peak_stored_elements;
  r.telemetry.memory_units = st.telemetry.peak_stored_elements;
  r.fhat_initial = fhat_initial;
  r.fhat_final = std::max(st.fhat, st.solution.value());
  r.rejected_log = std::move(st.rejected_log);
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace

void ClipperState::note_stored() {
  const auto stored =
      static_cast<std::int64_t>(solution.size() + buffer.size());
  telemetry.peak_stored_elements =
      std::max(telemetry.peak_stored_elements, stored);
}

void ClipperState::note_thresholds(double prev_minus, double prev_plus) {
  if (thresholds.tau_minus < prev_minus || thresholds.tau_plus < prev_plus) {
    telemetry.thresholds_monotone = false;
  }
  telemetry.min_threshold_slack =
      std::min(telemetry.min_threshold_slack,
               thresholds.tau_plus - thresholds.tau_minus);
}

void ClipperState::reject(const Element& v, double gain,
                          std::int64_t arrival_index) {
  ++telemetry.rejections;
  if (test_mode) {
    rejected_log.push_back(
        {v.id, thresholds.tau_minus, gain, arrival_index});
  }
}

void final_greedy(ClipperState& state) {
  while (state.solution.size() < static_cast<std::size_t>(state.k) &&
         !state.buffer.empty()) {
    std::size_t best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.buffer.size(); ++i) {
      const double g = state.solution.gain(state.buffer[i].element);
      ++state.telemetry.evaluations;
      if (better_candidate(g, state.buffer[i].arrival,
                           state.buffer[i].element.id, best_gain,
                           state.buffer[best].arrival,
                           state.buffer[best].element.id)) {
        best = i;
        best_gain = g;
      }
    }
    state.solution.commit(state.buffer[best].element);
    state.buffer.erase(state.buffer.begin() +
                       static_cast<std::ptrdiff_t>(best));
  }
}

RunResult naive_stream_clipper(std::span<const Element> stream,
                               const Objective& objective,
                               const NaiveClipperParams& params) {
  if (params.k < 1) throw ConfigError("naive-clipper: k must be >= 1");
  if (params.tau_minus > params.tau_plus) {
    throw ConfigError("naive-clipper: tau_minus must be <= tau_plus");
  }
  const auto start = Clock::now();
  ClipperState st(objective);
  st.k = params.k;
  st.test_mode = params.test_mode;
  st.thresholds = {params.tau_minus, params.tau_plus, 0.0};
  st.note_thresholds(params.tau_minus, params.tau_plus);

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(stream.size()); ++i) {
    const Element& v = stream[static_cast<std::size_t>(i)];
    const double g = st.solution.gain(v);
    ++st.telemetry.evaluations;
    if (g <= kZeroGain) {
      st.reject(v, g, i);
    } else if (g >= st.thresholds.tau_plus &&
               st.solution.size() < static_cast<std::size_t>(st.k)) {
      st.solution.commit(v);
      st.arrival[v.id] = i;
    } else if (g > st.thresholds.tau_minus) {
      st.buffer.push_back({v, i});
      st.arrival[v.id] = i;
    } else {
      st.reject(v, g, i);
    }
    st.note_stored();
    st.telemetry.max_buffer_after_element =
        std::max(st.telemetry.max_buffer_after_element,
                 static_cast<int>(st.buffer.size()));
  }
  return finish_clipper(st, "naive-clipper", 0.0, start);
}

namespace {

struct AdaptiveThresholdInit {
  Thresholds thresholds;
  double fhat = 0.0;
};

AdaptiveThresholdInit derive_thresholds(double fhat, int k,
                                        const StreamClipperParams& p) {
  AdaptiveThresholdInit init;
  init.fhat = fhat;
  const double center = fhat / (2.0 * k);
  const double dt = p.delta_tau.value_or(fhat / (20.0 * k));
  init.thresholds.delta_tau = dt;
  init.thresholds.tau_minus = p.tau_minus.value_or(center - dt);
  init.thresholds.tau_plus = p.tau_plus.value_or(center + dt);
  if (init.thresholds.tau_minus > init.thresholds.tau_plus) {
    throw ConfigError("stream-clipper: initial tau_minus exceeds tau_plus");
  }
  if (init.thresholds.delta_tau < 0.0) {
    throw ConfigError("stream-clipper: delta_tau must be >= 0");
  }
  return init;
}

// Raises tau_minus and evicts until |B| < b. When tau_minus has met
// tau_plus and the buffer is still full, the leftover elements all satisfy
// the acceptance rule, so they are promoted while room remains and the rest
// are dropped (counted as forced evictions).
void clean_buffer(ClipperState& st) {
  while (st.buffer.size() >= static_cast<std::size_t>(st.buffer_capacity)) {
    ++st.telemetry.cleanings;
    if (st.thresholds.tau_minus < st.thresholds.tau_plus) {
      const double prev_minus = st.thresholds.tau_minus;
      st.thresholds.tau_minus =
          st.thresholds.delta_tau > 0.0
              ? std::min(st.thresholds.tau_minus + st.thresholds.delta_tau,
                         st.thresholds.tau_plus)
              : st.thresholds.tau_plus;
      st.note_thresholds(prev_minus, st.thresholds.tau_plus);
      std::vector<BufferedElement> kept;
      kept.reserve(st.buffer.size());
      for (const BufferedElement& b : st.buffer) {
        const double g = st.solution.gain(b.element);
        ++st.telemetry.evaluations;
        if (g <= st.thresholds.tau_minus) {
          st.arrival.erase(b.element.id);
        } else {
          kept.push_back(b);
        }
      }
      st.buffer = std::move(kept);
      continue;
    }
    // tau_minus == tau_plus: every survivor qualifies for acceptance.
    bool promoted = true;
    while (st.buffer.size() >= static_cast<std::size_t>(st.buffer_capacity) &&
           promoted) {
      promoted = false;
      std::vector<BufferedElement> kept;
      kept.reserve(st.buffer.size());
      std::size_t best = std::numeric_limits<std::size_t>::max();
      double best_gain = -std::numeric_limits<double>::infinity();
      std::vector<double> gains(st.buffer.size());
      for (std::size_t i = 0; i < st.buffer.size(); ++i) {
        gains[i] = st.solution.gain(st.buffer[i].element);
        ++st.telemetry.evaluations;
      }
      for (std::size_t i = 0; i < st.buffer.size(); ++i) {
        if (gains[i] <= st.thresholds.tau_minus) continue;
        if (best == std::numeric_limits<std::size_t>::max() ||
            better_candidate(gains[i], st.buffer[i].arrival,
                             st.buffer[i].element.id, best_gain,
                             st.buffer[best].arrival,
                             st.buffer[best].element.id)) {
          best = i;
          best_gain = gains[i];
        }
      }
      for (std::size_t i = 0; i < st.buffer.size(); ++i) {
        if (gains[i] <= st.thresholds.tau_minus) {
          st.arrival.erase(st.buffer[i].element.id);
          continue;
        }
        if (i == best &&
            st.solution.size() < static_cast<std::size_t>(st.k)) {
          st.solution.commit(st.buffer[i].element);
          st.fhat = std::max(st.fhat, st.solution.value());
          promoted = true;
          continue;
        }
        kept.push_back(st.buffer[i]);
      }
      st.buffer = std::move(kept);
    }
    if (st.buffer.size() >= static_cast<std::size_t>(st.buffer_capacity)) {
      st.telemetry.forced_evictions +=
          static_cast<std::int64_t>(st.buffer.size());
      for (const BufferedElement& b : st.buffer) st.arrival.erase(b.element.id);
      st.buffer.clear();
    }
  }
}

}  // namespace

RunResult stream_clipper(std::span<const Element> stream,
                         const Objective& objective,
                         const StreamClipperParams& params) {
  if (params.k < 1) throw ConfigError("stream-clipper: k must be >= 1");
  if (params.buffer_capacity < 1) {
    throw ConfigError("stream-clipper: buffer capacity must be >= 1");
  }
  const auto start = Clock::now();
  ClipperState st(objective);
  st.k = params.k;
  st.buffer_capacity = params.buffer_capacity;
  st.test_mode = params.test_mode;

  bool initialized = false;
  double fhat_initial = 0.0;
  if (params.fhat.has_value()) {
    const auto init = derive_thresholds(*params.fhat, st.k, params);
    st.thresholds = init.thresholds;
    st.fhat = init.fhat;
    fhat_initial = init.fhat;
    initialized = true;
    st.note_thresholds(st.thresholds.tau_minus, st.thresholds.tau_plus);
  }

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(stream.size()); ++i) {
    const Element& v = stream[static_cast<std::size_t>(i)];
    const double g = st.solution.gain(v);
    ++st.telemetry.evaluations;
    if (!initialized) {
      if (g <= kZeroGain) {
        st.reject(v, g, i);
        continue;
      }
      // First element with positive singleton value seeds the estimate:
      // f(S*) <= k * max_v f(v), approximated by this element.
      const auto init = derive_thresholds(st.k * g, st.k, params);
      st.thresholds = init.thresholds;
      st.fhat = init.fhat;
      fhat_initial = init.fhat;
      initialized = true;
      st.note_thresholds(st.thresholds.tau_minus, st.thresholds.tau_plus);
    }

    bool buffered = false;
    if (g <= kZeroGain) {
      st.reject(v, g, i);
    } else if (g >= st.thresholds.tau_plus &&
               st.solution.size() < static_cast<std::size_t>(st.k)) {
      st.solution.commit(v);
      st.arrival[v.id] = i;
      st.fhat = std::max(st.fhat, st.solution.value());
    } else if (g > st.thresholds.tau_minus) {
      if (st.solution.empty()) {
        st.buffer.push_back({v, i});
        st.arrival[v.id] = i;
        buffered = true;
      } else {
        const auto& members = st.solution.members();
        std::size_t best = 0;
        double best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < members.size(); ++m) {
          const double val = st.solution.swap_value(v, members[m].id);
          ++st.telemetry.evaluations;
          if (better_candidate(val, st.arrival.at(members[m].id),
                               members[m].id, best_value,
                               st.arrival.at(members[best].id),
                               members[best].id)) {
            best = m;
            best_value = val;
          }
        }
        const double rho = (best_value - st.solution.value()) /
                           static_cast<double>(st.solution.size());
        // f(u|S-u+v) = f(S+v) - f(S-u+v), with f(S+v) = f(S) + g.
        const double out_gain = st.solution.value() + g - best_value;
        const double next_minus = st.thresholds.tau_minus + out_gain;
        const double next_plus = st.thresholds.tau_plus + rho;
        if (rho > 0.0 && next_minus <= next_plus) {
          const std::string out_id = members[best].id;
          const double prev_minus = st.thresholds.tau_minus;
          const double prev_plus = st.thresholds.tau_plus;
          st.solution.commit_swap(v, out_id);
          st.arrival.erase(out_id);
          st.arrival[v.id] = i;
          st.thresholds.tau_minus = next_minus;
          st.thresholds.tau_plus = next_plus;
          st.note_thresholds(prev_minus, prev_plus);
          ++st.telemetry.swaps;
          st.fhat = std::max(st.fhat, st.solution.value());
        } else {
          st.buffer.push_back({v, i});
          st.arrival[v.id] = i;
          buffered = true;
        }
      }
    } else {
      st.reject(v, g, i);
    }

    st.note_stored();
    if (buffered) clean_buffer(st);
    st.telemetry.max_buffer_after_element =
        std::max(st.telemetry.max_buffer_after_element,
                 static_cast<int>(st.buffer.size()));
  }
  return finish_clipper(st, "stream-clipper", fhat_initial, start);
}

RunResult greedy(std::span<const Element> elements, const Objective& objective,
                 int k) {
  if (k < 1) throw ConfigError("greedy: k must be >= 1");
  const auto start = Clock::now();
  RunResult r;
  r.algorithm = "greedy";
  r.k = k;
  SolutionState state(objective);
  std::vector<bool> taken(elements.size(), false);
  while (state.size() < static_cast<std::size_t>(k)) {
    std::size_t best = elements.size();
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (taken[i]) continue;
      const double g = state.gain(elements[i]);
      ++r.telemetry.evaluations;
      if (best == elements.size() ||
          better_candidate(g, static_cast<std::int64_t>(i), elements[i].id,
                           best_gain, static_cast<std::int64_t>(best),
                           elements[best].id)) {
        best = i;
        best_gain = g;
      }
    }
    if (best == elements.size() || best_gain <= kZeroGain) break;
    taken[best] = true;
    state.commit(elements[best]);
  }
  r.solution_ids = state.member_ids();
  r.stream_solution_ids = r.solution_ids;
  r.objective = state.value();
  r.telemetry.peak_stored_elements = static_cast<std::int64_t>(elements.size());
  r.telemetry.memory_units = static_cast<std::int64_t>(elements.size());
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

RunResult lazy_greedy(std::span<const Element> elements,
                      const Objective& objective, int k) {
  if (k < 1) throw ConfigError("lazy-greedy: k must be >= 1");
  const auto start = Clock::now();
  RunResult r;
  r.algorithm = "lazy-greedy";
  r.k = k;
  SolutionState state(objective);

  struct Entry {
    double gain;
    std::int64_t arrival;
    std::size_t index;
    std::size_t epoch;  // |S| at the time the gain was computed
  };
  auto lower_priority = [&](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    if (a.arrival != b.arrival) return a.arrival > b.arrival;
    return elements[a.index].id > elements[b.index].id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)>
      queue(lower_priority);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const double g = state.gain(elements[i]);
    ++r.telemetry.evaluations;
    queue.push({g, static_cast<std::int64_t>(i), i, 0});
  }
  while (state.size() < static_cast<std::size_t>(k) && !queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    if (top.epoch == state.size()) {
      if (top.gain <= kZeroGain) break;
      state.commit(elements[top.index]);
    } else {
      top.gain = state.gain(elements[top.index]);
      ++r.telemetry.evaluations;
      top.epoch = state.size();
      queue.push(top);
    }
  }
  r.solution_ids = state.member_ids();
  r.stream_solution_ids = r.solution_ids;
  r.objective = state.value();
  r.telemetry.peak_stored_elements = static_cast<std::int64_t>(elements.size());
  r.telemetry.memory_units = static_cast<std::int64_t>(elements.size());
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

RunResult sieve_streaming(std::span<const Element> stream,
                          const Objective& objective,
                          const SieveParams& params) {
  if (params.k < 1) throw ConfigError("sieve: k must be >= 1");
  if (!params.fixed_estimate.has_value() &&
      (params.epsilon <= 0.0 || params.epsilon >= 1.0)) {
    throw ConfigError("sieve: epsilon must lie in (0, 1)");
  }
  if (params.max_instances < 1) {
    throw ConfigError("sieve: max_instances must be >= 1");
  }
  const auto start = Clock::now();
  RunResult r;
  r.algorithm = "sieve";
  r.k = params.k;

  struct Instance {
    double estimate;
    SolutionState state;
  };
  std::map<int, Instance> instances;
  const SolutionState empty_state(objective);
  double delta1 = 0.0;
  std::size_t peak_instances = 0;
  std::int64_t peak_stored = 0;

  if (params.fixed_estimate.has_value()) {
    instances.emplace(0, Instance{*params.fixed_estimate,
                                  SolutionState(objective)});
  }
  const double log_base = std::log1p(params.epsilon);

  for (const Element& v : stream) {
    const double singleton = empty_state.gain(v);
    ++r.telemetry.evaluations;
    if (!params.fixed_estimate.has_value() && singleton > kZeroGain &&
        singleton > delta1) {
      delta1 = singleton;
      const int lo = static_cast<int>(
          std::ceil(std::log(delta1) / log_base - 1e-9));
      const int hi = static_cast<int>(std::floor(
          std::log(2.0 * params.k * delta1) / log_base + 1e-9));
      for (auto it = instances.begin(); it != instances.end();) {
        it = it->first < lo ? instances.erase(it) : std::next(it);
      }
      for (int e = lo; e <= hi; ++e) {
        if (instances.size() >=
            static_cast<std::size_t>(params.max_instances)) {
          break;
        }
        if (!instances.count(e)) {
          instances.emplace(
              e, Instance{std::pow(1.0 + params.epsilon, e),
                          SolutionState(objective)});
        }
      }
    }
    std::int64_t stored = 0;
    for (auto& [exp, inst] : instances) {
      if (inst.state.size() < static_cast<std::size_t>(params.k)) {
        const double g = inst.state.gain(v);
        ++r.telemetry.evaluations;
        if (g > kZeroGain) {
          const double threshold =
              (inst.estimate / 2.0 - inst.state.value()) /
              static_cast<double>(params.k - inst.state.size());
          if (g >= threshold) inst.state.commit(v);
        }
      }
      stored += static_cast<std::int64_t>(inst.state.size());
    }
    peak_instances = std::max(peak_instances, instances.size());
    peak_stored = std::max(peak_stored, stored);
  }

  const Instance* best = nullptr;
  for (const auto& [exp, inst] : instances) {
    if (best == nullptr || inst.state.value() > best->state.value()) {
      best = &inst;
    }
  }
  if (best != nullptr) {
    r.solution_ids = best->state.member_ids();
    r.stream_solution_ids = r.solution_ids;
    r.objective = best->state.value();
  }
  r.telemetry.peak_stored_elements = peak_stored;
  r.telemetry.memory_units =
      static_cast<std::int64_t>(peak_instances) * params.k;
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

RunResult swap_streaming(std::span<const Element> stream,
                         const Objective& objective,
                         const SwapStreamParams& params) {
  if (params.k < 1) throw ConfigError("swap: k must be >= 1");
  const auto start = Clock::now();
  RunResult r;
  r.algorithm = "swap";
  r.k = params.k;
  SolutionState state(objective);
  std::unordered_map<std::string, std::int64_t> arrival;

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(stream.size()); ++i) {
    const Element& v = stream[static_cast<std::size_t>(i)];
    if (state.size() < static_cast<std::size_t>(params.k)) {
      ++r.telemetry.evaluations;
      state.commit(v);
      arrival[v.id] = i;
      continue;
    }
    const auto& members = state.members();
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < members.size(); ++m) {
      const double val = state.swap_value(v, members[m].id);
      ++r.telemetry.evaluations;
      if (better_candidate(val, arrival.at(members[m].id), members[m].id,
                           best_value, arrival.at(members[best].id),
                           members[best].id)) {
        best = m;
        best_value = val;
      }
    }
    const double bar =
        (1.0 + params.c / static_cast<double>(params.k)) * state.value();
    if (best_value >= bar) {
      const std::string out_id = members[best].id;
      state.commit_swap(v, out_id);
      arrival.erase(out_id);
      arrival[v.id] = i;
      ++r.telemetry.swaps;
    }
  }
  r.solution_ids = state.member_ids();
  r.stream_solution_ids = r.solution_ids;
  r.objective = state.value();
  r.telemetry.peak_stored_elements =
      static_cast<std::int64_t>(state.size());
  r.telemetry.memory_units = params.k;
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

RunResult minibatch_secretary(std::span<const Element> stream,
                              const Objective& objective, int k,
                              std::int64_t declared_n) {
  if (k < 1) throw ConfigError("minibatch: k must be >= 1");
  if (declared_n != static_cast<std::int64_t>(stream.size())) {
    throw ConfigError("minibatch: declared n (" + std::to_string(declared_n) +
                      ") does not match the stream length (" +
                      std::to_string(stream.size()) + ")");
  }
  const auto start = Clock::now();
  RunResult r;
  r.algorithm = "minibatch";
  r.k = k;
  SolutionState state(objective);
  const std::int64_t n = declared_n;

  if (n <= k) {
    for (const Element& v : stream) {
      ++r.telemetry.evaluations;
      state.commit(v);
    }
  } else {
    const std::int64_t base = n / k;
    const std::int64_t longer = n % k;  // first `longer` segments get +1
    std::int64_t pos = 0;
    for (int seg = 0; seg < k; ++seg) {
      const std::int64_t len = base + (seg < longer ? 1 : 0);
      std::int64_t best = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::int64_t j = pos; j < pos + len; ++j) {
        const double g = state.gain(stream[static_cast<std::size_t>(j)]);
        ++r.telemetry.evaluations;
        if (g > best_gain) {  // first arrival wins ties
          best = j;
          best_gain = g;
        }
      }
      if (best >= 0 && best_gain > kZeroGain) {
        state.commit(stream[static_cast<std::size_t>(best)]);
      }
      pos += len;
    }
  }
  r.solution_ids = state.member_ids();
  r.stream_solution_ids = r.solution_ids;
  r.objective = state.value();
  r.telemetry.peak_stored_elements =
      static_cast<std::int64_t>(state.size()) + 1;
  r.telemetry.memory_units = k;
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace streamclip
