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

#include "streamclip/constraints.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "streamclip/errors.hpp"

namespace streamclip {

namespace {
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

bool better_candidate(double score, std::int64_t arrival, const std::string& id,
                      double best_score, std::int64_t best_arrival,
                      const std::string& best_id) {
  if (score != best_score) return score > best_score;
  if (arrival != best_arrival) return arrival < best_arrival;
  return id < best_id;
}
}  // namespace

MatroidSpec MatroidSpec::partition(
    std::unordered_map<std::string, std::string> categories,
    std::unordered_map<std::string, int> capacities) {
  for (const auto& [cat, cap] : capacities) {
    if (cap < 0) {
      throw ConfigError("matroid: capacity for category '" + cat +
                        "' must be >= 0");
    }
  }
  for (const auto& [id, cat] : categories) {
    if (!capacities.count(cat)) {
      throw ConfigError("matroid: element '" + id +
                        "' references unknown category '" + cat + "'");
    }
  }
  MatroidSpec spec(Kind::kPartition);
  spec.categories_ = std::move(categories);
  spec.capacities_ = std::move(capacities);
  return spec;
}

MatroidSpec MatroidSpec::table(
    std::vector<std::vector<std::string>> independent) {
  MatroidSpec spec(Kind::kTable);
  for (auto& ids : independent) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const std::string& id : ids) spec.ground_.insert(id);
    spec.independent_.insert(std::move(ids));
  }
  // The empty set is always independent.
  spec.independent_.insert(std::vector<std::string>{});
  // Downward closure: every subset of an independent set is independent.
  for (const auto& ids : spec.independent_) {
    for (std::size_t skip = 0; skip < ids.size(); ++skip) {
      std::vector<std::string> sub;
      sub.reserve(ids.size() - 1);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i != skip) sub.push_back(ids[i]);
      }
      if (!spec.independent_.count(sub)) {
        throw ConfigError(
            "matroid table: independence is not downward-closed");
      }
    }
  }
  return spec;
}

MatroidSpec MatroidSpec::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("matroid json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("capacities") ||
      !doc.contains("categories")) {
    throw ConfigError(
        "matroid json: expected {\"capacities\": {...}, \"categories\": "
        "{...}}");
  }
  std::unordered_map<std::string, int> capacities;
  for (const auto& [cat, cap] : doc["capacities"].items()) {
    if (!cap.is_number_integer() || cap.get<int>() < 0) {
      throw ConfigError("matroid json: capacity for '" + cat +
                        "' must be a non-negative integer");
    }
    capacities[cat] = cap.get<int>();
  }
  std::unordered_map<std::string, std::string> categories;
  for (const auto& [id, cat] : doc["categories"].items()) {
    if (!cat.is_string()) {
      throw ConfigError("matroid json: category of '" + id +
                        "' must be a string");
    }
    categories[id] = cat.get<std::string>();
  }
  return partition(std::move(categories), std::move(capacities));
}

bool MatroidSpec::knows(const std::string& id) const {
  return kind_ == Kind::kPartition ? categories_.count(id) > 0
                                   : ground_.count(id) > 0;
}

bool MatroidSpec::is_independent(std::span<const std::string> ids) const {
  if (kind_ == Kind::kPartition) {
    std::map<std::string, int> counts;
    for (const std::string& id : ids) {
      auto it = categories_.find(id);
      if (it == categories_.end()) {
        throw ConfigError("matroid: unknown element id '" + id + "'");
      }
      ++counts[it->second];
    }
    for (const auto& [cat, count] : counts) {
      if (count > capacities_.at(cat)) return false;
    }
    return true;
  }
  for (const std::string& id : ids) {
    if (!ground_.count(id)) {
      throw ConfigError("matroid: unknown element id '" + id + "'");
    }
  }
  std::vector<std::string> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  return independent_.count(sorted) > 0;
}

int MatroidSpec::rank_upper_bound() const {
  if (kind_ == Kind::kPartition) {
    int total = 0;
    for (const auto& [cat, cap] : capacities_) total += cap;
    return total;
  }
  std::size_t largest = 0;
  for (const auto& ids : independent_) largest = std::max(largest, ids.size());
  return static_cast<int>(largest);
}

const std::string& MatroidSpec::category_of(const std::string& id) const {
  auto it = categories_.find(id);
  if (it == categories_.end()) {
    throw ConfigError("matroid: unknown element id '" + id + "'");
  }
  return it->second;
}

RunResult knapsack_clipper(std::span<const Element> stream,
                           const Objective& objective, const KnapsackSpec& spec,
                           const KnapsackClipperParams& params) {
  if (!(spec.budget > 0.0) || !std::isfinite(spec.budget)) {
    throw ConfigError("knapsack: budget must be finite and > 0");
  }
  if (params.tau_minus > params.tau_plus) {
    throw ConfigError("knapsack: tau_minus must be <= tau_plus");
  }
  const auto start = Clock::now();
  ClipperState st(objective);
  st.k = std::numeric_limits<int>::max();  // the budget is the cap
  st.test_mode = params.test_mode;
  st.thresholds = {params.tau_minus, params.tau_plus, 0.0};
  st.note_thresholds(params.tau_minus, params.tau_plus);
  double solution_cost = 0.0;

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(stream.size()); ++i) {
    const Element& v = stream[static_cast<std::size_t>(i)];
    if (!(v.cost > 0.0)) {
      throw IngestError("knapsack: element '" + v.id +
                        "' has a non-positive cost");
    }
    const double g = st.solution.gain(v);
    ++st.telemetry.evaluations;
    const double ratio = g / v.cost;
    if (g <= kZeroGain) {
      st.reject(v, g, i);
    } else if (ratio >= st.thresholds.tau_plus &&
               solution_cost + v.cost <= spec.budget) {
      st.solution.commit(v);
      st.arrival[v.id] = i;
      solution_cost += v.cost;
    } else if (ratio > st.thresholds.tau_minus) {
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

  RunResult r;
  r.algorithm = "knapsack-clipper";
  r.k = 0;
  r.stream_solution_ids = st.solution.member_ids();
  r.telemetry = st.telemetry;
  r.telemetry.stream_solution_size = static_cast<int>(st.solution.size());
  r.telemetry.final_buffer_size = static_cast<int>(st.buffer.size());
  r.telemetry.tau_minus_final = st.thresholds.tau_minus;
  r.telemetry.tau_plus_final = st.thresholds.tau_plus;
  std::vector<BufferedElement> buffer_n = st.buffer;
  for (const BufferedElement& b : buffer_n) {
    r.final_buffer_ids.push_back(b.element.id);
  }
  const double stream_cost = solution_cost;

  // Ratio greedy over the buffer, skipping anything that breaks the budget.
  // The first skipped candidate defines S_plus for the bound inputs.
  std::vector<BufferedElement> pool = std::move(st.buffer);
  bool violator_found = false;
  std::vector<std::string> s_plus;
  double s_plus_added_cost = 0.0;
  while (!pool.empty()) {
    std::size_t best = pool.size();
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double g = st.solution.gain(pool[i].element);
      ++st.telemetry.evaluations;
      const double ratio = g / pool[i].element.cost;
      if (best == pool.size() ||
          better_candidate(ratio, pool[i].arrival, pool[i].element.id,
                           best_ratio, pool[best].arrival,
                           pool[best].element.id)) {
        best = i;
        best_ratio = ratio;
      }
    }
    const Element& pick = pool[best].element;
    if (solution_cost + pick.cost > spec.budget) {
      if (!violator_found) {
        violator_found = true;
        s_plus = st.solution.member_ids();
        s_plus.push_back(pick.id);
        s_plus_added_cost = (solution_cost - stream_cost) + pick.cost;
      }
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
      continue;
    }
    st.solution.commit(pick);
    solution_cost += pick.cost;
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }

  // Best fitting buffered singleton competes with the greedy solution.
  const Element* star = nullptr;
  double star_value = 0.0;
  SolutionState empty_state(objective);
  for (const BufferedElement& b : buffer_n) {
    if (b.element.cost > spec.budget) continue;
    const double val = empty_state.gain(b.element);
    ++st.telemetry.evaluations;
    if (star == nullptr || val > star_value) {
      star = &b.element;
      star_value = val;
    }
  }

  if (star != nullptr && star_value > st.solution.value()) {
    r.solution_ids = {star->id};
    r.objective = star_value;
    r.solution_cost = star->cost;
  } else {
    r.solution_ids = st.solution.member_ids();
    r.objective = st.solution.value();
    r.solution_cost = solution_cost;
  }
  if (violator_found) {
    r.s_plus_ids = std::move(s_plus);
    r.knapsack_alpha = spec.budget - s_plus_added_cost;
  }
  r.telemetry.evaluations = st.telemetry.evaluations;
  r.telemetry.memory_units = st.telemetry.peak_stored_elements;
  r.rejected_log = std::move(st.rejected_log);
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

RunResult matroid_clipper(std::span<const Element> stream,
                          const Objective& objective, const MatroidSpec& spec,
                          const MatroidClipperParams& params) {
  const int k = params.k.value_or(spec.rank_upper_bound());
  if (k < 1) throw ConfigError("matroid: k must be >= 1");
  if (params.tau_minus > params.tau_plus) {
    throw ConfigError("matroid: tau_minus must be <= tau_plus");
  }
  const auto start = Clock::now();
  ClipperState st(objective);
  st.k = k;
  st.test_mode = params.test_mode;
  st.thresholds = {params.tau_minus, params.tau_plus, 0.0};
  st.note_thresholds(params.tau_minus, params.tau_plus);

  auto independent_with = [&](const Element& v) {
    std::vector<std::string> ids = st.solution.member_ids();
    ids.push_back(v.id);
    return spec.is_independent(ids);
  };

  for (std::int64_t i = 0; i < static_cast<std::int64_t>(stream.size()); ++i) {
    const Element& v = stream[static_cast<std::size_t>(i)];
    if (!spec.knows(v.id)) {
      throw IngestError("matroid: stream element '" + v.id +
                        "' is unknown to the matroid spec");
    }
    const double g = st.solution.gain(v);
    ++st.telemetry.evaluations;
    if (g <= kZeroGain) {
      st.reject(v, g, i);
    } else if (g >= st.thresholds.tau_plus &&
               st.solution.size() < static_cast<std::size_t>(k) &&
               independent_with(v)) {
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

  RunResult r;
  r.algorithm = "matroid-clipper";
  r.k = k;
  r.stream_solution_ids = st.solution.member_ids();
  r.telemetry = st.telemetry;
  r.telemetry.stream_solution_size = static_cast<int>(st.solution.size());
  r.telemetry.final_buffer_size = static_cast<int>(st.buffer.size());
  r.telemetry.tau_minus_final = st.thresholds.tau_minus;
  r.telemetry.tau_plus_final = st.thresholds.tau_plus;
  for (const BufferedElement& b : st.buffer) {
    r.final_buffer_ids.push_back(b.element.id);
  }

  // Greedy over feasible buffered elements only; stops when nothing
  // feasible remains even if |S| < k.
  while (st.solution.size() < static_cast<std::size_t>(k)) {
    std::size_t best = st.buffer.size();
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < st.buffer.size(); ++i) {
      if (!independent_with(st.buffer[i].element)) continue;
      const double g = st.solution.gain(st.buffer[i].element);
      ++st.telemetry.evaluations;
      if (best == st.buffer.size() ||
          better_candidate(g, st.buffer[i].arrival, st.buffer[i].element.id,
                           best_gain, st.buffer[best].arrival,
                           st.buffer[best].element.id)) {
        best = i;
        best_gain = g;
      }
    }
    if (best == st.buffer.size()) break;
    st.solution.commit(st.buffer[best].element);
    st.buffer.erase(st.buffer.begin() + static_cast<std::ptrdiff_t>(best));
  }

  r.solution_ids = st.solution.member_ids();
  r.objective = st.solution.value();
  r.telemetry.evaluations = st.telemetry.evaluations;
  r.telemetry.memory_units = st.telemetry.peak_stored_elements;
  r.rejected_log = std::move(st.rejected_log);
  r.telemetry.wall_ms = elapsed_ms(start);
  return r;
}

}  // namespace streamclip
