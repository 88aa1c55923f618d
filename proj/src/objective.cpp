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

#include "streamclip/objective.hpp"

#include <algorithm>
#include <cmath>

#include "streamclip/errors.hpp"

namespace streamclip {

namespace {
constexpr std::uint64_t kRefreshPeriod = 10000;

double sqrt_clamped(double x) { return std::sqrt(std::max(0.0, x)); }
}  // namespace

Objective Objective::feature_based() {
  return Objective(ObjectiveKind::kFeatureBased);
}

Objective Objective::modular(std::unordered_map<std::string, double> values) {
  for (const auto& [id, v] : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("modular objective: value for '" + id +
                        "' must be finite and >= 0");
    }
  }
  Objective obj(ObjectiveKind::kModular);
  obj.values_ = std::move(values);
  return obj;
}

double Objective::modular_value(const std::string& id) const {
  auto it = values_.find(id);
  if (it == values_.end()) {
    throw ConfigError("modular objective: unknown element id '" + id + "'");
  }
  return it->second;
}

SolutionState::SolutionState(const Objective& objective)
    : objective_(&objective) {}

bool SolutionState::contains(std::string_view id) const {
  return member_ids_.count(std::string(id)) > 0;
}

std::vector<std::string> SolutionState::member_ids() const {
  std::vector<std::string> ids;
  ids.reserve(members_.size());
  for (const Element& e : members_) ids.push_back(e.id);
  return ids;
}

double SolutionState::gain(const Element& v) const {
  if (contains(v.id)) {
    throw DuplicateElementError("gain: element '" + v.id +
                                "' is already in the solution");
  }
  if (objective_->kind() == ObjectiveKind::kModular) {
    return objective_->modular_value(v.id);
  }
  double delta = 0.0;
  for (const auto& [u, w] : v.features) {
    auto it = accumulators_.find(u);
    const double c = it == accumulators_.end() ? 0.0 : it->second;
    delta += sqrt_clamped(c + w) - sqrt_clamped(c);
  }
  return delta;
}

void SolutionState::commit(const Element& v) {
  if (contains(v.id)) {
    throw DuplicateElementError("commit: element '" + v.id +
                                "' is already in the solution");
  }
  if (objective_->kind() == ObjectiveKind::kModular) {
    value_ += objective_->modular_value(v.id);
  } else {
    for (const auto& [u, w] : v.features) {
      double& c = accumulators_[u];
      value_ += sqrt_clamped(c + w) - sqrt_clamped(c);
      c += w;
    }
  }
  members_.push_back(v);
  member_ids_.insert(v.id);
  if (++commits_ % kRefreshPeriod == 0) refresh();
}

double SolutionState::swap_delta(const Element& v, const Element& out) const {
  // Walk the union of the two sorted feature lists once, touching only
  // features either element carries.
  double delta = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  auto apply = [&](const std::string& u, double w_in, double w_out) {
    auto it = accumulators_.find(u);
    const double c = it == accumulators_.end() ? 0.0 : it->second;
    const double c_new = std::max(0.0, c - w_out + w_in);
    delta += sqrt_clamped(c_new) - sqrt_clamped(c);
  };
  while (i < v.features.size() || j < out.features.size()) {
    if (j == out.features.size() ||
        (i < v.features.size() && v.features[i].first < out.features[j].first)) {
      apply(v.features[i].first, v.features[i].second, 0.0);
      ++i;
    } else if (i == v.features.size() ||
               out.features[j].first < v.features[i].first) {
      apply(out.features[j].first, 0.0, out.features[j].second);
      ++j;
    } else {
      apply(v.features[i].first, v.features[i].second, out.features[j].second);
      ++i;
      ++j;
    }
  }
  return delta;
}

double SolutionState::swap_value(const Element& v,
                                 const std::string& out_id) const {
  if (!contains(out_id)) {
    throw DuplicateElementError("swap_value: '" + out_id +
                                "' is not in the solution");
  }
  if (contains(v.id)) {
    throw DuplicateElementError("swap_value: element '" + v.id +
                                "' is already in the solution");
  }
  if (objective_->kind() == ObjectiveKind::kModular) {
    return value_ - objective_->modular_value(out_id) +
           objective_->modular_value(v.id);
  }
  const auto out_it = std::find_if(members_.begin(), members_.end(),
                                   [&](const Element& e) { return e.id == out_id; });
  return value_ + swap_delta(v, *out_it);
}

void SolutionState::commit_swap(const Element& v, const std::string& out_id) {
  if (!contains(out_id)) {
    throw DuplicateElementError("commit_swap: '" + out_id +
                                "' is not in the solution");
  }
  if (contains(v.id)) {
    throw DuplicateElementError("commit_swap: element '" + v.id +
                                "' is already in the solution");
  }
  auto out_it = std::find_if(members_.begin(), members_.end(),
                             [&](const Element& e) { return e.id == out_id; });
  if (objective_->kind() == ObjectiveKind::kModular) {
    value_ += objective_->modular_value(v.id) -
              objective_->modular_value(out_id);
  } else {
    value_ += swap_delta(v, *out_it);
    for (const auto& [u, w] : out_it->features) {
      double& c = accumulators_[u];
      c = std::max(0.0, c - w);
    }
    for (const auto& [u, w] : v.features) {
      accumulators_[u] += w;
    }
  }
  member_ids_.erase(out_id);
  members_.erase(out_it);
  members_.push_back(v);
  member_ids_.insert(v.id);
  if (++commits_ % kRefreshPeriod == 0) refresh();
}

double SolutionState::rebuilt_value() const {
  return eval_elements(*objective_, members_);
}

void SolutionState::refresh() {
  if (objective_->kind() == ObjectiveKind::kModular) {
    value_ = 0.0;
    for (const Element& e : members_) value_ += objective_->modular_value(e.id);
    return;
  }
  accumulators_.clear();
  for (const Element& e : members_) {
    for (const auto& [u, w] : e.features) accumulators_[u] += w;
  }
  value_ = 0.0;
  for (const auto& [u, c] : accumulators_) value_ += sqrt_clamped(c);
}

SolutionState rebuild_state(const Objective& objective,
                            std::span<const Element> members) {
  SolutionState state(objective);
  for (const Element& e : members) state.commit(e);
  return state;
}

double eval_elements(const Objective& objective,
                     std::span<const Element> members) {
  if (objective.kind() == ObjectiveKind::kModular) {
    double total = 0.0;
    for (const Element& e : members) total += objective.modular_value(e.id);
    return total;
  }
  std::unordered_map<std::string, double> acc;
  for (const Element& e : members) {
    for (const auto& [u, w] : e.features) acc[u] += w;
  }
  double total = 0.0;
  for (const auto& [u, c] : acc) total += sqrt_clamped(c);
  return total;
}

}  // namespace streamclip
