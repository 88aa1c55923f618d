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

#ifndef STREAMCLIP_OBJECTIVE_HPP
#define STREAMCLIP_OBJECTIVE_HPP

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "streamclip/element.hpp"

namespace streamclip {

enum class ObjectiveKind { kFeatureBased, kModular };

// Immutable objective description, shareable read-only across threads.
//
// The feature-based kind scores a set S as sum_u sqrt(c_u(S)) where
// c_u(S) accumulates the feature weights of the members. The modular kind
// scores S as the sum of fixed per-element values; it exists as a test
// objective with an exact analytic optimum.
class Objective {
 public:
  static Objective feature_based();
  // Values must be non-negative and finite; throws ConfigError otherwise.
  static Objective modular(std::unordered_map<std::string, double> values);

  ObjectiveKind kind() const { return kind_; }
  // Modular kind only; throws ConfigError for unknown ids.
  double modular_value(const std::string& id) const;

 private:
  explicit Objective(ObjectiveKind kind) : kind_(kind) {}
  ObjectiveKind kind_;
  std::unordered_map<std::string, double> values_;
};

// Incremental evaluator state for one growing/swapping solution set.
//
// Keeps the members in insertion order, the per-feature accumulators
// c_u(S), and the cached objective value. Every marginal-gain query costs
// time proportional to the element's feature count; a from-scratch refresh
// runs every 10^4 commits to cap float drift. Single-threaded; may be
// moved between threads but never shared mutably.
class SolutionState {
 public:
  explicit SolutionState(const Objective& objective);

  double value() const { return value_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::string_view id) const;
  const std::vector<Element>& members() const { return members_; }
  std::vector<std::string> member_ids() const;
  const std::unordered_map<std::string, double>& accumulators() const {
    return accumulators_;
  }
  const Objective& objective() const { return *objective_; }

  // f(v|S). Throws DuplicateElementError if v is already a member.
  double gain(const Element& v) const;

  // S <- S + v, updating accumulators and cached value incrementally.
  void commit(const Element& v);

  // f(S - out_id + v) without modifying this state. Throws if out_id is
  // not a member or v already is.
  double swap_value(const Element& v, const std::string& out_id) const;

  // S <- S - out_id + v (v appended at the tail of the member order).
  void commit_swap(const Element& v, const std::string& out_id);

  // Full recomputation of the value from the stored members; used by the
  // drift tests and the periodic refresh.
  double rebuilt_value() const;

 private:
  double swap_delta(const Element& v, const Element& out) const;
  void refresh();

  const Objective* objective_;
  std::vector<Element> members_;
  std::unordered_set<std::string> member_ids_;
  std::unordered_map<std::string, double> accumulators_;
  double value_ = 0.0;
  std::uint64_t commits_ = 0;
};

// Builds a state by committing the given elements in order.
SolutionState rebuild_state(const Objective& objective,
                            std::span<const Element> members);

// From-scratch f over an arbitrary element list.
double eval_elements(const Objective& objective,
                     std::span<const Element> members);

}  // namespace streamclip

#endif  // STREAMCLIP_OBJECTIVE_HPP
