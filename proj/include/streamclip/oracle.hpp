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

#ifndef STREAMCLIP_ORACLE_HPP
#define STREAMCLIP_ORACLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "streamclip/constraints.hpp"
#include "streamclip/objective.hpp"

namespace streamclip {

// Minimal set-function view used by the exhaustive property checkers.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual const std::vector<std::string>& ground() const = 0;
  virtual double value(std::span<const std::string> ids) const = 0;
};

// Evaluates an Objective over subsets of a fixed element list.
class ObjectiveSetFunction final : public SetFunction {
 public:
  ObjectiveSetFunction(const Objective& objective,
                       std::vector<Element> elements);
  const std::vector<std::string>& ground() const override { return ids_; }
  double value(std::span<const std::string> ids) const override;
  const std::vector<Element>& elements() const { return elements_; }

 private:
  const Objective* objective_;
  std::vector<Element> elements_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Explicit subset -> value map over ground sets of at most 12 ids. When
// must_be_submodular is set, normalization, monotonicity, and
// submodularity are verified exhaustively at construction.
class TableFunction final : public SetFunction {
 public:
  // values[mask] scores the subset whose bit i selects ground[i].
  TableFunction(std::vector<std::string> ground, std::vector<double> values,
                bool must_be_submodular);
  const std::vector<std::string>& ground() const override { return ground_; }
  double value(std::span<const std::string> ids) const override;
  double value_mask(std::uint32_t mask) const { return values_[mask]; }

 private:
  std::vector<std::string> ground_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CardinalityConstraint {
  int k = 1;
};

using OracleConstraint =
    std::variant<CardinalityConstraint, KnapsackSpec, MatroidSpec>;

struct OracleResult {
  std::vector<std::string> optimal_set;  // sorted ids
  double f_star = 0.0;
  int ties = 1;  // number of enumerated optima attaining f_star
};

// Enumerates every feasible subset and returns the lexicographically
// smallest optimum. Refuses instances beyond the enumeration guard
// (n <= 20 with k <= 4 for cardinality, n <= 12 otherwise) by throwing
// OracleRefusal.
OracleResult exhaustive_max(std::span<const Element> elements,
                            const Objective& objective,
                            const OracleConstraint& constraint);

// k_n = |(S* \ S_n) \ B_n|: optimal elements rejected outright.
int compute_k_n(std::span<const std::string> s_star,
                std::span<const std::string> s_n,
                std::span<const std::string> b_n);

struct BijectionResult {
  int k_prime = 0;         // |A| for the first valid exchange bijection
  int valid_bijections = 0;
};

// Searches bijections phi: S* -> S that fix S* intersect S and satisfy the
// exchange requirement S - phi(v) + v independent for every v. Returns
// k' = |A| with A = {v in S \ S_n : phi^-1(v) in S* intersect B_n} for the
// first valid bijection in deterministic order. Throws ConfigError when
// |S| != |S*|, no valid bijection exists, or the sets exceed the search
// guard (10 ids).
BijectionResult bijection_k_prime(std::span<const std::string> s_star,
                                  std::span<const std::string> s,
                                  std::span<const std::string> s_n,
                                  std::span<const std::string> b_n,
                                  const MatroidSpec& matroid);

struct PropertyReport {
  int trials = 0;
  int monotonicity_violations = 0;
  int submodularity_violations = 0;
  int swap_lemma_violations = 0;
  // Most negative slack seen per property (>= -1e-9 means clean).
  double worst_monotonicity_margin = 0.0;
  double worst_submodularity_margin = 0.0;
  double worst_swap_lemma_margin = 0.0;
  bool clean() const {
    return monotonicity_violations == 0 && submodularity_violations == 0 &&
           swap_lemma_violations == 0;
  }
};

// Samples (A subset of B, v not in B) triples for monotonicity and
// submodularity and (S, u in S, v, w outside) quadruples for the swap
// inequality f(w|S-u+v) <= f(w|S) + f(u|S-u+v). Violations are margins
// below -tol.
PropertyReport property_check(const SetFunction& fn, int n_trials,
                              std::uint64_t seed, double tol = 1e-9);

}  // namespace streamclip

#endif  // STREAMCLIP_ORACLE_HPP
