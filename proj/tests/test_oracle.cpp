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

#include <cmath>
#include <random>

#include <doctest.h>

#include "streamclip/algorithms.hpp"
#include "streamclip/errors.hpp"
#include "streamclip/oracle.hpp"
#include "test_support.hpp"

using namespace streamclip;
using streamclip::testing::el;
using streamclip::testing::random_elements;

namespace {
const Objective& fb() {
  static const Objective obj = Objective::feature_based();
  return obj;
}
}  // namespace

TEST_CASE("exhaustive max on a modular objective picks the top k") {
  const Objective mod = Objective::modular(
      {{"a", 3.0}, {"b", 2.0}, {"c", 1.0}, {"d", 0.5}});
  const std::vector<Element> elements = {el("a", {}), el("b", {}), el("c", {}),
                                         el("d", {})};
  const OracleResult r =
      exhaustive_max(elements, mod, CardinalityConstraint{2});
  CHECK(r.f_star == doctest::Approx(5.0));
  CHECK(r.optimal_set == std::vector<std::string>{"a", "b"});
}

TEST_CASE("exhaustive max resolves ties lexicographically") {
  const std::vector<Element> elements = {el("a", {{"u1", 4.0}}),
                                         el("b", {{"u1", 4.0}}),
                                         el("c", {{"u2", 1.0}})};
  const OracleResult r =
      exhaustive_max(elements, fb(), CardinalityConstraint{2});
  CHECK(r.f_star == doctest::Approx(3.0));
  CHECK(r.optimal_set == std::vector<std::string>{"a", "c"});
  CHECK(r.ties == 2);  // {a,c} and {b,c}
}

TEST_CASE("exhaustive max under an unaffordable knapsack returns empty") {
  const std::vector<Element> elements = {el("a", {{"u1", 4.0}}, 5.0),
                                         el("b", {{"u2", 4.0}}, 7.0)};
  const OracleResult r = exhaustive_max(elements, fb(), KnapsackSpec{1.0});
  CHECK(r.optimal_set.empty());
  CHECK(r.f_star == 0.0);
}

TEST_CASE("exhaustive max refuses oversized instances") {
  const std::vector<Element> elements = random_elements(13, 4, 0.5, 1.0, 3);
  CHECK_THROWS_AS(
      exhaustive_max(elements, fb(), CardinalityConstraint{6}),
      OracleRefusal);
  CHECK_NOTHROW(exhaustive_max(elements, fb(), CardinalityConstraint{4}));
  const std::vector<Element> large = random_elements(21, 4, 0.5, 1.0, 4);
  CHECK_THROWS_AS(exhaustive_max(large, fb(), CardinalityConstraint{2}),
                  OracleRefusal);
}

TEST_CASE("compute_k_n matches its set definition") {
  const std::vector<std::string> s_star = {"a", "b", "c"};
  CHECK(compute_k_n(s_star, std::vector<std::string>{"a"},
                    std::vector<std::string>{"b"}) == 1);
  CHECK(compute_k_n(s_star, std::vector<std::string>{"a", "b"},
                    std::vector<std::string>{"c"}) == 0);
  CHECK(compute_k_n(s_star, {}, {}) == 3);
}

TEST_CASE("greedy reaches the (1 - 1/e) offline factor on every instance") {
  std::mt19937_64 rng(61);
  const double factor = 1.0 - std::exp(-1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Element> elements =
        random_elements(8, 6, 0.5, 2.0, rng());
    const OracleResult oracle =
        exhaustive_max(elements, fb(), CardinalityConstraint{3});
    const RunResult g = greedy(elements, fb(), 3);
    REQUIRE(g.objective >= factor * oracle.f_star - 1e-9);
  }
}

TEST_CASE("greedy equals the oracle exactly on modular objectives") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    std::unordered_map<std::string, double> values;
    std::vector<Element> elements;
    for (int i = 0; i < 10; ++i) {
      const std::string id = "m" + std::to_string(i);
      values[id] = streamclip::testing::uniform01(rng) * 5.0;
      elements.push_back(el(id, {}));
    }
    const Objective mod = Objective::modular(values);
    const OracleResult oracle =
        exhaustive_max(elements, mod, CardinalityConstraint{4});
    const RunResult g = greedy(elements, mod, 4);
    REQUIRE(g.objective == doctest::Approx(oracle.f_star).epsilon(1e-12));
  }
}

TEST_CASE("table function validates structure at construction") {
  // f(S) = |S|^2 on two ids is supermodular: rejected.
  CHECK_THROWS_AS(
      TableFunction({"a", "b"}, {0.0, 1.0, 1.0, 4.0}, true), ConfigError);
  // f(empty) must be zero.
  CHECK_THROWS_AS(TableFunction({"a"}, {1.0, 2.0}, false), ConfigError);
  // Coverage-style function passes.
  const TableFunction ok({"a", "b"}, {0.0, 1.0, 1.0, 1.5}, true);
  CHECK(ok.value(std::vector<std::string>{"a", "b"}) == doctest::Approx(1.5));
}

TEST_CASE("property_check is clean on the feature-based objective") {
  const std::vector<Element> elements = random_elements(10, 8, 0.4, 2.0, 73);
  const ObjectiveSetFunction fn(fb(), elements);
  const PropertyReport report = property_check(fn, 2000, 7);
  CHECK(report.clean());
  CHECK(report.worst_monotonicity_margin >= -1e-9);
  CHECK(report.worst_submodularity_margin >= -1e-9);
  CHECK(report.worst_swap_lemma_margin >= -1e-9);
}

TEST_CASE("property_check flags a supermodular table function") {
  // f(S) = |S|^2 over three ids.
  std::vector<double> values(8);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const int size = __builtin_popcount(mask);
    values[mask] = static_cast<double>(size * size);
  }
  const TableFunction fn({"a", "b", "c"}, values, false);
  const PropertyReport report = property_check(fn, 2000, 11);
  CHECK(report.submodularity_violations > 0);
}

TEST_CASE("property_check reports exact equality margins for modular") {
  std::unordered_map<std::string, double> values;
  std::vector<Element> elements;
  for (int i = 0; i < 6; ++i) {
    const std::string id = "m" + std::to_string(i);
    values[id] = 1.0 + i;
    elements.push_back(el(id, {}));
  }
  const Objective mod = Objective::modular(values);
  const ObjectiveSetFunction fn(mod, elements);
  const PropertyReport report = property_check(fn, 1000, 13);
  CHECK(report.clean());
  CHECK(report.worst_submodularity_margin >= 0.0);
  CHECK(report.worst_monotonicity_margin >= 0.0);
}

TEST_CASE("bijection search on hand-built partition instances") {
  const MatroidSpec matroid = MatroidSpec::partition(
      {{"a1", "A"}, {"a2", "A"}, {"b1", "B"}},
      {{"A", 1}, {"B", 1}});
  SUBCASE("identity bijection gives k' = 0") {
    const std::vector<std::string> s = {"a1", "b1"};
    const BijectionResult r =
        bijection_k_prime(s, s, s, {}, matroid);
    CHECK(r.k_prime == 0);
    CHECK(r.valid_bijections >= 1);
  }
  SUBCASE("greedy-stage image of a buffered optimal element joins A") {
    // S* = {a1, b1}, S = {a2, b1}; a2 entered during the greedy stage
    // (S_n = {b1}), a1 sat in the buffer. phi maps a1 -> a2 within
    // category A, b1 is pinned; A = {a2} so k' = 1.
    const std::vector<std::string> s_star = {"a1", "b1"};
    const std::vector<std::string> s = {"a2", "b1"};
    const std::vector<std::string> s_n = {"b1"};
    const std::vector<std::string> b_n = {"a1", "a2"};
    const BijectionResult r = bijection_k_prime(s_star, s, s_n, b_n, matroid);
    CHECK(r.k_prime == 1);
  }
  SUBCASE("elements accepted during the stream never join A") {
    // Same sets, but a2 was accepted during the stream: A is empty by
    // definition (A is a subset of S minus S_n).
    const std::vector<std::string> s_star = {"a1", "b1"};
    const std::vector<std::string> s = {"a2", "b1"};
    const std::vector<std::string> s_n = {"a2"};
    const std::vector<std::string> b_n = {"a1"};
    const BijectionResult r = bijection_k_prime(s_star, s, s_n, b_n, matroid);
    CHECK(r.k_prime == 0);
  }
  SUBCASE("buffered optimal element mapped to a greedy-stage slot") {
    // S_n empty: a2 and b1 both enter in the greedy stage.
    const std::vector<std::string> s_star = {"a1", "b1"};
    const std::vector<std::string> s = {"a2", "b1"};
    const std::vector<std::string> s_n = {};
    const std::vector<std::string> b_n = {"a1", "b1", "a2"};
    const BijectionResult r = bijection_k_prime(s_star, s, s_n, b_n, matroid);
    // a1 in S* and B_n maps to a2 in S \ S_n -> contributes to A; b1 pinned
    // in S* and B_n with b1 in S \ S_n -> contributes too.
    CHECK(r.k_prime == 2);
  }
  SUBCASE("size mismatch is an error") {
    CHECK_THROWS_AS(bijection_k_prime(std::vector<std::string>{"a1"},
                                      std::vector<std::string>{"a2", "b1"},
                                      {}, {}, matroid),
                    ConfigError);
  }
}

TEST_CASE("downward closure verified for table matroids") {
  CHECK_THROWS_AS(
      MatroidSpec::table({{"a", "b"}}),  // {a} and {b} missing
      ConfigError);
  const MatroidSpec ok = MatroidSpec::table({{"a"}, {"b"}, {"a", "b"}});
  CHECK(ok.is_independent(std::vector<std::string>{}));
  CHECK(ok.is_independent(std::vector<std::string>{"a", "b"}));
}
