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

#include "streamclip/errors.hpp"
#include "streamclip/objective.hpp"
#include "test_support.hpp"

using namespace streamclip;
using streamclip::testing::el;
using streamclip::testing::eval_subset;
using streamclip::testing::random_elements;

TEST_CASE("empty state evaluates to zero for both kinds") {
  const Objective fb = Objective::feature_based();
  CHECK(SolutionState(fb).value() == 0.0);
  const Objective mod = Objective::modular({{"a", 3.0}});
  CHECK(SolutionState(mod).value() == 0.0);
}

TEST_CASE("single element value is the root of its weight") {
  const Objective fb = Objective::feature_based();
  SolutionState s(fb);
  s.commit(el("a", {{"u1", 4.0}}));
  CHECK(s.value() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("shared features accumulate under the root") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> elements = {el("a", {{"u1", 4.0}}),
                                         el("b", {{"u1", 5.0}})};
  // Oracle: sqrt(4 + 5) recomputed from scratch.
  const double expected = eval_subset(fb, elements, {0, 1});
  CHECK(expected == doctest::Approx(3.0).epsilon(1e-12));
  SolutionState s(fb);
  s.commit(elements[0]);
  s.commit(elements[1]);
  CHECK(s.value() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gain touches only the element's features") {
  const Objective fb = Objective::feature_based();
  SolutionState s(fb);
  s.commit(el("a", {{"u1", 4.0}}));
  CHECK(s.gain(el("b", {{"u1", 5.0}})) == doctest::Approx(1.0));  // 3 - 2
  CHECK(s.gain(el("c", {{"u2", 1.0}})) == doctest::Approx(1.0));  // sqrt(1)
}

TEST_CASE("diminishing returns via full re-evaluation") {
  const Objective fb = Objective::feature_based();
  const Element b = el("b", {{"u1", 5.0}});
  SolutionState empty(fb);
  const double gain_empty = empty.gain(b);
  CHECK(gain_empty == doctest::Approx(std::sqrt(5.0)));
  SolutionState with_a(fb);
  with_a.commit(el("a", {{"u1", 4.0}}));
  CHECK(gain_empty >= with_a.gain(b));
  CHECK(with_a.gain(b) == doctest::Approx(1.0));
}

TEST_CASE("duplicate commits and gains are rejected") {
  const Objective fb = Objective::feature_based();
  SolutionState s(fb);
  s.commit(el("a", {{"u1", 1.0}}));
  CHECK_THROWS_AS(s.commit(el("a", {{"u2", 1.0}})), DuplicateElementError);
  CHECK_THROWS_AS((void)s.gain(el("a", {{"u2", 1.0}})), DuplicateElementError);
}

TEST_CASE("swap_value equals from-scratch evaluation and leaves state intact") {
  const Objective fb = Objective::feature_based();
  SolutionState s(fb);
  s.commit(el("a", {{"u1", 4.0}}));
  CHECK(s.swap_value(el("v", {{"u1", 9.0}}), "a") == doctest::Approx(3.0));
  CHECK(s.value() == doctest::Approx(2.0));

  const std::vector<Element> elements = {el("a", {{"u1", 4.0}}),
                                         el("b", {{"u1", 5.0}}),
                                         el("c", {{"u2", 1.0}})};
  SolutionState ab(fb);
  ab.commit(elements[0]);
  ab.commit(elements[1]);
  const double oracle = eval_subset(fb, elements, {0, 2});  // f({a, c})
  CHECK(ab.swap_value(elements[2], "b") ==
        doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle == doctest::Approx(3.0));

  // Swapping in a feature-identical element keeps the value.
  SolutionState s2(fb);
  s2.commit(el("a", {{"u1", 4.0}, {"u2", 0.5}}));
  const Element twin = el("t", {{"u1", 4.0}, {"u2", 0.5}});
  CHECK(s2.swap_value(twin, "a") == doctest::Approx(s2.value()).epsilon(1e-12));
}

TEST_CASE("swap_value errors on absent out or present in") {
  const Objective fb = Objective::feature_based();
  SolutionState s(fb);
  s.commit(el("a", {{"u1", 4.0}}));
  CHECK_THROWS_AS((void)s.swap_value(el("v", {{"u1", 1.0}}), "zz"),
                  DuplicateElementError);
  CHECK_THROWS_AS((void)s.swap_value(el("a", {{"u1", 1.0}}), "a"),
                  DuplicateElementError);
}

TEST_CASE("hundred-commit chain stays within 1e-9 of the rebuild oracle") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> pool = random_elements(100, 40, 0.3, 2.0, 17);
  SolutionState s(fb);
  std::vector<std::size_t> committed;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    s.commit(pool[i]);
    committed.push_back(i);
    const double oracle = eval_subset(fb, pool, committed);
    REQUIRE(std::abs(s.value() - oracle) <= 1e-9);
  }
  // Accumulators match an exact from-scratch accumulation.
  std::unordered_map<std::string, double> acc;
  for (const Element& e : pool) {
    for (const auto& [u, w] : e.features) acc[u] += w;
  }
  for (const auto& [u, c] : acc) {
    REQUIRE(std::abs(s.accumulators().at(u) - c) <= 1e-9);
  }
}

TEST_CASE("commit_swap chains agree with the rebuild oracle") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> pool = random_elements(60, 25, 0.35, 1.5, 23);
  SolutionState s(fb);
  for (int i = 0; i < 10; ++i) s.commit(pool[static_cast<std::size_t>(i)]);
  std::mt19937_64 rng(99);
  std::vector<std::size_t> inside(10);
  for (std::size_t i = 0; i < 10; ++i) inside[i] = i;
  std::size_t next_outside = 10;
  for (int round = 0; round < 40; ++round) {
    const std::size_t slot = rng() % inside.size();
    const std::size_t in = next_outside++;
    if (in >= pool.size()) break;
    s.commit_swap(pool[in], pool[inside[slot]].id);
    inside[slot] = in;
    const double oracle = eval_subset(fb, pool, inside);
    REQUIRE(std::abs(s.value() - oracle) <= 1e-9);
  }
}

TEST_CASE("modular objective sums its values and greedy structure is exact") {
  const Objective mod = Objective::modular({{"a", 3.0}, {"b", 2.0}});
  SolutionState s(mod);
  CHECK(s.gain(el("a", {})) == doctest::Approx(3.0));
  s.commit(el("a", {}));
  s.commit(el("b", {}));
  CHECK(s.value() == doctest::Approx(5.0));
  CHECK_THROWS_AS(Objective::modular({{"x", -1.0}}), ConfigError);
}

TEST_CASE("zero feature weights are dropped at construction") {
  const Element e = el("a", {{"u1", 0.0}, {"u2", 2.0}});
  CHECK(e.features.size() == 1);
  CHECK(e.features[0].first == "u2");
  CHECK_THROWS_AS(make_element("bad", {{"u1", -1.0}}), IngestError);
  CHECK_THROWS_AS(make_element("bad", {{"u1", 1.0}}, 0.0), IngestError);
  CHECK_THROWS_AS(make_element("bad", {{"u1", 1.0}, {"u1", 2.0}}),
                  IngestError);
}

TEST_CASE("monotonicity and submodularity hold on random pairs") {
  const Objective fb = Objective::feature_based();
  std::mt19937_64 rng(4242);
  int checked = 0;
  while (checked < 2000) {
    const std::vector<Element> pool = random_elements(
        10, 6, 0.5, 2.0, rng());
    // A subset of B subset of pool minus v.
    std::vector<std::size_t> a_idx;
    std::vector<std::size_t> b_idx;
    for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
      if (rng() % 2) {
        b_idx.push_back(i);
        if (rng() % 2) a_idx.push_back(i);
      }
    }
    const double fa = eval_subset(fb, pool, a_idx);
    const double fb_val = eval_subset(fb, pool, b_idx);
    auto with_v = [&](std::vector<std::size_t> idx) {
      idx.push_back(pool.size() - 1);
      return eval_subset(fb, pool, idx);
    };
    const double gain_a = with_v(a_idx) - fa;
    const double gain_b = with_v(b_idx) - fb_val;
    REQUIRE(gain_a >= -1e-9);
    REQUIRE(gain_b >= -1e-9);
    REQUIRE(gain_a >= gain_b - 1e-9);
    ++checked;
  }
}
