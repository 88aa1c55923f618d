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

#include <sstream>

#include <doctest.h>

#include "streamclip/errors.hpp"
#include "streamclip/stream_io.hpp"
#include "streamclip/sweep.hpp"
#include "test_support.hpp"

using namespace streamclip;
using streamclip::testing::el;

TEST_CASE("jsonl parsing accepts the documented element format") {
  std::istringstream in(
      "{\"id\":\"e1\",\"features\":{\"u1\":4.0}}\n"
      "\n"
      "{\"id\":\"e2\",\"features\":{\"u2\":1.5},\"cost\":2.0,"
      "\"category\":\"A\"}\n");
  const std::vector<Element> elements = parse_jsonl(in, "test");
  REQUIRE(elements.size() == 2);
  CHECK(elements[0].id == "e1");
  CHECK(elements[0].cost == 1.0);
  CHECK(elements[1].cost == 2.0);
  CHECK(elements[1].category == "A");
}

TEST_CASE("jsonl errors carry line numbers") {
  SUBCASE("malformed json") {
    std::istringstream in("{\"id\":\"e1\"}\nnot json\n");
    try {
      parse_jsonl(in, "bad");
      FAIL("expected IngestError");
    } catch (const IngestError& e) {
      CHECK(std::string(e.what()).find("bad:2") != std::string::npos);
    }
  }
  SUBCASE("duplicate id") {
    std::istringstream in("{\"id\":\"x\"}\n{\"id\":\"x\"}\n");
    CHECK_THROWS_AS(parse_jsonl(in, "dup"), IngestError);
  }
  SUBCASE("negative cost") {
    std::istringstream in("{\"id\":\"x\",\"cost\":-1}\n");
    CHECK_THROWS_AS(parse_jsonl(in, "neg"), IngestError);
  }
  SUBCASE("negative weight") {
    std::istringstream in("{\"id\":\"x\",\"features\":{\"u\":-2}}\n");
    CHECK_THROWS_AS(parse_jsonl(in, "neg"), IngestError);
  }
  SUBCASE("empty input is a valid empty stream") {
    std::istringstream in("");
    CHECK(parse_jsonl(in, "empty").empty());
  }
}

TEST_CASE("generated streams are deterministic per seed") {
  GenSpec spec;
  spec.n = 50;
  spec.n_features = 30;
  spec.density = 0.2;
  spec.seed = 7;
  const std::vector<Element> a = gen_stream(spec);
  const std::vector<Element> b = gen_stream(spec);
  REQUIRE(a.size() == b.size());
  std::ostringstream sa;
  std::ostringstream sb;
  write_jsonl(sa, a);
  write_jsonl(sb, b);
  CHECK(sa.str() == sb.str());
  spec.seed = 8;
  std::ostringstream sc;
  write_jsonl(sc, gen_stream(spec));
  CHECK(sa.str() != sc.str());
}

TEST_CASE("full density populates every feature") {
  GenSpec spec;
  spec.n = 5;
  spec.n_features = 6;
  spec.density = 1.0;
  for (const Element& e : gen_stream(spec)) {
    CHECK(e.features.size() == 6);
  }
}

TEST_CASE("gen validates its parameters") {
  GenSpec spec;
  spec.n = 0;
  CHECK_THROWS_AS(gen_stream(spec), ConfigError);
  spec.n = 1;
  spec.density = 0.0;
  CHECK_THROWS_AS(gen_stream(spec), ConfigError);
}

TEST_CASE("permutations are seeded bijections") {
  const auto p = permutation(100, 42);
  CHECK(p == permutation(100, 42));
  CHECK(p != permutation(100, 43));
  std::vector<bool> seen(100, false);
  for (std::size_t i : p) {
    REQUIRE(i < 100);
    REQUIRE(!seen[i]);
    seen[i] = true;
  }
}

TEST_CASE("relative utility contract") {
  CHECK(relative_utility(3.0, 3.0) == 1.0);
  CHECK(relative_utility(0.0, 0.0) == 1.0);
  CHECK(relative_utility(2.85, 3.0) == doctest::Approx(0.95));
  CHECK_THROWS_AS(relative_utility(1.0, 0.0), ConfigError);
}

TEST_CASE("json round-trip of an element keeps fields") {
  const Element e = el("x", {{"u1", 1.25}}, 2.5, "B");
  const std::string line = element_to_jsonl(e);
  std::istringstream in(line + "\n");
  const std::vector<Element> back = parse_jsonl(in, "roundtrip");
  REQUIRE(back.size() == 1);
  CHECK(back[0].id == e.id);
  CHECK(back[0].features == e.features);
  CHECK(back[0].cost == e.cost);
  CHECK(back[0].category == e.category);
}

TEST_CASE("dispatch rejects unknown algorithms and missing flags") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> stream = {el("a", {{"u1", 1.0}})};
  AlgoConfig cfg;
  cfg.algo = "does-not-exist";
  CHECK_THROWS_AS(dispatch_run(stream, fb, cfg), ConfigError);
  cfg.algo = "minibatch";
  CHECK_THROWS_AS(dispatch_run(stream, fb, cfg), ConfigError);
  cfg.algo = "naive-clipper";
  CHECK_THROWS_AS(dispatch_run(stream, fb, cfg), ConfigError);
  cfg.algo = "knapsack-clipper";
  cfg.tau_minus = 0.1;
  cfg.tau_plus = 1.0;
  CHECK_THROWS_AS(dispatch_run(stream, fb, cfg), ConfigError);
}

TEST_CASE("sweep emits one row per cell with exact lazy-greedy baseline") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> base =
      streamclip::testing::random_elements(40, 20, 0.3, 2.0, 19);
  SweepSpec spec;
  spec.variable = "order-seed";
  spec.values = {100.0};
  spec.repeats = 5;
  spec.algorithms = {"stream-clipper", "sieve", "lazy-greedy"};
  spec.base.k = 4;
  spec.base.buffer = 8;
  spec.include_timing = false;
  const std::vector<SweepRow> rows = run_sweep(base, fb, spec);
  REQUIRE(rows.size() == 15);
  for (const SweepRow& row : rows) {
    if (row.algorithm == "lazy-greedy") {
      CHECK(row.relative_utility == 1.0);
    } else {
      CHECK(row.relative_utility >= 0.0);
    }
    CHECK(row.wall_ms == 0.0);
  }
  // Determinism: the same spec yields byte-identical CSV.
  CHECK(sweep_csv(rows) == sweep_csv(run_sweep(base, fb, spec)));
  // Concurrency does not change the result.
  SweepSpec parallel = spec;
  parallel.jobs = 4;
  CHECK(sweep_csv(run_sweep(base, fb, parallel)) == sweep_csv(rows));
}

TEST_CASE("sweep over n uses prefixes and per-repeat orders") {
  const Objective fb = Objective::feature_based();
  const std::vector<Element> base =
      streamclip::testing::random_elements(30, 15, 0.3, 2.0, 23);
  SweepSpec spec;
  spec.variable = "n";
  spec.values = {10.0, 20.0, 30.0};
  spec.repeats = 2;
  spec.algorithms = {"stream-clipper"};
  spec.base.k = 3;
  spec.base.buffer = 6;
  spec.include_timing = false;
  const std::vector<SweepRow> rows = run_sweep(base, fb, spec);
  REQUIRE(rows.size() == 6);
  CHECK_THROWS_AS([&] {
    SweepSpec bad = spec;
    bad.values = {31.0};
    run_sweep(base, fb, bad);
  }(), ConfigError);
}

TEST_CASE("csv formatting uses dots and nine significant digits") {
  CHECK(format_number(0.1234567891234) == "0.123456789");
  CHECK(format_number(3.0) == "3");
  CHECK(format_number(12345678912.0) == "1.23456789e+10");
  SweepRow row;
  row.algorithm = "greedy";
  row.variable = "fhat";
  row.value = 1.5;
  row.objective = 2.0 / 3.0;
  row.relative_utility = 0.95;
  const std::string csv = sweep_csv({row});
  CHECK(csv.find("0.666666667") != std::string::npos);
  CHECK(csv.find("algorithm,variable,value,repeat,seed,objective,"
                 "relative_utility,evals,memory_units,wall_ms") !=
        std::string::npos);
}
