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

#include "streamclip/sweep.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "streamclip/errors.hpp"

namespace streamclip {

RunResult dispatch_run(std::span<const Element> stream,
                       const Objective& objective, const AlgoConfig& config) {
  const std::string& a = config.algo;
  if (a == "naive-clipper") {
    if (!config.tau_minus || !config.tau_plus) {
      throw ConfigError("naive-clipper requires --tau-minus and --tau-plus");
    }
    return naive_stream_clipper(
        stream, objective,
        {config.k, *config.tau_minus, *config.tau_plus, config.test_mode});
  }
  if (a == "stream-clipper") {
    StreamClipperParams p;
    p.k = config.k;
    p.buffer_capacity = config.buffer;
    p.fhat = config.fhat;
    p.tau_minus = config.tau_minus;
    p.tau_plus = config.tau_plus;
    p.delta_tau = config.delta_tau;
    p.test_mode = config.test_mode;
    return stream_clipper(stream, objective, p);
  }
  if (a == "greedy") return greedy(stream, objective, config.k);
  if (a == "lazy-greedy") return lazy_greedy(stream, objective, config.k);
  if (a == "sieve") {
    SieveParams p;
    p.k = config.k;
    p.epsilon = config.epsilon;
    p.max_instances = config.max_instances;
    p.fixed_estimate = config.fixed_estimate;
    return sieve_streaming(stream, objective, p);
  }
  if (a == "swap") {
    return swap_streaming(stream, objective, {config.k, config.swap_c});
  }
  if (a == "minibatch") {
    if (!config.declared_n) {
      throw ConfigError("minibatch requires --n (the true stream length)");
    }
    return minibatch_secretary(stream, objective, config.k,
                               *config.declared_n);
  }
  if (a == "knapsack-clipper") {
    if (!config.budget) throw ConfigError("knapsack-clipper requires --budget");
    if (!config.tau_minus || !config.tau_plus) {
      throw ConfigError("knapsack-clipper requires --tau-minus and --tau-plus");
    }
    return knapsack_clipper(
        stream, objective, {*config.budget},
        {*config.tau_minus, *config.tau_plus, config.test_mode});
  }
  if (a == "matroid-clipper") {
    if (!config.matroid) throw ConfigError("matroid-clipper requires --matroid");
    if (!config.tau_minus || !config.tau_plus) {
      throw ConfigError("matroid-clipper requires --tau-minus and --tau-plus");
    }
    MatroidClipperParams p;
    if (config.k_set) p.k = config.k;
    p.tau_minus = *config.tau_minus;
    p.tau_plus = *config.tau_plus;
    p.test_mode = config.test_mode;
    return matroid_clipper(stream, objective, *config.matroid, p);
  }
  throw ConfigError("unknown algorithm '" + a + "'");
}

namespace {

struct CellGroup {
  double value = 0.0;
  int value_index = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
  std::vector<Element> stream;
};

CellGroup make_group(const std::vector<Element>& base, const SweepSpec& spec,
                     int value_index, int repeat) {
  CellGroup g;
  g.value = spec.values[static_cast<std::size_t>(value_index)];
  g.value_index = value_index;
  g.repeat = repeat;
  if (spec.variable == "order-seed") {
    g.seed = static_cast<std::uint64_t>(g.value) +
             static_cast<std::uint64_t>(repeat);
    g.stream = apply_order(base, g.seed);
  } else if (spec.variable == "n") {
    const auto n = static_cast<std::size_t>(g.value);
    if (n < 1 || n > base.size()) {
      throw ConfigError("sweep: n value out of range of the base stream");
    }
    g.seed = spec.seed + static_cast<std::uint64_t>(repeat);
    std::vector<Element> prefix(base.begin(),
                                base.begin() + static_cast<std::ptrdiff_t>(n));
    g.stream = apply_order(prefix, g.seed);
  } else if (spec.variable == "buffer_b" || spec.variable == "fhat") {
    g.seed = spec.seed + static_cast<std::uint64_t>(repeat);
    g.stream = apply_order(base, g.seed);
  } else {
    throw ConfigError("sweep: unknown variable '" + spec.variable + "'");
  }
  return g;
}

AlgoConfig cell_config(const SweepSpec& spec, const std::string& algo,
                       double value, std::size_t stream_size) {
  AlgoConfig cfg = spec.base;
  cfg.algo = algo;
  if (spec.variable == "buffer_b") cfg.buffer = static_cast<int>(value);
  if (spec.variable == "fhat") {
    cfg.fhat = value;
    cfg.fixed_estimate = value;  // the single-threshold analogue for sieve
  }
  if (algo == "minibatch") {
    cfg.declared_n = static_cast<std::int64_t>(stream_size);
  }
  return cfg;
}

}  // namespace

std::vector<SweepRow> run_sweep(const std::vector<Element>& base,
                                const Objective& objective,
                                const SweepSpec& spec) {
  if (spec.values.empty() || spec.algorithms.empty()) {
    throw ConfigError("sweep: need at least one value and one algorithm");
  }
  if (spec.repeats < 1) throw ConfigError("sweep: repeats must be >= 1");
  const int jobs = std::max(1, spec.jobs);

  const std::size_t n_groups =
      spec.values.size() * static_cast<std::size_t>(spec.repeats);
  struct GroupRows {
    std::vector<SweepRow> rows;
  };
  std::vector<GroupRows> results(n_groups);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t g = next.fetch_add(1);
      if (g >= n_groups || failed.load()) break;
      try {
        const int value_index = static_cast<int>(g / spec.repeats);
        const int repeat = static_cast<int>(g % spec.repeats);
        CellGroup group = make_group(base, spec, value_index, repeat);
        const RunResult baseline =
            lazy_greedy(group.stream, objective, spec.base.k);
        for (const std::string& algo : spec.algorithms) {
          const AlgoConfig cfg =
              cell_config(spec, algo, group.value, group.stream.size());
          const RunResult run = algo == "lazy-greedy"
                                    ? baseline
                                    : dispatch_run(group.stream, objective, cfg);
          SweepRow row;
          row.algorithm = algo;
          row.variable = spec.variable;
          row.value = group.value;
          row.repeat = repeat;
          row.seed = group.seed;
          row.objective = run.objective;
          row.relative_utility =
              relative_utility(run.objective, baseline.objective);
          row.evaluations = run.telemetry.evaluations;
          row.memory_units = run.telemetry.memory_units;
          row.wall_ms = spec.include_timing ? run.telemetry.wall_ms : 0.0;
          results[g].rows.push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) throw ConfigError("sweep: " + first_error);

  // Emit in (algorithm, value, repeat) order regardless of scheduling.
  std::vector<SweepRow> rows;
  rows.reserve(n_groups * spec.algorithms.size());
  for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
    for (std::size_t g = 0; g < n_groups; ++g) {
      rows.push_back(results[g].rows[a]);
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "algorithm,variable,value,repeat,seed,objective,relative_utility,"
         "evals,memory_units,wall_ms\n";
  for (const SweepRow& r : rows) {
    out << r.algorithm << ',' << r.variable << ',' << format_number(r.value)
        << ',' << r.repeat << ',' << r.seed << ','
        << format_number(r.objective) << ','
        << format_number(r.relative_utility) << ',' << r.evaluations << ','
        << r.memory_units << ',' << format_number(r.wall_ms) << '\n';
  }
  return out.str();
}

}  // namespace streamclip
