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

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "streamclip/bounds.hpp"
#include "streamclip/errors.hpp"
#include "streamclip/oracle.hpp"
#include "streamclip/stream_io.hpp"
#include "streamclip/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIngest = 2;
constexpr int kExitCertFail = 3;
constexpr int kExitOracleRefusal = 4;

using namespace streamclip;

std::vector<Element> load_stream(const std::string& input) {
  if (input == "-") return parse_jsonl(std::cin, "<stdin>");
  return ingest(input);
}

struct CommonFlags {
  std::string input;
  AlgoConfig config;
  std::string matroid_path;
  std::optional<std::uint64_t> order_seed;
  bool no_timing = false;
  std::string format = "json";
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--input", flags.input,
                  "element JSON-Lines file ('-' for stdin)")
      ->required();
  cmd->add_option("--algo", flags.config.algo,
                  "naive-clipper | stream-clipper | greedy | lazy-greedy | "
                  "sieve | swap | minibatch | knapsack-clipper | "
                  "matroid-clipper");
  cmd->add_option("--k", flags.config.k, "cardinality budget");
  cmd->add_option("--buffer", flags.config.buffer, "buffer capacity b");
  cmd->add_option("--fhat", flags.config.fhat, "estimate of f(S*)");
  cmd->add_option("--tau-minus", flags.config.tau_minus, "lower threshold");
  cmd->add_option("--tau-plus", flags.config.tau_plus, "upper threshold");
  cmd->add_option("--delta-tau", flags.config.delta_tau,
                  "buffer-cleaning step size");
  cmd->add_option("--epsilon", flags.config.epsilon,
                  "sieve estimate grid resolution");
  cmd->add_option("--c", flags.config.swap_c, "swap-streaming constant c");
  cmd->add_option("--n", flags.config.declared_n,
                  "declared stream length (minibatch)");
  cmd->add_option("--budget", flags.config.budget, "knapsack budget");
  cmd->add_option("--matroid", flags.matroid_path,
                  "partition matroid JSON file");
  cmd->add_option("--seed", flags.order_seed,
                  "permute the stream with this order seed");
  cmd->add_option("--max-instances", flags.config.max_instances,
                  "sieve instance cap");
  cmd->add_flag("--test-mode", flags.config.test_mode,
                "record rejected elements");
  cmd->add_flag("--no-timing", flags.no_timing,
                "zero wall-clock fields for byte-stable output");
  cmd->add_option("--format", flags.format, "json | csv");
}

void finalize_config(CLI::App* cmd, CommonFlags& flags) {
  flags.config.k_set = cmd->count("--k") > 0;
  if (!flags.matroid_path.empty()) {
    std::ifstream in(flags.matroid_path);
    if (!in) {
      throw ConfigError("cannot open matroid file '" + flags.matroid_path +
                        "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    flags.config.matroid =
        std::make_shared<MatroidSpec>(MatroidSpec::from_json_text(buffer.str()));
  }
}

std::vector<Element> prepare_stream(const CommonFlags& flags) {
  std::vector<Element> stream = load_stream(flags.input);
  if (flags.order_seed.has_value()) {
    stream = apply_order(stream, *flags.order_seed);
  }
  return stream;
}

int cmd_run(CommonFlags& flags) {
  const Objective objective = Objective::feature_based();
  const std::vector<Element> stream = prepare_stream(flags);
  const RunResult result = dispatch_run(stream, objective, flags.config);
  if (flags.format == "csv") {
    const RunResult baseline = lazy_greedy(stream, objective, flags.config.k);
    std::cout << "algorithm,variable,value,repeat,seed,objective,"
                 "relative_utility,evals,memory_units,wall_ms\n"
              << result.algorithm << ",run,0,0,"
              << flags.order_seed.value_or(0) << ','
              << format_number(result.objective) << ','
              << format_number(
                     relative_utility(result.objective, baseline.objective))
              << ',' << result.telemetry.evaluations << ','
              << result.telemetry.memory_units << ','
              << format_number(flags.no_timing ? 0.0
                                               : result.telemetry.wall_ms)
              << '\n';
  } else {
    nlohmann::json j = run_result_to_json(result, !flags.no_timing);
    if (flags.order_seed.has_value()) j["order_seed"] = *flags.order_seed;
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(CommonFlags& flags, SweepSpec& spec,
              const std::string& values_csv, const std::string& algos_csv) {
  for (auto&& token : CLI::detail::split(values_csv, ',')) {
    spec.values.push_back(std::stod(token));
  }
  spec.algorithms = CLI::detail::split(algos_csv, ',');
  spec.base = flags.config;
  spec.include_timing = !flags.no_timing;
  const Objective objective = Objective::feature_based();
  const std::vector<Element> base = load_stream(flags.input);
  const std::vector<SweepRow> rows = run_sweep(base, objective, spec);
  std::cout << sweep_csv(rows);
  return kExitOk;
}

int cmd_certify(CommonFlags& flags) {
  const Objective objective = Objective::feature_based();
  const std::vector<Element> stream = prepare_stream(flags);
  flags.config.test_mode = true;
  const RunResult result = dispatch_run(stream, objective, flags.config);

  nlohmann::json out;
  out["run"] = run_result_to_json(result, !flags.no_timing);
  bool pass = true;
  std::string verdict;

  if (flags.config.algo == "knapsack-clipper") {
    const OracleResult oracle = exhaustive_max(
        stream, objective, KnapsackSpec{*flags.config.budget});
    out["f_star"] = oracle.f_star;
    out["optimal_set"] = oracle.optimal_set;
    std::set<std::string> held(result.stream_solution_ids.begin(),
                               result.stream_solution_ids.end());
    held.insert(result.final_buffer_ids.begin(),
                result.final_buffer_ids.end());
    double beta = 0.0;
    for (const Element& e : stream) {
      if (held.count(e.id)) continue;
      if (std::find(oracle.optimal_set.begin(), oracle.optimal_set.end(),
                    e.id) != oracle.optimal_set.end()) {
        beta += e.cost;
      }
    }
    out["beta"] = beta;
    out["quarter_fstar"] = oracle.f_star / 4.0;
    pass = result.objective >= oracle.f_star / 4.0 - 1e-9;
    if (result.knapsack_alpha.has_value() && beta < *flags.config.budget) {
      const double bound =
          knapsack_bound(oracle.f_star, *flags.config.budget,
                         *result.knapsack_alpha, beta,
                         *flags.config.tau_minus, *flags.config.tau_plus);
      out["alpha"] = *result.knapsack_alpha;
      out["bound"] = bound;
      pass = pass && result.objective >= bound - 1e-9;
      verdict = pass ? "PASS" : "FAIL";
    } else {
      out["note"] = "alpha/beta bound not applicable to this run";
      verdict = pass ? "PASS" : "FAIL";
    }
  } else if (flags.config.algo == "matroid-clipper") {
    const OracleResult oracle =
        exhaustive_max(stream, objective, *flags.config.matroid);
    out["f_star"] = oracle.f_star;
    out["optimal_set"] = oracle.optimal_set;
    const BijectionResult bij = bijection_k_prime(
        oracle.optimal_set, result.solution_ids, result.stream_solution_ids,
        result.final_buffer_ids, *flags.config.matroid);
    const double bound = matroid_bound(
        oracle.f_star, result.k, bij.k_prime,
        result.telemetry.stream_solution_size, *flags.config.tau_plus);
    out["k_prime"] = bij.k_prime;
    out["valid_bijections"] = bij.valid_bijections;
    out["bound"] = bound;
    pass = result.objective >= bound - 1e-9;
    verdict = pass ? "PASS" : "FAIL";
  } else {
    const OracleResult oracle = exhaustive_max(
        stream, objective, CardinalityConstraint{flags.config.k});
    const int k_n =
        compute_k_n(oracle.optimal_set, result.stream_solution_ids,
                    result.final_buffer_ids);
    const BoundReport report = certify_run(result, oracle.f_star, k_n);
    out["f_star"] = oracle.f_star;
    out["optimal_set"] = oracle.optimal_set;
    out["k_n"] = k_n;
    out["report"] = bound_report_to_json(report);
    if (!report.preconditions_met) {
      verdict = "SKIP (preconditions not met: " + report.precondition_note +
                ")";
    } else {
      pass = result.objective >= report.bound - 1e-9;
      verdict = pass ? "PASS" : "FAIL";
    }
  }
  out["objective"] = result.objective;
  std::cout << out.dump(2) << '\n';
  std::cout << verdict << '\n';
  return pass ? kExitOk : kExitCertFail;
}

int cmd_gen(const GenSpec& spec, const std::string& out_path) {
  const std::vector<Element> elements = gen_stream(spec);
  if (out_path.empty() || out_path == "-") {
    write_jsonl(std::cout, elements);
  } else {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    write_jsonl(out, elements);
  }
  return kExitOk;
}

int cmd_check(const std::string& input, int trials, std::uint64_t seed) {
  const Objective objective = Objective::feature_based();
  std::vector<Element> elements = load_stream(input);
  if (elements.size() > 16) elements.resize(16);  // keep subsets cheap
  const ObjectiveSetFunction fn(objective, elements);
  const PropertyReport report = property_check(fn, trials, seed);
  nlohmann::json j;
  j["trials"] = report.trials;
  j["monotonicity_violations"] = report.monotonicity_violations;
  j["submodularity_violations"] = report.submodularity_violations;
  j["swap_lemma_violations"] = report.swap_lemma_violations;
  j["worst_monotonicity_margin"] = report.worst_monotonicity_margin;
  j["worst_submodularity_margin"] = report.worst_submodularity_margin;
  j["worst_swap_lemma_margin"] = report.worst_swap_lemma_margin;
  std::cout << j.dump(2) << '\n';
  return report.clean() ? kExitOk : kExitCertFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming submodular maximization toolkit"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one algorithm on a stream");
  add_common_flags(run, run_flags);

  CommonFlags sweep_flags;
  SweepSpec sweep_spec;
  std::string sweep_values;
  std::string sweep_algos;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run an experiment grid, emit CSV");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--variable", sweep_spec.variable,
                    "n | buffer_b | fhat | order-seed")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required();
  sweep->add_option("--repeats", sweep_spec.repeats, "repeats per value");
  sweep->add_option("--algos", sweep_algos, "comma-separated algorithms")
      ->required();
  sweep->add_option("--order-seed-base", sweep_spec.seed,
                    "base seed for per-repeat orders");
  sweep->add_option("--jobs", sweep_spec.jobs, "concurrent sweep cells");

  CommonFlags certify_flags;
  CLI::App* certify = app.add_subcommand(
      "certify", "run a clipper, brute-force the optimum, check the bound");
  add_common_flags(certify, certify_flags);

  GenSpec gen_spec;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic stream");
  gen->add_option("--n", gen_spec.n, "number of elements")->required();
  gen->add_option("--features", gen_spec.n_features, "feature space size")
      ->required();
  gen->add_option("--density", gen_spec.density, "feature density");
  gen->add_option("--scale", gen_spec.weight_scale, "weight scale");
  gen->add_option("--seed", gen_spec.seed, "generator seed");
  gen->add_option("--cost-min", gen_spec.cost_min, "minimum cost");
  gen->add_option("--cost-max", gen_spec.cost_max, "maximum cost");
  gen->add_option("--categories", gen_spec.n_categories,
                  "assign categories round-robin");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  std::string check_input;
  int check_trials = 10000;
  std::uint64_t check_seed = 0;
  CLI::App* check =
      app.add_subcommand("check", "property-check the objective on a stream");
  check->add_option("--input", check_input, "element file")->required();
  check->add_option("--trials", check_trials, "sampled trials");
  check->add_option("--seed", check_seed, "sampler seed");

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      finalize_config(run, run_flags);
      return cmd_run(run_flags);
    }
    if (sweep->parsed()) {
      finalize_config(sweep, sweep_flags);
      return cmd_sweep(sweep_flags, sweep_spec, sweep_values, sweep_algos);
    }
    if (certify->parsed()) {
      finalize_config(certify, certify_flags);
      return cmd_certify(certify_flags);
    }
    if (gen->parsed()) return cmd_gen(gen_spec, gen_out);
    if (check->parsed()) return cmd_check(check_input, check_trials, check_seed);
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const IngestError& e) {
    std::cerr << "ingest error: " << e.what() << '\n';
    return kExitIngest;
  } catch (const OracleRefusal& e) {
    std::cerr << "oracle refusal: " << e.what() << '\n';
    return kExitOracleRefusal;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
