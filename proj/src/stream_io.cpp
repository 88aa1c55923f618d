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

#include "streamclip/stream_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "streamclip/errors.hpp"

namespace streamclip {

namespace {

// 53-bit uniform in [0, 1) from raw generator output, so streams do not
// depend on the standard library's distribution implementations.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Element element_from_json(const nlohmann::json& obj, const std::string& where) {
  if (!obj.is_object()) {
    throw IngestError(where + ": expected a JSON object");
  }
  if (!obj.contains("id") || !obj["id"].is_string()) {
    throw IngestError(where + ": missing string field 'id'");
  }
  std::vector<std::pair<std::string, double>> features;
  if (obj.contains("features")) {
    if (!obj["features"].is_object()) {
      throw IngestError(where + ": 'features' must be an object");
    }
    for (const auto& [key, value] : obj["features"].items()) {
      if (!value.is_number()) {
        throw IngestError(where + ": feature '" + key + "' must be a number");
      }
      features.emplace_back(key, value.get<double>());
    }
  }
  double cost = 1.0;
  if (obj.contains("cost")) {
    if (!obj["cost"].is_number()) {
      throw IngestError(where + ": 'cost' must be a number");
    }
    cost = obj["cost"].get<double>();
  }
  std::string category;
  if (obj.contains("category")) {
    if (!obj["category"].is_string()) {
      throw IngestError(where + ": 'category' must be a string");
    }
    category = obj["category"].get<std::string>();
  }
  try {
    return make_element(obj["id"].get<std::string>(), std::move(features),
                        cost, std::move(category));
  } catch (const IngestError& e) {
    throw IngestError(where + ": " + e.what());
  }
}

}  // namespace

std::vector<Element> parse_jsonl(std::istream& in, const std::string& name) {
  std::vector<Element> elements;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw IngestError(where + ": " + e.what());
    }
    Element e = element_from_json(obj, where);
    if (!seen.insert(e.id).second) {
      throw IngestError(where + ": duplicate element id '" + e.id + "'");
    }
    elements.push_back(std::move(e));
  }
  return elements;
}

std::vector<Element> ingest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IngestError("cannot open element file '" + path + "'");
  }
  return parse_jsonl(in, path);
}

std::string element_to_jsonl(const Element& e) {
  nlohmann::json obj;
  obj["id"] = e.id;
  nlohmann::json features = nlohmann::json::object();
  for (const auto& [u, w] : e.features) features[u] = w;
  obj["features"] = features;
  if (e.cost != 1.0) obj["cost"] = e.cost;
  if (!e.category.empty()) obj["category"] = e.category;
  return obj.dump();
}

void write_jsonl(std::ostream& out, const std::vector<Element>& elements) {
  for (const Element& e : elements) out << element_to_jsonl(e) << "\n";
}

std::vector<Element> gen_stream(const GenSpec& spec) {
  if (spec.n < 1 || spec.n_features < 1) {
    throw ConfigError("gen: n and n_features must be >= 1");
  }
  if (spec.density <= 0.0 || spec.density > 1.0) {
    throw ConfigError("gen: density must lie in (0, 1]");
  }
  if (spec.weight_scale <= 0.0) {
    throw ConfigError("gen: weight_scale must be > 0");
  }
  if (spec.cost_min <= 0.0 || spec.cost_max < spec.cost_min) {
    throw ConfigError("gen: need 0 < cost_min <= cost_max");
  }
  std::mt19937_64 rng(spec.seed);
  const int id_width =
      static_cast<int>(std::to_string(spec.n).size());
  std::vector<Element> elements;
  elements.reserve(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    std::string id = std::to_string(i + 1);
    id.insert(0, static_cast<std::size_t>(id_width) - id.size(), '0');
    id.insert(0, "e");
    std::vector<std::pair<std::string, double>> features;
    for (int u = 0; u < spec.n_features; ++u) {
      if (uniform01(rng) < spec.density) {
        // (0, weight_scale]; never exactly zero.
        const double w = spec.weight_scale * (1.0 - uniform01(rng));
        features.emplace_back("u" + std::to_string(u + 1), w);
      }
    }
    double cost = spec.cost_min;
    if (spec.cost_max > spec.cost_min) {
      cost = spec.cost_min + (spec.cost_max - spec.cost_min) * uniform01(rng);
    }
    std::string category;
    if (spec.n_categories > 0) {
      category = "c" + std::to_string(i % spec.n_categories + 1);
    }
    elements.push_back(
        make_element(std::move(id), std::move(features), cost, category));
  }
  return elements;
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<Element> apply_order(const std::vector<Element>& elements,
                                 std::uint64_t seed) {
  const auto order = permutation(elements.size(), seed);
  std::vector<Element> shuffled;
  shuffled.reserve(elements.size());
  for (const std::size_t i : order) shuffled.push_back(elements[i]);
  return shuffled;
}

double relative_utility(double f, double f_greedy) {
  if (f < 0.0 || f_greedy < 0.0) {
    throw ConfigError("relative_utility: utilities must be >= 0");
  }
  if (f_greedy == 0.0) {
    if (f > 0.0) {
      throw ConfigError(
          "relative_utility: positive utility against a zero greedy "
          "baseline; the objective is broken");
    }
    return 1.0;
  }
  return f / f_greedy;
}

nlohmann::json run_result_to_json(const RunResult& result,
                                  bool include_timing) {
  nlohmann::json j;
  j["algorithm"] = result.algorithm;
  j["k"] = result.k;
  j["solution_ids"] = result.solution_ids;
  j["objective"] = result.objective;
  j["stream_solution_ids"] = result.stream_solution_ids;
  j["final_buffer_ids"] = result.final_buffer_ids;
  j["fhat_initial"] = result.fhat_initial;
  j["fhat_final"] = result.fhat_final;
  nlohmann::json t;
  t["evaluations"] = result.telemetry.evaluations;
  t["swaps"] = result.telemetry.swaps;
  t["cleanings"] = result.telemetry.cleanings;
  t["rejections"] = result.telemetry.rejections;
  t["forced_evictions"] = result.telemetry.forced_evictions;
  t["peak_stored_elements"] = result.telemetry.peak_stored_elements;
  t["memory_units"] = result.telemetry.memory_units;
  t["stream_solution_size"] = result.telemetry.stream_solution_size;
  t["final_buffer_size"] = result.telemetry.final_buffer_size;
  t["tau_minus_final"] = result.telemetry.tau_minus_final;
  t["tau_plus_final"] = result.telemetry.tau_plus_final;
  t["wall_ms"] = include_timing ? result.telemetry.wall_ms : 0.0;
  j["telemetry"] = t;
  j["order_rng"] = kRngId;
  if (!result.rejected_log.empty()) {
    nlohmann::json log = nlohmann::json::array();
    for (const RejectedRecord& r : result.rejected_log) {
      log.push_back({{"id", r.id},
                     {"tau_minus", r.tau_minus},
                     {"gain", r.gain},
                     {"arrival", r.arrival}});
    }
    j["rejected_log"] = log;
  }
  if (result.knapsack_alpha.has_value()) {
    j["knapsack"] = {{"alpha", *result.knapsack_alpha},
                     {"s_plus_ids", result.s_plus_ids},
                     {"solution_cost", result.solution_cost}};
  } else if (result.algorithm == "knapsack-clipper") {
    j["knapsack"] = {{"solution_cost", result.solution_cost}};
  }
  return j;
}

nlohmann::json bound_report_to_json(const BoundReport& report) {
  nlohmann::json j;
  j["case"] = "case" + std::to_string(static_cast<int>(report.bound_case));
  j["bound"] = report.bound;
  j["inputs"] = {{"f_star", report.inputs.f_star},
                 {"k", report.inputs.k},
                 {"k_n", report.inputs.k_n},
                 {"s_n", report.inputs.s_n},
                 {"tau_minus", report.inputs.tau_minus},
                 {"tau_plus", report.inputs.tau_plus}};
  nlohmann::json guarantees = nlohmann::json::array();
  if (report.half_guarantee) guarantees.push_back("half");
  if (report.one_minus_inv_e_guarantee) {
    guarantees.push_back("one-minus-1/e");
  }
  j["guarantees"] = guarantees;
  j["preconditions_met"] = report.preconditions_met;
  if (!report.precondition_note.empty()) {
    j["precondition_note"] = report.precondition_note;
  }
  return j;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace streamclip
