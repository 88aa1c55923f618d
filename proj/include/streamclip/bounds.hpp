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

#ifndef STREAMCLIP_BOUNDS_HPP
#define STREAMCLIP_BOUNDS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "streamclip/run_result.hpp"

namespace streamclip {

// Inputs of the data-dependent lower bound: the optimum f*, the budget k,
// the count k_n of optimal elements rejected outright, the streamed
// solution size s_n = |S_n|, and the (final) thresholds. k_n is integral
// in reports but the bound treats it as real-valued.
struct BoundInputs {
  double f_star = 0.0;
  int k = 1;
  double k_n = 0.0;
  int s_n = 0;
  double tau_minus = 0.0;
  double tau_plus = 0.0;
};

enum class BoundCase { kCase1 = 1, kCase2 = 2, kCase3 = 3 };

struct BoundReport {
  BoundCase bound_case = BoundCase::kCase1;
  double bound = 0.0;
  BoundInputs inputs;
  bool half_guarantee = false;
  bool one_minus_inv_e_guarantee = false;
  // Whether the run this report certifies satisfied the analysis
  // preconditions (full greedy fill for cases 2/3, no forced evictions).
  bool preconditions_met = true;
  std::string precondition_note;
};

// g(k_n) = (1 - E)(f* - k_n tau-) + E s_n tau+ with
// E = exp(-(k - s_n)/(k - k_n)); k_n = k uses the closed form f* - k tau-.
double g_eval(const BoundInputs& in);

// (dg/dk_n, d^2g/dk_n^2), treating k_n as real. Throws ConfigError at
// k_n = k where the formulas are singular.
std::pair<double, double> g_derivatives(const BoundInputs& in);

struct GMinResult {
  double value = 0.0;
  bool at_k_n_zero = true;  // otherwise the minimum sits at k_n = k
  // Whether f* >= k_n tau- + s_n tau+ holds across all k_n in [0, k],
  // the premise under which the endpoint rule applies.
  bool precondition_uniform = true;
};

// min(g(0), g(k)) and which endpoint attains it.
GMinResult g_min(double f_star, int k, int s_n, double tau_minus,
                 double tau_plus);

// Classifies the inputs into the three bound cases (boundary equalities go
// to the lower-numbered case) and evaluates the matching closed form:
// case 1: s_n tau+; case 2: f* - k tau-; case 3: g(0).
BoundReport case_bound(const BoundInputs& in);

struct GuaranteeFlags {
  bool half = false;
  bool one_minus_inv_e = false;
};

// Case 1 with k_n > 0, tau- <= f*/(2 k_n) and tau+ >= tau- certifies
// f >= f*/2; case 2/3 with s_n = 0 certifies f >= (1 - 1/e) f*.
GuaranteeFlags corollary_check(const BoundInputs& in);

struct OrderConditionSets {
  std::optional<int> m_star;  // alpha <= 1/e branch, min of M'
  std::vector<int> m_prime;
  std::vector<int> m1;  // alpha > 1/e branch
  std::vector<int> m2;
  std::vector<int> m;
};

// Scans m in [1, n] for the threshold/order conditions that certify an
// approximation factor 1 - alpha. Throws ConfigError unless
// 0 <= alpha <= 1/2.
OrderConditionSets order_condition_sets(double alpha, double tau_minus,
                                        double tau_plus, double f_star, int k,
                                        int n);

// Builds BoundInputs from a clipper run's final thresholds plus
// oracle-provided f* and k_n, and returns the case bound. Callers assert
// result.objective >= report.bound - 1e-9 when preconditions_met.
BoundReport certify_run(const RunResult& result, double f_star, int k_n);

// 1/2 [ (1 - E)(f* - beta tau-) + E alpha tau+ ] with
// E = exp(-(budget - alpha)/(budget - beta)). Throws ConfigError when
// beta >= budget.
double knapsack_bound(double f_star, double budget, double alpha, double beta,
                      double tau_minus, double tau_plus);

// 1/2 [ f* - (k - k' - s_n) tau+ ].
double matroid_bound(double f_star, int k, int k_prime, int s_n,
                     double tau_plus);

}  // namespace streamclip

#endif  // STREAMCLIP_BOUNDS_HPP
