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

#include "streamclip/bounds.hpp"

#include <cmath>

#include "streamclip/errors.hpp"

namespace streamclip {

namespace {

// The bound treats k_n as a real; g_eval and g_derivatives admit values a
// touch outside [0, k] so finite-difference probes stay legal.
void validate_curve(const BoundInputs& in) {
  if (in.k < 1) throw ConfigError("bound inputs: k must be >= 1");
  if (in.k_n > in.k) {
    throw ConfigError("bound inputs: k_n must not exceed k");
  }
  if (in.s_n < 0 || in.s_n > in.k) {
    throw ConfigError("bound inputs: s_n must lie in [0, k]");
  }
  if (!std::isfinite(in.f_star) || in.f_star < 0.0) {
    throw ConfigError("bound inputs: f_star must be finite and >= 0");
  }
  if (in.tau_minus > in.tau_plus) {
    throw ConfigError("bound inputs: tau_minus must be <= tau_plus");
  }
}

void validate(const BoundInputs& in) {
  validate_curve(in);
  if (in.k_n < 0.0) {
    throw ConfigError("bound inputs: k_n must lie in [0, k]");
  }
}

double exp_factor(double k, double s_n, double k_n) {
  return std::exp(-(k - s_n) / (k - k_n));
}

}  // namespace

double g_eval(const BoundInputs& in) {
  validate_curve(in);
  if (in.k_n == static_cast<double>(in.k)) {
    return in.f_star - in.k * in.tau_minus;
  }
  const double e = exp_factor(in.k, in.s_n, in.k_n);
  return (1.0 - e) * (in.f_star - in.k_n * in.tau_minus) +
         e * in.s_n * in.tau_plus;
}

std::pair<double, double> g_derivatives(const BoundInputs& in) {
  validate_curve(in);
  if (in.k_n == static_cast<double>(in.k)) {
    throw ConfigError("g_derivatives: singular at k_n = k");
  }
  const double k = in.k;
  const double s = in.s_n;
  const double kn = in.k_n;
  const double e = exp_factor(k, s, kn);
  const double gap = k - kn;
  const double ratio = (k - s) / (gap * gap);
  const double first =
      (e * (1.0 - kn * ratio) - 1.0) * in.tau_minus +
      e * ratio * (in.f_star - s * in.tau_plus);
  // Sign-carrying bracket shared with the endpoint analysis; the prefactor
  // divides by (k - k_n)^4 so that this is the exact derivative of `first`.
  const double bracket =
      (k - 2.0 * kn + s) * (in.f_star - s * in.tau_plus) -
      (2.0 * k * k - 3.0 * k * kn + s * kn) * in.tau_minus;
  const double second = e * (k - s) / (gap * gap * gap * gap) * bracket;
  return {first, second};
}

GMinResult g_min(double f_star, int k, int s_n, double tau_minus,
                 double tau_plus) {
  BoundInputs at_zero{f_star, k, 0.0, s_n, tau_minus, tau_plus};
  BoundInputs at_k{f_star, k, static_cast<double>(k), s_n, tau_minus,
                   tau_plus};
  const double g0 = g_eval(at_zero);
  const double gk = g_eval(at_k);
  GMinResult result;
  result.at_k_n_zero = g0 <= gk;
  result.value = result.at_k_n_zero ? g0 : gk;
  // Worst case of k_n tau- + s_n tau+ over k_n in [0, k] sits at an
  // endpoint of the interval since it is linear in k_n.
  const double worst =
      s_n * tau_plus + k * std::max(tau_minus, 0.0);
  result.precondition_uniform = f_star >= worst;
  return result;
}

BoundReport case_bound(const BoundInputs& in) {
  validate(in);
  BoundReport report;
  report.inputs = in;
  const double c1 = in.k_n * in.tau_minus + in.s_n * in.tau_plus;
  const double c3 =
      std::exp(1.0 - static_cast<double>(in.s_n) / in.k) * in.k *
          in.tau_minus +
      in.s_n * in.tau_plus;
  if (in.f_star <= c1) {
    report.bound_case = BoundCase::kCase1;
    report.bound = in.s_n * in.tau_plus;
  } else if (in.f_star <= c3) {
    report.bound_case = BoundCase::kCase2;
    report.bound = in.f_star - in.k * in.tau_minus;
  } else {
    report.bound_case = BoundCase::kCase3;
    const double e = std::exp(-1.0 + static_cast<double>(in.s_n) / in.k);
    report.bound = (1.0 - e) * in.f_star + e * in.s_n * in.tau_plus;
  }
  const GuaranteeFlags flags = corollary_check(in);
  report.half_guarantee = flags.half;
  report.one_minus_inv_e_guarantee = flags.one_minus_inv_e;
  return report;
}

GuaranteeFlags corollary_check(const BoundInputs& in) {
  validate(in);
  GuaranteeFlags flags;
  const double c1 = in.k_n * in.tau_minus + in.s_n * in.tau_plus;
  if (in.f_star <= c1) {
    if (in.k_n > 0.0 && in.tau_minus <= in.f_star / (2.0 * in.k_n) &&
        in.tau_plus >= in.tau_minus) {
      flags.half = true;
    }
  } else if (in.s_n == 0) {
    flags.one_minus_inv_e = true;
  }
  return flags;
}

OrderConditionSets order_condition_sets(double alpha, double tau_minus,
                                        double tau_plus, double f_star, int k,
                                        int n) {
  if (alpha < 0.0 || alpha > 0.5) {
    throw ConfigError("order_condition_sets: alpha must lie in [0, 1/2]");
  }
  if (k < 1 || n < 1) {
    throw ConfigError("order_condition_sets: k and n must be >= 1");
  }
  OrderConditionSets sets;
  const double inv_e = std::exp(-1.0);
  if (alpha <= inv_e) {
    for (int m = 1; m <= n; ++m) {
      const double e = std::exp(1.0 - static_cast<double>(m) / k);
      const bool plus_ok = tau_plus >= (1.0 - e * alpha) * f_star / m;
      const bool minus_ok = tau_minus <= (f_star - m * tau_plus) / (e * k);
      if (plus_ok && minus_ok) sets.m_prime.push_back(m);
    }
    if (!sets.m_prime.empty()) sets.m_star = sets.m_prime.front();
  } else {
    for (int m = 1; m <= n; ++m) {
      const double e = std::exp(1.0 - static_cast<double>(m) / k);
      if ((1.0 - alpha) * f_star / k <= tau_plus &&
          tau_plus <= f_star / (m + k)) {
        sets.m1.push_back(m);
      }
      if (tau_minus <= (f_star - m * tau_plus) / (e * k)) {
        sets.m2.push_back(m);
      }
      const bool in_window = (f_star - e * k * tau_minus) / m < tau_plus &&
                             tau_plus < (f_star - k * tau_minus) / m;
      if (in_window && tau_minus <= alpha * f_star / k) {
        sets.m.push_back(m);
      }
    }
  }
  return sets;
}

BoundReport certify_run(const RunResult& result, double f_star, int k_n) {
  if (result.k < 1) {
    throw ConfigError("certify_run: result carries no cardinality budget");
  }
  BoundInputs in;
  in.f_star = f_star;
  in.k = result.k;
  in.k_n = k_n;
  in.s_n = result.telemetry.stream_solution_size;
  in.tau_minus = result.telemetry.tau_minus_final;
  in.tau_plus = result.telemetry.tau_plus_final;
  BoundReport report = case_bound(in);
  if (result.telemetry.forced_evictions > 0) {
    report.preconditions_met = false;
    report.precondition_note =
        "buffer cleaning evicted elements above tau_minus";
  }
  if (report.bound_case != BoundCase::kCase1 &&
      static_cast<int>(result.solution_ids.size()) < result.k) {
    report.preconditions_met = false;
    if (!report.precondition_note.empty()) report.precondition_note += "; ";
    report.precondition_note +=
        "final solution smaller than k (buffer exhausted early)";
  }
  return report;
}

double knapsack_bound(double f_star, double budget, double alpha, double beta,
                      double tau_minus, double tau_plus) {
  if (beta < 0.0 || beta >= budget) {
    throw ConfigError("knapsack_bound: beta must lie in [0, budget)");
  }
  if (alpha > budget) {
    throw ConfigError("knapsack_bound: alpha must be <= budget");
  }
  const double e = std::exp(-(budget - alpha) / (budget - beta));
  return 0.5 * ((1.0 - e) * (f_star - beta * tau_minus) +
                e * alpha * tau_plus);
}

double matroid_bound(double f_star, int k, int k_prime, int s_n,
                     double tau_plus) {
  if (k_prime < 0 || s_n < 0 || k_prime + s_n > k) {
    throw ConfigError("matroid_bound: need 0 <= k' and s_n with k'+s_n <= k");
  }
  return 0.5 * (f_star - (k - k_prime - s_n) * tau_plus);
}

}  // namespace streamclip
