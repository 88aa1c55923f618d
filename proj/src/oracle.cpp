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

#include "streamclip/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "streamclip/errors.hpp"

namespace streamclip {

ObjectiveSetFunction::ObjectiveSetFunction(const Objective& objective,
                                           std::vector<Element> elements)
    : objective_(&objective), elements_(std::move(elements)) {
  ids_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    ids_.push_back(elements_[i].id);
    if (!index_.emplace(elements_[i].id, i).second) {
      throw IngestError("duplicate element id '" + elements_[i].id + "'");
    }
  }
}

double ObjectiveSetFunction::value(std::span<const std::string> ids) const {
  std::vector<Element> subset;
  subset.reserve(ids.size());
  for (const std::string& id : ids) {
    auto it = index_.find(id);
    if (it == index_.end()) {
      throw ConfigError("unknown element id '" + id + "'");
    }
    subset.push_back(elements_[it->second]);
  }
  return eval_elements(*objective_, subset);
}

TableFunction::TableFunction(std::vector<std::string> ground,
                             std::vector<double> values,
                             bool must_be_submodular)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (ground_.size() > 12) {
    throw OracleRefusal("table function: ground set exceeds 12 ids");
  }
  if (values_.size() != (std::size_t{1} << ground_.size())) {
    throw ConfigError("table function: need one value per subset");
  }
  for (std::size_t i = 0; i < ground_.size(); ++i) {
    index_.emplace(ground_[i], i);
  }
  if (values_[0] != 0.0) {
    throw ConfigError("table function: f(empty) must be 0");
  }
  if (must_be_submodular) {
    const std::uint32_t full = (1u << ground_.size()) - 1u;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      for (std::size_t v = 0; v < ground_.size(); ++v) {
        if (mask & (1u << v)) continue;
        const std::uint32_t with_v = mask | (1u << v);
        if (values_[with_v] < values_[mask] - 1e-12) {
          throw ConfigError("table function: not monotone");
        }
        for (std::size_t w = v + 1; w < ground_.size(); ++w) {
          if (mask & (1u << w)) continue;
          const std::uint32_t with_w = mask | (1u << w);
          const std::uint32_t with_both = with_v | (1u << w);
          if (values_[with_v] + values_[with_w] <
              values_[with_both] + values_[mask] - 1e-12) {
            throw ConfigError("table function: not submodular");
          }
        }
      }
    }
  }
}

double TableFunction::value(std::span<const std::string> ids) const {
  std::uint32_t mask = 0;
  for (const std::string& id : ids) {
    auto it = index_.find(id);
    if (it == index_.end()) {
      throw ConfigError("table function: unknown id '" + id + "'");
    }
    mask |= 1u << it->second;
  }
  return values_[mask];
}

namespace {

std::vector<std::string> sorted_mask_ids(std::span<const Element> elements,
                                         std::uint32_t mask) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (mask & (1u << i)) ids.push_back(elements[i].id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

OracleResult exhaustive_max(std::span<const Element> elements,
                            const Objective& objective,
                            const OracleConstraint& constraint) {
  const std::size_t n = elements.size();
  const bool cardinality =
      std::holds_alternative<CardinalityConstraint>(constraint);
  if (cardinality) {
    const int k = std::get<CardinalityConstraint>(constraint).k;
    if (n > 20 || (n > 12 && k > 4)) {
      throw OracleRefusal("exhaustive_max: instance too large (n=" +
                          std::to_string(n) + ", k=" + std::to_string(k) +
                          "); the guard is n <= 20 with k <= 4, or n <= 12");
    }
  } else if (n > 12) {
    throw OracleRefusal("exhaustive_max: instance too large (n=" +
                        std::to_string(n) + "); the guard is n <= 12");
  }

  auto feasible = [&](std::uint32_t mask) {
    if (cardinality) {
      return std::popcount(mask) <=
             std::get<CardinalityConstraint>(constraint).k;
    }
    if (std::holds_alternative<KnapsackSpec>(constraint)) {
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) cost += elements[i].cost;
      }
      return cost <= std::get<KnapsackSpec>(constraint).budget;
    }
    const auto ids = sorted_mask_ids(elements, mask);
    return std::get<MatroidSpec>(constraint).is_independent(ids);
  };

  OracleResult result;
  result.f_star = 0.0;
  result.ties = 0;
  bool have_any = false;
  std::vector<Element> subset;
  const std::uint32_t limit = n >= 32 ? 0 : (1u << n);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (!feasible(mask)) continue;
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(elements[i]);
    }
    const double f = eval_elements(objective, subset);
    if (!have_any || f > result.f_star) {
      have_any = true;
      result.f_star = f;
      result.optimal_set = sorted_mask_ids(elements, mask);
      result.ties = 1;
    } else if (f == result.f_star) {
      ++result.ties;
      auto ids = sorted_mask_ids(elements, mask);
      if (ids < result.optimal_set) result.optimal_set = std::move(ids);
    }
  }
  return result;
}

int compute_k_n(std::span<const std::string> s_star,
                std::span<const std::string> s_n,
                std::span<const std::string> b_n) {
  const std::set<std::string> in_s(s_n.begin(), s_n.end());
  const std::set<std::string> in_b(b_n.begin(), b_n.end());
  int count = 0;
  for (const std::string& id : s_star) {
    if (!in_s.count(id) && !in_b.count(id)) ++count;
  }
  return count;
}

BijectionResult bijection_k_prime(std::span<const std::string> s_star,
                                  std::span<const std::string> s,
                                  std::span<const std::string> s_n,
                                  std::span<const std::string> b_n,
                                  const MatroidSpec& matroid) {
  if (s_star.size() != s.size()) {
    throw ConfigError("bijection_k_prime: |S| (" + std::to_string(s.size()) +
                      ") != |S*| (" + std::to_string(s_star.size()) + ")");
  }
  if (s_star.size() > 10) {
    throw ConfigError("bijection_k_prime: sets exceed the search guard (10)");
  }
  std::vector<std::string> star_sorted(s_star.begin(), s_star.end());
  std::vector<std::string> s_sorted(s.begin(), s.end());
  std::sort(star_sorted.begin(), star_sorted.end());
  std::sort(s_sorted.begin(), s_sorted.end());

  const std::set<std::string> s_set(s_sorted.begin(), s_sorted.end());
  const std::set<std::string> s_n_set(s_n.begin(), s_n.end());
  const std::set<std::string> b_n_set(b_n.begin(), b_n.end());

  // S* intersect S is pinned to the identity; the remainder is searched.
  std::vector<std::string> star_rest;
  for (const std::string& id : star_sorted) {
    if (!s_set.count(id)) star_rest.push_back(id);
  }
  std::vector<std::string> s_rest;
  const std::set<std::string> star_set(star_sorted.begin(), star_sorted.end());
  for (const std::string& id : s_sorted) {
    if (!star_set.count(id)) s_rest.push_back(id);
  }

  auto exchange_ok = [&](const std::string& v, const std::string& image) {
    std::vector<std::string> swapped;
    swapped.reserve(s_sorted.size());
    for (const std::string& id : s_sorted) {
      if (id != image) swapped.push_back(id);
    }
    swapped.push_back(v);
    return matroid.is_independent(swapped);
  };

  if (!matroid.is_independent(s_sorted)) {
    throw ConfigError("bijection_k_prime: S itself is not independent");
  }

  auto k_prime_for = [&](const std::vector<std::size_t>& perm) {
    // A = {w in S \ S_n : phi^-1(w) in S* intersect B_n}. Pinned ids map to
    // themselves; searched ids star_rest[i] map to s_rest[perm[i]].
    int a_count = 0;
    int c_count = 0;
    for (const std::string& id : star_sorted) {
      if (!s_set.count(id)) continue;  // pinned: phi(id) = id
      if (!s_n_set.count(id) && b_n_set.count(id)) {
        ++a_count;
        ++c_count;
      }
    }
    for (std::size_t i = 0; i < star_rest.size(); ++i) {
      const std::string& v = star_rest[i];
      const std::string& image = s_rest[perm[i]];
      const bool image_outside_s_n = !s_n_set.count(image);
      if (image_outside_s_n && b_n_set.count(v)) ++a_count;
      if (b_n_set.count(v) && image_outside_s_n) ++c_count;
    }
    (void)c_count;  // |A| == |C| by construction
    return a_count;
  };

  BijectionResult result;
  bool found = false;
  std::vector<std::size_t> perm(s_rest.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool valid = true;
    for (std::size_t i = 0; i < star_rest.size() && valid; ++i) {
      valid = exchange_ok(star_rest[i], s_rest[perm[i]]);
    }
    if (valid) {
      ++result.valid_bijections;
      if (!found) {
        found = true;
        result.k_prime = k_prime_for(perm);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!found) {
    throw ConfigError(
        "bijection_k_prime: no exchange bijection exists for these sets");
  }
  return result;
}

namespace {

class SubsetSampler {
 public:
  SubsetSampler(const std::vector<std::string>& ground, std::uint64_t seed)
      : ground_(ground), rng_(seed) {}

  bool flip() { return (rng_() & 1u) != 0; }

  std::size_t pick_index(std::size_t n) {
    return static_cast<std::size_t>(rng_() % n);
  }

  std::vector<std::string> random_subset() {
    std::vector<std::string> out;
    for (const std::string& id : ground_) {
      if (flip()) out.push_back(id);
    }
    return out;
  }

  std::vector<std::string> random_subset_of(
      const std::vector<std::string>& base) {
    std::vector<std::string> out;
    for (const std::string& id : base) {
      if (flip()) out.push_back(id);
    }
    return out;
  }

 private:
  const std::vector<std::string>& ground_;
  std::mt19937_64 rng_;
};

std::vector<std::string> with_id(std::vector<std::string> ids,
                                 const std::string& extra) {
  ids.push_back(extra);
  return ids;
}

}  // namespace

PropertyReport property_check(const SetFunction& fn, int n_trials,
                              std::uint64_t seed, double tol) {
  const std::vector<std::string>& ground = fn.ground();
  if (ground.size() < 3) {
    throw ConfigError("property_check: need a ground set of at least 3 ids");
  }
  SubsetSampler sampler(ground, seed);
  PropertyReport report;
  report.worst_monotonicity_margin =
      std::numeric_limits<double>::infinity();
  report.worst_submodularity_margin =
      std::numeric_limits<double>::infinity();
  report.worst_swap_lemma_margin = std::numeric_limits<double>::infinity();

  while (report.trials < n_trials) {
    // A subset of B subset of ground, v outside B.
    std::vector<std::string> b = sampler.random_subset();
    std::vector<std::string> outside;
    {
      std::set<std::string> in_b(b.begin(), b.end());
      for (const std::string& id : ground) {
        if (!in_b.count(id)) outside.push_back(id);
      }
    }
    if (outside.empty()) continue;
    const std::string& v = outside[sampler.pick_index(outside.size())];
    std::vector<std::string> a = sampler.random_subset_of(b);

    const double f_a = fn.value(a);
    const double f_av = fn.value(with_id(a, v));
    const double f_b = fn.value(b);
    const double f_bv = fn.value(with_id(b, v));
    const double gain_a = f_av - f_a;
    const double gain_b = f_bv - f_b;
    report.worst_monotonicity_margin =
        std::min(report.worst_monotonicity_margin, std::min(gain_a, gain_b));
    if (gain_a < -tol || gain_b < -tol) ++report.monotonicity_violations;
    report.worst_submodularity_margin =
        std::min(report.worst_submodularity_margin, gain_a - gain_b);
    if (gain_a < gain_b - tol) ++report.submodularity_violations;

    // Swap quadruple: u in S, v', w outside S with v' != w.
    if (outside.size() >= 2 && !b.empty()) {
      const std::vector<std::string>& s_ids = b;
      const std::string& u = s_ids[sampler.pick_index(s_ids.size())];
      std::size_t vi = sampler.pick_index(outside.size());
      std::size_t wi = sampler.pick_index(outside.size());
      if (vi != wi) {
        const std::string& v2 = outside[vi];
        const std::string& w = outside[wi];
        std::vector<std::string> s_swap;
        for (const std::string& id : s_ids) {
          if (id != u) s_swap.push_back(id);
        }
        s_swap.push_back(v2);
        const double f_swap = fn.value(s_swap);
        const double lhs = fn.value(with_id(s_swap, w)) - f_swap;
        const double gain_w_s = fn.value(with_id(s_ids, w)) - f_b;
        const double gain_u_swap = fn.value(with_id(s_swap, u)) - f_swap;
        const double margin = gain_w_s + gain_u_swap - lhs;
        report.worst_swap_lemma_margin =
            std::min(report.worst_swap_lemma_margin, margin);
        if (margin < -tol) ++report.swap_lemma_violations;
      }
    }
    ++report.trials;
  }
  return report;
}

}  // namespace streamclip
