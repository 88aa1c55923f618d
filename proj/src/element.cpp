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

#include "streamclip/element.hpp"

#include <algorithm>
#include <cmath>

#include "streamclip/errors.hpp"

namespace streamclip {

Element make_element(std::string id,
                     std::vector<std::pair<std::string, double>> features,
                     double cost, std::string category) {
  if (id.empty()) {
    throw IngestError("element with empty id");
  }
  if (!std::isfinite(cost) || cost <= 0.0) {
    throw IngestError("element '" + id + "': cost must be finite and > 0");
  }
  for (const auto& [key, weight] : features) {
    if (!std::isfinite(weight) || weight < 0.0) {
      throw IngestError("element '" + id + "': feature '" + key +
                        "' has a negative or non-finite weight");
    }
  }
  std::sort(features.begin(), features.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < features.size(); ++i) {
    if (features[i].first == features[i - 1].first) {
      throw IngestError("element '" + id + "': duplicate feature '" +
                        features[i].first + "'");
    }
  }
  std::erase_if(features, [](const auto& p) { return p.second == 0.0; });

  Element e;
  e.id = std::move(id);
  e.features = std::move(features);
  e.cost = cost;
  e.category = std::move(category);
  return e;
}

double feature_weight(const Element& e, const std::string& u) {
  auto it = std::lower_bound(
      e.features.begin(), e.features.end(), u,
      [](const auto& p, const std::string& key) { return p.first < key; });
  if (it != e.features.end() && it->first == u) return it->second;
  return 0.0;
}

}  // namespace streamclip
