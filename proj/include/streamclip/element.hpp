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

#ifndef STREAMCLIP_ELEMENT_HPP
#define STREAMCLIP_ELEMENT_HPP

#include <string>
#include <utility>
#include <vector>

namespace streamclip {

// One stream item: an id, sparse non-negative feature weights, and a
// strictly positive cost (1.0 unless the input says otherwise).
// Feature pairs are kept sorted by feature id with unique keys; weights of
// exactly zero are dropped at construction since they cannot move any
// accumulator.
struct Element {
  std::string id;
  std::vector<std::pair<std::string, double>> features;
  double cost = 1.0;
  std::string category;  // empty unless a partition matroid is in play
};

// Validating constructor. Sorts and deduplicates features, drops zero
// weights. Throws IngestError on non-finite or negative weights, duplicate
// feature keys, or a non-positive/non-finite cost.
Element make_element(std::string id,
                     std::vector<std::pair<std::string, double>> features,
                     double cost = 1.0, std::string category = {});

// Sum of feature weights an element carries for feature `u` (0 if absent).
double feature_weight(const Element& e, const std::string& u);

}  // namespace streamclip

#endif  // STREAMCLIP_ELEMENT_HPP
