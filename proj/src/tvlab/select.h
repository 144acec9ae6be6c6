// Copyright 2026 The tvlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TVLAB_SELECT_H_
#define TVLAB_SELECT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/rational.h"

namespace tvlab {

// Deduplicated hypotheses and their ordered-pair Yatracos sets
// A_{i,j} = { x : h_i(x) >= h_j(x) }. Points outside every hypothesis support
// satisfy 0 >= 0, so every set carries the outside flag, with the union of
// hypothesis supports as its reference.
struct HypothesisList {
  std::vector<Dist> hypotheses;
  std::vector<YatracosSet> sets;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (i, j) of sets[k]
  std::shared_ptr<const std::vector<DomainPoint>> reference;
};

// Throws EmptyList on an empty input.
HypothesisList BuildYatracos(const std::vector<Dist>& hypotheses);

// max over sets B of |p(B) - q(B)|, 0 when there are no sets.
Rational ADistance(const Dist& p, const Dist& q, const HypothesisList& list);

// max over sets B of |q(B) - |s ∩ B| / |s||. Throws EmptySample.
Rational EmpiricalADistance(const Dist& q, const Sample& s, const HypothesisList& list);

struct SelectionTrace {
  std::vector<Rational> scores;  // empirical A-distance per hypothesis
  std::size_t chosen = 0;
};

// Minimizer of the empirical A-distance; ties go to the earliest hypothesis.
const Dist& SelectMin(const HypothesisList& list, const Sample& s,
                      SelectionTrace* trace = nullptr);

// ceil(8 (2 ln |C| + ln(2/delta)) / epsilon^2): Hoeffding plus a union bound
// over at most |C|^2 sets, epsilon/4 slack per side.
std::uint64_t YatracosSampleSize(std::uint64_t class_size, const Rational& epsilon,
                                 const Rational& delta);

}  // namespace tvlab

#endif  // TVLAB_SELECT_H_
