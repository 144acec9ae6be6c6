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

#ifndef TVLAB_TESTS_UNIT_TEST_UTIL_H_
#define TVLAB_TESTS_UNIT_TEST_UTIL_H_

#include <cstdint>
#include <initializer_list>
#include <map>
#include <tuple>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/random.h"
#include "tvlab/rational.h"

namespace tvlab::testing {

inline Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p) / Rational(q); }

inline Dist D(std::initializer_list<std::tuple<std::uint64_t, std::uint64_t, Rational>> atoms) {
  std::map<DomainPoint, Rational> w;
  for (const auto& [a, b, p] : atoms) w[{a, b}] = p;
  return Dist::FromWeights(w);
}

inline std::vector<DomainPoint> UnionSupport(const Dist& p, const Dist& q) {
  std::map<DomainPoint, bool> seen;
  for (const auto& [x, w] : p.atoms()) seen[x] = true;
  for (const auto& [x, w] : q.atoms()) seen[x] = true;
  std::vector<DomainPoint> out;
  for (const auto& [x, unused] : seen) out.push_back(x);
  return out;
}

// max over subsets B of the union support of p(B) - q(B).
inline Rational BruteForceTv(const Dist& p, const Dist& q) {
  const auto support = UnionSupport(p, q);
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << support.size()); ++mask) {
    Rational diff = 0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (mask >> k & 1) diff += p.Weight(support[k]) - q.Weight(support[k]);
    }
    if (diff > best) best = diff;
  }
  return best;
}

// Random distribution on at most `max_support` points of [0, grid)^2 with
// weights in units of 1/den.
inline Dist RandomDist(Rng& rng, std::size_t max_support, std::uint64_t grid,
                       std::uint64_t den = 60) {
  const std::size_t size = 1 + rng.Below(max_support);
  std::vector<std::uint64_t> units(size, 1);
  for (std::uint64_t left = den - size; left > 0; --left) ++units[rng.Below(size)];
  std::map<DomainPoint, Rational> w;
  for (std::size_t k = 0; k < size; ++k) {
    DomainPoint x{rng.Below(grid), rng.Below(grid)};
    w[x] += Rational(units[k]) / Rational(den);
  }
  return Dist::FromWeights(w);
}

}  // namespace tvlab::testing

#endif  // TVLAB_TESTS_UNIT_TEST_UTIL_H_
