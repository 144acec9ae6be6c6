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

#include "tvlab/select.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "tvlab/error.h"

namespace tvlab {
namespace {

Rational Abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Distinct sample points with multiplicities.
std::vector<std::pair<DomainPoint, std::uint64_t>> Tally(const Sample& s) {
  std::map<DomainPoint, std::uint64_t> counts;
  for (const auto& x : s.points) ++counts[x];
  return {counts.begin(), counts.end()};
}

std::vector<Rational> EmpiricalMasses(const Sample& s, const HypothesisList& list) {
  const auto tally = Tally(s);
  const auto n = static_cast<long long>(s.size());
  std::vector<Rational> out;
  out.reserve(list.sets.size());
  for (const auto& set : list.sets) {
    std::uint64_t hits = 0;
    for (const auto& [x, c] : tally) {
      if (set.Contains(x)) hits += c;
    }
    out.emplace_back(Rational(static_cast<long long>(hits), n));
  }
  return out;
}

void CheckUnit(const Rational& v, const char* name) {
  if (v <= 0 || v >= 1) {
    Fail(ErrorCode::kBadParams, std::string(name) + " must lie in (0, 1)");
  }
}

}  // namespace

HypothesisList BuildYatracos(const std::vector<Dist>& hypotheses) {
  if (hypotheses.empty()) Fail(ErrorCode::kEmptyList, "no hypotheses to select from");
  HypothesisList list;
  for (const Dist& h : hypotheses) {
    if (std::find(list.hypotheses.begin(), list.hypotheses.end(), h) == list.hypotheses.end()) {
      list.hypotheses.push_back(h);
    }
  }
  std::vector<DomainPoint> reference;
  for (const Dist& h : list.hypotheses) {
    for (const auto& atom : h.atoms()) reference.push_back(atom.first);
  }
  std::sort(reference.begin(), reference.end());
  reference.erase(std::unique(reference.begin(), reference.end()), reference.end());
  list.reference = std::make_shared<const std::vector<DomainPoint>>(std::move(reference));

  const std::size_t m = list.hypotheses.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      YatracosSet set;
      set.outside = true;
      set.reference = list.reference;
      for (const auto& x : *list.reference) {
        if (list.hypotheses[i].Weight(x) >= list.hypotheses[j].Weight(x)) set.listed.push_back(x);
      }
      list.sets.push_back(std::move(set));
      list.pairs.emplace_back(i, j);
    }
  }
  return list;
}

Rational ADistance(const Dist& p, const Dist& q, const HypothesisList& list) {
  Rational best = 0;
  for (const auto& set : list.sets) {
    best = std::max(best, Abs(MassOf(p, set) - MassOf(q, set)));
  }
  return best;
}

Rational EmpiricalADistance(const Dist& q, const Sample& s, const HypothesisList& list) {
  if (s.empty()) Fail(ErrorCode::kEmptySample, "empirical A-distance of an empty sample");
  const std::vector<Rational> empirical = EmpiricalMasses(s, list);
  Rational best = 0;
  for (std::size_t k = 0; k < list.sets.size(); ++k) {
    best = std::max(best, Abs(MassOf(q, list.sets[k]) - empirical[k]));
  }
  return best;
}

const Dist& SelectMin(const HypothesisList& list, const Sample& s, SelectionTrace* trace) {
  if (s.empty()) Fail(ErrorCode::kEmptySample, "selection needs a nonempty sample");
  if (list.hypotheses.empty()) Fail(ErrorCode::kEmptyList, "no hypotheses to select from");
  const std::vector<Rational> empirical = EmpiricalMasses(s, list);
  std::vector<Rational> scores;
  scores.reserve(list.hypotheses.size());
  std::size_t chosen = 0;
  for (std::size_t h = 0; h < list.hypotheses.size(); ++h) {
    Rational score = 0;
    for (std::size_t k = 0; k < list.sets.size(); ++k) {
      score = std::max(score, Abs(MassOf(list.hypotheses[h], list.sets[k]) - empirical[k]));
    }
    if (h > 0 && score < scores[chosen]) chosen = h;
    scores.push_back(std::move(score));
  }
  if (trace != nullptr) {
    trace->scores = std::move(scores);
    trace->chosen = chosen;
  }
  return list.hypotheses[chosen];
}

std::uint64_t YatracosSampleSize(std::uint64_t class_size, const Rational& epsilon,
                                 const Rational& delta) {
  if (class_size < 1) Fail(ErrorCode::kBadParams, "class size must be at least 1");
  CheckUnit(epsilon, "epsilon");
  CheckUnit(delta, "delta");
  const double eps = ToDouble(epsilon);
  const double m = 8.0 * (2.0 * std::log(static_cast<double>(class_size)) +
                          std::log(2.0 / ToDouble(delta))) /
                   (eps * eps);
  return CeilToU64(m);
}

}  // namespace tvlab
