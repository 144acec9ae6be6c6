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

#include "tvlab/privacy.h"

#include <algorithm>
#include <cmath>

#include "tvlab/error.h"
#include "tvlab/select.h"

namespace tvlab {
namespace {

void CheckUnit(const Rational& v, const char* name) {
  if (v <= 0 || v >= 1) {
    Fail(ErrorCode::kBadParams, std::string(name) + " must lie in (0, 1)");
  }
}

void CheckApproxDp(const DpParams& params) {
  if (params.epsilon <= 0) Fail(ErrorCode::kBadParams, "dp epsilon must be positive");
  if (params.delta <= 0 || params.delta >= 1) {
    Fail(ErrorCode::kBadParams, "the stability histogram needs 0 < dp delta < 1");
  }
}

std::uint64_t GrowthAtInverse(const Rational& alpha, const GrowthFn& g) {
  return g(CeilToU64(Rational(1 / alpha)));
}

}  // namespace

std::map<DomainPoint, std::uint64_t> BinCounts(const Sample& s) {
  std::map<DomainPoint, std::uint64_t> counts;
  for (const auto& x : s.points) ++counts[x];
  return counts;
}

std::uint64_t HistogramSampleSize(const Rational& alpha, const Rational& beta,
                                  const DpParams& params) {
  CheckUnit(alpha, "alpha");
  CheckUnit(beta, "beta");
  CheckApproxDp(params);
  const double m = 8.0 * std::log(2.0 / (ToDouble(beta) * ToDouble(params.delta))) /
                   (ToDouble(alpha) * ToDouble(params.epsilon));
  return CeilToU64(m);
}

BinFrequencies StabilityHistogram(const Sample& s, const DpParams& params, const Rational& alpha,
                                  const Rational& beta, const Seed& seed) {
  const std::uint64_t needed = HistogramSampleSize(alpha, beta, params);
  if (s.size() < needed) {
    Fail(ErrorCode::kInsufficientSample, "histogram needs " + std::to_string(needed) +
                                             " points, got " + std::to_string(s.size()));
  }
  const double eps = ToDouble(params.epsilon);
  const double scale = 2.0 / eps;
  const double threshold = 1.0 + scale * std::log(2.0 / ToDouble(params.delta));
  const double n = static_cast<double>(s.size());
  Rng rng(seed);
  BinFrequencies released;
  for (const auto& [x, count] : BinCounts(s)) {
    const double noisy = static_cast<double>(count) + rng.Laplace(scale);
    if (noisy > threshold) released.emplace(x, std::clamp(noisy / n, 0.0, 1.0));
  }
  return released;
}

std::uint64_t DpQgSampleSize(const Rational& alpha, const Rational& beta, const DpParams& params,
                             const GrowthFn& g) {
  CheckUnit(alpha, "alpha");
  CheckUnit(beta, "beta");
  const std::uint64_t growth = GrowthAtInverse(alpha, g);
  const Rational accuracy(1, 4 * growth);
  return HistogramSampleSize(accuracy, beta / 2, params) +
         CeilToU64(32.0 * std::log(2.0 / ToDouble(beta)) * static_cast<double>(growth));
}

Dist DpQgLearn(const Sample& s, const GrowthFn& g, const Rational& alpha, const Rational& beta,
               const DpParams& params, const Seed& seed) {
  if (s.empty()) Fail(ErrorCode::kEmptySample, "DP learner needs a nonempty sample");
  const std::uint64_t needed = DpQgSampleSize(alpha, beta, params, g);
  if (s.size() < needed) {
    Fail(ErrorCode::kInsufficientSample, "DP Q_g learner needs " + std::to_string(needed) +
                                             " points, got " + std::to_string(s.size()));
  }
  const std::uint64_t growth = GrowthAtInverse(alpha, g);
  const BinFrequencies released =
      StabilityHistogram(s, params, Rational(1, 4 * growth), beta / 2, seed);
  const double cutoff = 1.0 / (2.0 * static_cast<double>(growth));
  for (const auto& [x, f] : released) {
    if (f < cutoff) continue;
    if (auto member = MemberForIndicator(x, g)) return *std::move(member);
  }
  return Dirac({0, 0});
}

std::vector<Dist> GreedyPacking(const std::vector<Dist>& members, const Rational& radius) {
  if (members.empty()) Fail(ErrorCode::kEmptyClass, "cannot pack an empty class");
  std::vector<Dist> admitted;
  for (const Dist& candidate : members) {
    const bool separated = std::all_of(admitted.begin(), admitted.end(), [&](const Dist& kept) {
      return TvDistance(candidate, kept) > radius;
    });
    if (separated) admitted.push_back(candidate);
  }
  return admitted;
}

std::uint64_t CoverThenSelectSampleSize(const std::vector<Dist>& members, const Rational& alpha,
                                        const Rational& beta) {
  CheckUnit(alpha, "alpha");
  const auto packing = GreedyPacking(members, alpha / 6);
  return YatracosSampleSize(packing.size(), alpha / 2, beta);
}

Dist CoverThenSelect(const std::vector<Dist>& members, const Rational& alpha,
                     const Rational& beta, const Sample& s, LearnTrace* trace) {
  CheckUnit(alpha, "alpha");
  const std::vector<Dist> packing = GreedyPacking(members, alpha / 6);
  const std::uint64_t needed = YatracosSampleSize(packing.size(), alpha / 2, beta);
  if (s.size() < needed) {
    Fail(ErrorCode::kInsufficientSample, "cover-then-select needs " + std::to_string(needed) +
                                             " points, got " + std::to_string(s.size()));
  }
  HypothesisList list = BuildYatracos(packing);
  SelectionTrace selection;
  Dist chosen = SelectMin(list, s, &selection);
  if (trace != nullptr) {
    trace->hypotheses = std::move(list.hypotheses);
    trace->selection = std::move(selection);
    trace->has_selection = true;
  }
  return chosen;
}

}  // namespace tvlab
