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

#ifndef TVLAB_PRIVACY_H_
#define TVLAB_PRIVACY_H_

#include <cstdint>
#include <map>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/families.h"
#include "tvlab/learners.h"
#include "tvlab/random.h"
#include "tvlab/rational.h"

namespace tvlab {

// (epsilon, delta) privacy budget; delta = 0 means pure DP.
struct DpParams {
  Rational epsilon;
  Rational delta;
};

// Released bins only; every value lies in [0, 1].
using BinFrequencies = std::map<DomainPoint, double>;

// Exact per-point counts, the histogram's pre-noise statistic.
std::map<DomainPoint, std::uint64_t> BinCounts(const Sample& s);

// ceil(8 ln(2 / (beta delta)) / (alpha epsilon)).
std::uint64_t HistogramSampleSize(const Rational& alpha, const Rational& beta,
                                  const DpParams& params);

// Stability-based histogram over singleton bins. Each nonempty bin gets
// Laplace(2/epsilon) noise added to its count, and is released as
// clamp(noisy / n, 0, 1) only when the noisy count exceeds
// 1 + (2/epsilon) ln(2/delta). Empty bins are never released. Throws
// BadParams when delta = 0 and InsufficientSample below the calculator size.
BinFrequencies StabilityHistogram(const Sample& s, const DpParams& params, const Rational& alpha,
                                  const Rational& beta, const Seed& seed);

// Histogram size at accuracy 1/(4G) and confidence beta/2, plus
// ceil(32 ln(2/beta) G), where G = g(ceil(1/alpha)).
std::uint64_t DpQgSampleSize(const Rational& alpha, const Rational& beta, const DpParams& params,
                             const GrowthFn& g);

// Runs the histogram at accuracy 1/(4G); returns q_{a,j,g(j)} for the first
// released indicator bin (lexicographic) with frequency >= 1/(2G), else
// delta_(0,0).
Dist DpQgLearn(const Sample& s, const GrowthFn& g, const Rational& alpha, const Rational& beta,
               const DpParams& params, const Seed& seed);

// Greedy maximal packing in list order: a member is admitted iff its tv
// distance to every admitted member exceeds `radius`. By maximality the
// result is also a radius-cover of the class. Throws EmptyClass.
std::vector<Dist> GreedyPacking(const std::vector<Dist>& members, const Rational& radius);

// alpha/6 packing-cover, then Yatracos selection over it. Needs
// |s| >= YatracosSampleSize(|packing|, alpha/2, beta).
Dist CoverThenSelect(const std::vector<Dist>& members, const Rational& alpha,
                     const Rational& beta, const Sample& s, LearnTrace* trace = nullptr);

std::uint64_t CoverThenSelectSampleSize(const std::vector<Dist>& members, const Rational& alpha,
                                        const Rational& beta);

}  // namespace tvlab

#endif  // TVLAB_PRIVACY_H_
