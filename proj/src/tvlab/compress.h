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

#ifndef TVLAB_COMPRESS_H_
#define TVLAB_COMPRESS_H_

#include <cstdint>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/families.h"
#include "tvlab/learners.h"
#include "tvlab/random.h"
#include "tvlab/rational.h"

namespace tvlab {

// Up to tau sample points plus up to t bits. The Q_g scheme always uses one
// point and no bits.
struct CompressionMessage {
  std::vector<DomainPoint> points;
  std::vector<bool> bits;
  // The encoder fell back to (0,0) although (0,0) is not in the sample.
  bool fallback_outside_sample = false;
};

// Keeps the first indicator of a valid Q_g member in sample order, else
// (0,0). Throws EmptySample.
CompressionMessage QgEncode(const Sample& s, const GrowthFn& g);

// q_{a,j,g(j)} for an indicator point (a, 2j+2), delta_(0,0) for anything
// else. Total on single-point messages; throws BadMessage otherwise.
Dist QgDecode(const CompressionMessage& m, const GrowthFn& g);

// n(eps) = 10 g(ceil(1/eps)).
std::uint64_t CompressionSampleSize(const Rational& epsilon, const GrowthFn& g);

struct RoundTripSummary {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t fallbacks_outside_sample = 0;
  Interval success_rate_ci;

  double success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

// Per trial: draw n(eps) points from q on seed.Child(t), encode, decode, and
// count a success when tv(decoded, q) <= eps. Throws BadParams for zero trials.
RoundTripSummary CompressionRoundTrip(const Dist& q, const GrowthFn& g, const Rational& epsilon,
                                      std::uint64_t trials, const Seed& seed);

}  // namespace tvlab

#endif  // TVLAB_COMPRESS_H_
