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

#include "tvlab/compress.h"

#include <algorithm>

#include "tvlab/error.h"

namespace tvlab {

CompressionMessage QgEncode(const Sample& s, const GrowthFn& g) {
  if (s.empty()) Fail(ErrorCode::kEmptySample, "cannot compress an empty sample");
  CompressionMessage m;
  for (const DomainPoint& x : s.points) {
    if (MemberForIndicator(x, g)) {
      m.points.push_back(x);
      return m;
    }
  }
  const DomainPoint origin{0, 0};
  m.points.push_back(origin);
  m.fallback_outside_sample =
      std::find(s.points.begin(), s.points.end(), origin) == s.points.end();
  return m;
}

Dist QgDecode(const CompressionMessage& m, const GrowthFn& g) {
  if (m.points.size() != 1) {
    Fail(ErrorCode::kBadMessage,
         "Q_g messages carry exactly one point, got " + std::to_string(m.points.size()));
  }
  if (auto member = MemberForIndicator(m.points.front(), g)) return *std::move(member);
  return Dirac({0, 0});
}

std::uint64_t CompressionSampleSize(const Rational& epsilon, const GrowthFn& g) {
  if (epsilon <= 0 || epsilon >= 1) Fail(ErrorCode::kBadParams, "epsilon must lie in (0, 1)");
  const std::uint64_t growth = g(CeilToU64(Rational(1 / epsilon)));
  if (growth > UINT64_MAX / 10) Fail(ErrorCode::kBadParams, "n(eps) overflows");
  return 10 * growth;
}

RoundTripSummary CompressionRoundTrip(const Dist& q, const GrowthFn& g, const Rational& epsilon,
                                      std::uint64_t trials, const Seed& seed) {
  if (trials == 0) Fail(ErrorCode::kBadParams, "round trip needs at least one trial");
  const std::uint64_t n = CompressionSampleSize(epsilon, g);
  RoundTripSummary summary;
  summary.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Sample s = SampleFrom(q, n, seed.Child(t));
    CompressionMessage m = QgEncode(s, g);
    if (m.fallback_outside_sample) ++summary.fallbacks_outside_sample;
    if (TvDistance(QgDecode(m, g), q) <= epsilon) ++summary.successes;
  }
  summary.success_rate_ci = WilsonInterval(summary.successes, trials);
  return summary;
}

}  // namespace tvlab
