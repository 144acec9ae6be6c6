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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tvlab/error.h"
#include "tvlab/families.h"
#include "tvlab/privacy.h"
#include "test_util.h"

namespace tvlab {
namespace {

using testing::D;
using testing::R;
using testing::RandomDist;

const GrowthFn kSquare = GrowthFn::Square();
const DpParams kApprox{R(1), R(1, 1000)};

TEST(HistogramSampleSizeTest, Values) {
  EXPECT_EQ(HistogramSampleSize(R(1, 4), R(1, 10), DpParams{R(1), R(1, 10)}), 170u);
  EXPECT_EQ(HistogramSampleSize(R(1, 10), R(1, 10), kApprox), 793u);
  const auto base = HistogramSampleSize(R(1, 4), R(1, 10), kApprox);
  const auto half = HistogramSampleSize(R(1, 8), R(1, 10), kApprox);
  EXPECT_LE(half, 2 * base);
  EXPECT_GE(half, 2 * base - 1);
  EXPECT_LT(base, HistogramSampleSize(R(1, 4), R(1, 10), DpParams{R(1, 2), R(1, 1000)}));
  EXPECT_THROW(HistogramSampleSize(R(1, 4), R(1, 10), DpParams{R(1), R(0)}), Error);
  EXPECT_THROW(HistogramSampleSize(R(1, 4), R(1, 10), DpParams{R(0), R(1, 10)}), Error);
}

TEST(BinCountsTest, NeighborSensitivity) {
  Rng rng(Seed{137, 0});
  for (int t = 0; t < 200; ++t) {
    Sample s;
    for (int k = 0; k < 30; ++k) s.points.push_back({rng.Below(4), rng.Below(3)});
    Sample n = s;
    n.points[rng.Below(30)] = {rng.Below(5), rng.Below(5)};
    const auto a = BinCounts(s), b = BinCounts(n);
    std::map<DomainPoint, int> diff;
    for (const auto& [x, c] : a) diff[x] += static_cast<int>(c);
    for (const auto& [x, c] : b) diff[x] -= static_cast<int>(c);
    int changed = 0;
    for (const auto& [x, d] : diff) {
      EXPECT_LE(std::abs(d), 1);
      changed += d != 0 ? 1 : 0;
    }
    EXPECT_LE(changed, 2);
  }
}

TEST(StabilityHistogramTest, ReleasesOnlyNonemptyBinsInRange) {
  const Dist p = D({{0, 0, R(1, 2)}, {1, 1, R(1, 4)}, {2, 2, R(1, 4)}});
  const auto n = HistogramSampleSize(R(1, 10), R(1, 10), kApprox);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const Sample s = SampleFrom(p, n, Seed{139, t});
    const auto released = StabilityHistogram(s, kApprox, R(1, 10), R(1, 10), Seed{139, 1000 + t});
    const auto counts = BinCounts(s);
    for (const auto& [x, f] : released) {
      EXPECT_TRUE(counts.count(x)) << ToString(x);
      EXPECT_GE(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
}

TEST(StabilityHistogramTest, ConstantDatasetIsReleasedAccurately) {
  const auto n = 4 * HistogramSampleSize(R(1, 10), R(1, 10), kApprox);
  Sample s;
  s.points.assign(n, DomainPoint{0, 0});
  int good = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto released = StabilityHistogram(s, kApprox, R(1, 10), R(1, 10), Seed{149, t});
    auto it = released.find({0, 0});
    good += it != released.end() && std::abs(it->second - 1.0) <= 0.1 ? 1 : 0;
  }
  EXPECT_GE(good, 180);
}

TEST(StabilityHistogramTest, RejectsBadInputs) {
  Sample s;
  s.points.assign(10, DomainPoint{0, 0});
  try {
    StabilityHistogram(s, kApprox, R(1, 10), R(1, 10), Seed{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientSample);
  }
  try {
    StabilityHistogram(s, DpParams{R(1), R(0)}, R(1, 10), R(1, 10), Seed{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadParams);
  }
}

TEST(DpQgTest, SampleSize) {
  EXPECT_EQ(DpQgSampleSize(R(1, 2), R(1, 10), kApprox, kSquare), 1741u);
}

TEST(DpQgTest, CoarseLevelsGiveOriginOrTruth) {
  const auto n = DpQgSampleSize(R(1, 2), R(1, 10), kApprox, kSquare);
  for (std::uint64_t j : {2, 3}) {
    const Dist q = MakeQgMember(5, j, kSquare);
    int failures = 0;
    for (std::uint64_t t = 0; t < 60; ++t) {
      const Dist out = DpQgLearn(SampleFrom(q, n, Seed{151, t}), kSquare, R(1, 2), R(1, 10),
                                 kApprox, Seed{151, 1000 + t});
      const bool allowed = out == q || out == Dirac({0, 0});
      failures += allowed && TvDistance(out, q) <= R(1, 2) ? 0 : 1;
    }
    EXPECT_LE(failures, 12) << j;
  }
}

TEST(DpQgTest, FineLevelsAreRecoveredExactly) {
  const auto n = DpQgSampleSize(R(1, 2), R(1, 10), kApprox, kSquare);
  const Dist q = MakeQgMember(9, 1, kSquare);
  int exact = 0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    exact += DpQgLearn(SampleFrom(q, n, Seed{157, t}), kSquare, R(1, 2), R(1, 10), kApprox,
                       Seed{157, 1000 + t}) == q
                 ? 1
                 : 0;
  }
  EXPECT_GE(exact, 48);
}

TEST(DpQgTest, RejectsEmptyAndShortSamples) {
  try {
    DpQgLearn(Sample{}, kSquare, R(1, 2), R(1, 10), kApprox, Seed{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySample);
  }
  Sample s;
  s.points.assign(100, DomainPoint{0, 0});
  EXPECT_THROW(DpQgLearn(s, kSquare, R(1, 2), R(1, 10), kApprox, Seed{}), Error);
}

void ExpectPackingAndCover(const std::vector<Dist>& cls, const Rational& radius) {
  const auto packing = GreedyPacking(cls, radius);
  for (std::size_t a = 0; a < packing.size(); ++a) {
    for (std::size_t b = a + 1; b < packing.size(); ++b) {
      EXPECT_GT(TvDistance(packing[a], packing[b]), radius);
    }
  }
  for (const Dist& m : cls) {
    bool covered = false;
    for (const Dist& c : packing) covered = covered || TvDistance(m, c) <= radius;
    EXPECT_TRUE(covered);
  }
}

TEST(GreedyPackingTest, Examples) {
  std::vector<DomainPoint> two{{0, 0}, {1, 1}};
  const Dist p = Dirac({0, 0}), q = Uniform(two);
  EXPECT_EQ(GreedyPacking({p, q}, R(3, 4)), std::vector<Dist>{p});
  EXPECT_EQ(GreedyPacking({p, q, Dirac({1, 1})}, R(0)).size(), 3u);
  ExpectPackingAndCover({p, q}, R(3, 4));
  try {
    GreedyPacking({}, R(1, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyClass);
  }
}

TEST(GreedyPackingTest, RandomClasses) {
  Rng rng(Seed{163, 0});
  for (int t = 0; t < 30; ++t) {
    std::vector<Dist> cls;
    const std::size_t m = 1 + rng.Below(20);
    for (std::size_t k = 0; k < m; ++k) cls.push_back(RandomDist(rng, 8, 3));
    ExpectPackingAndCover(cls, R(1 + rng.Below(5), 12));
  }
}

TEST(CoverThenSelectTest, SingletonAndAccuracy) {
  const Dist p = MakeQgMember(5, 2, kSquare);
  const auto n1 = CoverThenSelectSampleSize({p}, R(1, 2), R(1, 10));
  EXPECT_EQ(CoverThenSelect({p}, R(1, 2), R(1, 10), SampleFrom(p, n1, Seed{167, 0})), p);

  const std::vector<Dist> cls{Dirac({0, 0}), D({{0, 0, R(1, 2)}, {1, 0, R(1, 2)}}),
                              D({{1, 0, R(1, 3)}, {2, 0, R(1, 3)}, {3, 0, R(1, 3)}}),
                              D({{0, 0, R(1, 10)}, {3, 0, R(9, 10)}})};
  const auto n = CoverThenSelectSampleSize(cls, R(1, 2), R(1, 10));
  int failures = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Dist out = CoverThenSelect(cls, R(1, 2), R(1, 10), SampleFrom(cls[1], n, Seed{167, t}));
    failures += TvDistance(out, cls[1]) > R(1, 2) ? 1 : 0;
  }
  EXPECT_LE(failures, 19);
  EXPECT_THROW(CoverThenSelect(cls, R(1, 2), R(1, 10), SampleFrom(cls[1], 3, Seed{})), Error);
}

}  // namespace
}  // namespace tvlab
