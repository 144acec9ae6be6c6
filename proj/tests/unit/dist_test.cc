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

#include <map>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "tvlab/dist.h"
#include "tvlab/error.h"
#include "tvlab/families.h"
#include "test_util.h"

namespace tvlab {
namespace {

using testing::BruteForceTv;
using testing::D;
using testing::R;
using testing::RandomDist;

TEST(DiracTest, SingleAtom) {
  const Dist d = Dirac({3, 8});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.Weight({3, 8}), R(1));
  EXPECT_EQ(d.Weight({0, 0}), R(0));
  EXPECT_EQ(TvDistance(d, d), R(0));
}

TEST(DistTest, FromWeightsValidates) {
  EXPECT_THROW(D({{0, 0, R(1, 2)}, {1, 1, R(1, 3)}}), Error);
  try {
    D({{0, 0, R(3, 2)}, {1, 1, R(-1, 2)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadWeights);
  }
  const Dist d = D({{0, 0, R(1)}, {1, 1, R(0)}});
  EXPECT_EQ(d.size(), 1u);
  EXPECT_FALSE(d.Contains({1, 1}));
}

TEST(UniformTest, EqualWeightsAndDedup) {
  std::vector<DomainPoint> two{{1, 5}, {3, 5}};
  EXPECT_EQ(Uniform(two), D({{1, 5, R(1, 2)}, {3, 5, R(1, 2)}}));
  std::vector<DomainPoint> one{{0, 0}};
  EXPECT_EQ(Uniform(one), Dirac({0, 0}));
  std::vector<DomainPoint> four{{1, 3}, {2, 3}, {4, 3}, {8, 3}};
  for (const auto& [x, w] : Uniform(four).atoms()) EXPECT_EQ(w, R(1, 4));
  std::vector<DomainPoint> dup{{1, 1}, {1, 1}, {2, 2}};
  EXPECT_EQ(Uniform(dup).Weight({1, 1}), R(1, 2));
  std::vector<DomainPoint> none;
  try {
    Uniform(none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySet);
  }
}

TEST(MixTest, TwoAtomMixture) {
  std::vector<std::pair<Rational, Dist>> parts{{R(3, 4), Dirac({0, 0})},
                                              {R(1, 4), Dirac({1, 1})}};
  EXPECT_EQ(Mix(parts), D({{0, 0, R(3, 4)}, {1, 1, R(1, 4)}}));
}

TEST(MixTest, IdentityAndBadWeights) {
  const Dist p = D({{0, 0, R(1, 3)}, {2, 1, R(2, 3)}});
  std::vector<std::pair<Rational, Dist>> one{{R(1), p}};
  EXPECT_EQ(Mix(one), p);
  std::vector<std::pair<Rational, Dist>> bad{{R(1, 2), p}, {R(1, 3), p}};
  EXPECT_THROW(Mix(bad), Error);
  std::vector<std::pair<Rational, Dist>> negative{{R(3, 2), p}, {R(-1, 2), p}};
  EXPECT_THROW(Mix(negative), Error);
}

TEST(MixTest, ReproducesTheQijkFormula) {
  std::vector<DomainPoint> block{{1, 5}, {3, 5}};
  std::vector<std::pair<Rational, Dist>> parts{
      {R(1, 2), Dirac({0, 0})}, {R(1, 4), Uniform(block)}, {R(1, 4), Dirac({5, 6})}};
  EXPECT_EQ(Mix(parts), MakeQijk(5, 2, 4));
}

TEST(MixTest, IsAssociative) {
  Rng rng(Seed{17, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const Dist a = RandomDist(rng, 4, 4), b = RandomDist(rng, 4, 4), c = RandomDist(rng, 4, 4);
    const Rational x = R(1 + rng.Below(9), 10), y = R(1 + rng.Below(9), 10);
    std::vector<std::pair<Rational, Dist>> inner{{y, b}, {1 - y, c}};
    std::vector<std::pair<Rational, Dist>> left{{x, a}, {1 - x, Mix(inner)}};
    std::vector<std::pair<Rational, Dist>> flat{{x, a}, {(1 - x) * y, b}, {(1 - x) * (1 - y), c}};
    EXPECT_EQ(Mix(left), Mix(flat));
  }
}

TEST(TvDistanceTest, Examples) {
  EXPECT_EQ(TvDistance(Dirac({0, 0}), Dirac({1, 1})), R(1));
  const Dist p = D({{0, 0, R(1, 3)}, {2, 1, R(2, 3)}});
  EXPECT_EQ(TvDistance(p, p), R(0));
  for (std::uint64_t j = 1; j <= 6; ++j) {
    EXPECT_EQ(TvDistance(Dirac({0, 0}), MakeQgMember(5, j, GrowthFn::Square())), R(1, j));
  }
}

TEST(TvDistanceTest, MatchesBruteForceAndIsAMetric) {
  Rng rng(Seed{23, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const Dist p = RandomDist(rng, 6, 3), q = RandomDist(rng, 6, 3), r = RandomDist(rng, 6, 3);
    const Rational pq = TvDistance(p, q);
    EXPECT_EQ(pq, BruteForceTv(p, q));
    EXPECT_EQ(pq, TvDistance(q, p));
    EXPECT_LE(TvDistance(p, r), pq + TvDistance(q, r));
    EXPECT_GE(pq, 0);
    EXPECT_LE(pq, 1);
  }
}

TEST(MassOfTest, Examples) {
  YatracosSet only_origin{{{0, 0}}, false, nullptr};
  EXPECT_EQ(MassOf(Dirac({0, 0}), only_origin), R(1));

  std::vector<DomainPoint> two{{0, 0}, {1, 1}};
  auto reference = std::make_shared<const std::vector<DomainPoint>>(two);
  YatracosSet with_outside{{{1, 1}}, true, reference};
  EXPECT_EQ(MassOf(Uniform(two), with_outside), R(1, 2));
  EXPECT_TRUE(with_outside.Contains({7, 7}));
  EXPECT_FALSE(with_outside.Contains({0, 0}));

  YatracosSet everything{{}, true, std::make_shared<const std::vector<DomainPoint>>()};
  EXPECT_EQ(MassOf(D({{0, 0, R(1, 3)}, {2, 1, R(2, 3)}}), everything), R(1));
}

TEST(SampleTest, DiracAndDeterminism) {
  const Sample s = SampleFrom(Dirac({2, 2}), 5, Seed{1, 0});
  EXPECT_EQ(s.points, std::vector<DomainPoint>(5, DomainPoint{2, 2}));
  const Dist p = D({{0, 0, R(1, 3)}, {2, 1, R(2, 3)}});
  EXPECT_EQ(SampleFrom(p, 100, Seed{4, 4}).points, SampleFrom(p, 100, Seed{4, 4}).points);
  EXPECT_NE(SampleFrom(p, 100, Seed{4, 4}).points, SampleFrom(p, 100, Seed{4, 5}).points);
  EXPECT_TRUE(SampleFrom(p, 0, Seed{}).empty());
}

TEST(SampleTest, FrequenciesWithinHoeffdingBound) {
  std::vector<DomainPoint> two{{0, 0}, {1, 1}};
  const Sample s = SampleFrom(Uniform(two), 10000, Seed{1, 0});
  std::size_t origin = 0;
  for (const auto& x : s.points) origin += x == DomainPoint{0, 0} ? 1 : 0;
  EXPECT_NEAR(origin / 10000.0, 0.5, 0.05);
}

TEST(SampleTest, NeverDrawsOutsideTheSupport) {
  const Dist p = D({{1, 1, R(1, 1000)}, {4, 4, R(999, 1000)}});
  for (const auto& x : SampleFrom(p, 5000, Seed{8, 0}).points) EXPECT_TRUE(p.Contains(x));
}

TEST(DistTextTest, RoundTrips) {
  const Dist p = D({{0, 0, R(1, 2)}, {1, 5, R(1, 8)}, {3, 5, R(1, 8)}, {5, 6, R(1, 4)}});
  EXPECT_EQ(FormatDist(p), "0 0 1/2\n1 5 1/8\n3 5 1/8\n5 6 1/4\n");
  EXPECT_EQ(ParseDist(FormatDist(p)), p);
  EXPECT_EQ(ParseDist("# comment\n5 6 0.25\n\n0 0 1/2\n1 5 1/8\n3 5 1/8\n"), p);
  EXPECT_EQ(FormatDistInline(p), "{0 0 1/2; 1 5 1/8; 3 5 1/8; 5 6 1/4}");
  EXPECT_EQ(ParseDistInline(FormatDistInline(p)), p);
}

TEST(DistTextTest, RejectsBadInput) {
  EXPECT_THROW(ParseDist("0 0 1/2\n0 0 1/2\n"), Error);
  EXPECT_THROW(ParseDist("0 0 1/2\n"), Error);
  EXPECT_THROW(ParseDist("0 0\n"), Error);
  EXPECT_THROW(ParseDistInline("0 0 1"), Error);
}

}  // namespace
}  // namespace tvlab
