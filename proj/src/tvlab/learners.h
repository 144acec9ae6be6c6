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

#ifndef TVLAB_LEARNERS_H_
#define TVLAB_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/families.h"
#include "tvlab/random.h"
#include "tvlab/rational.h"
#include "tvlab/select.h"

namespace tvlab {

// What a learner did on one call. Plain learners leave it untouched.
struct LearnTrace {
  std::vector<Dist> hypotheses;
  SelectionTrace selection;
  bool has_selection = false;
  std::uint64_t subsets_enumerated = 0;
  std::uint64_t failed_subsets = 0;
  bool desk_scale = false;
};

using LearnFn = std::function<Dist(const Sample&, const Seed&, LearnTrace*)>;
using SampleSizeFn = std::function<std::uint64_t(const Rational& epsilon, const Rational& delta)>;

// Replayable: the same (sample, seed) always yields the same output.
struct Learner {
  std::string name;
  LearnFn run;
  SampleSizeFn sample_size;
};

// Returns q_{a,j,g(j)} for the first indicator (a, 2j+2) in sample order
// that names a valid member, and delta_(0,0) when there is none. Total on
// every sample, realizable or not.
Dist RealizableQgLearn(const Sample& s, const GrowthFn& g);

// ceil(ln(1/delta) * g(ceil(1/epsilon))).
std::uint64_t RealizableSampleSize(const Rational& epsilon, const Rational& delta,
                                   const GrowthFn& g);

Learner RealizableQgLearner(const GrowthFn& g);

inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 18;

// |S1| = n1, |S2| = n2. Only subsets of S1 with at least `subset_floor`
// points are handed to the inner learner; their number may not exceed
// `subset_cap`. scale < 1 marks a desk-scale plan.
struct SplitPlan {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t subset_floor = 0;
  std::uint64_t subset_cap = kDefaultSubsetCap;
  Rational scale = 1;
  bool desk_scale = false;  // sizes set below the full plan by hand

  std::uint64_t total() const { return n1 + n2; }
};

// n1 = ceil(scale * max{2 inner(eps/9, delta/5), 162 (1 + ln(5/delta)) / eps^2}),
// n2 = ceil(scale * 162 (2 n1 + ln(5/delta)) / eps^2), full power set.
SplitPlan AdditiveSplitPlan(const Rational& epsilon, const Rational& delta,
                            const SampleSizeFn& inner_size, const Rational& scale);

// Number of subsets of an n-set with at least `floor` elements, saturating.
std::uint64_t CountSubsets(std::uint64_t n, std::uint64_t floor);

// ceil((1 - eta - 2 eps / 9) n1), clamped at 0: the size a clean part of S1
// reaches with high probability under an eta budget.
std::uint64_t CleanSubsetFloor(std::uint64_t n1, const Rational& eta, const Rational& epsilon);

// Shuffle s by seed, split into S1 | S2, run `inner` on every admissible
// subset of S1, deduplicate the outputs and return the Yatracos minimizer on
// S2. Subsets whose inner call throws contribute nothing. Throws BadParams if
// |s| != n1 + n2 and SubsetBlowup if the subset count exceeds the cap.
Dist Robustify(const Learner& inner, const Sample& s, const SplitPlan& plan, const Seed& seed,
               LearnTrace* trace = nullptr);

// `inner` wrapped as a learner with a fixed plan.
Learner RobustLearner(Learner inner, SplitPlan plan);

// Number of grid steps ceil(8 alpha / eps); levels run 0..that value.
std::uint64_t EtaGridSteps(const Rational& alpha, const Rational& epsilon);

// |S0| + sum over levels of level.sample_size(eps / (8 alpha), delta / 2),
// with |S0| = YatracosSampleSize(steps + 1, eps/4, delta/2).
std::uint64_t EtaGridSampleSize(const std::function<Learner(std::size_t)>& level_learners,
                                const Rational& alpha, const Rational& epsilon,
                                const Rational& delta);

// Known-eta reduction: level i runs on its own disjoint subsample, the
// candidates are deduplicated and Yatracos-selected on S0 (the first |S0|
// points). Throws InsufficientSample if s is too short.
Dist EtaGridReduce(const std::function<Learner(std::size_t)>& level_learners,
                   const Rational& alpha, const Sample& s, const Rational& epsilon,
                   const Rational& delta, const Seed& seed, LearnTrace* trace = nullptr);

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Wilson score interval for k successes out of n at the given z (95% default).
Interval WilsonInterval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

struct TrialRecord {
  std::uint64_t index = 0;
  std::uint64_t n = 0;
  Dist output = Dirac({0, 0});
  Rational error;
  bool success = false;
  std::uint64_t micros = 0;
  LearnTrace trace;
};

struct TrialSummary {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  double mean_error = 0;
  Rational max_error;
  Interval failure_rate_ci;
  std::vector<TrialRecord> records;

  double failure_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
  }
};

// Trial t draws n points from `truth` on Seed.Child(t).Child(0), runs the
// learner on Seed.Child(t).Child(1) and scores tv(output, target); a trial
// fails when that error exceeds epsilon.
TrialSummary EvaluateLearner(const Learner& learner, const Dist& truth, const Dist& target,
                             std::uint64_t trials, std::uint64_t n, const Rational& epsilon,
                             const Seed& seed, std::size_t threads = 1);

}  // namespace tvlab

#endif  // TVLAB_LEARNERS_H_
