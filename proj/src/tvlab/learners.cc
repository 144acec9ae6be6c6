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

#include "tvlab/learners.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "tvlab/error.h"
#include "tvlab/parallel.h"

namespace tvlab {
namespace {

void CheckUnit(const Rational& v, const char* name) {
  if (v <= 0 || v >= 1) {
    Fail(ErrorCode::kBadParams, std::string(name) + " must lie in (0, 1)");
  }
}

std::uint64_t CeilInverse(const Rational& epsilon) { return CeilToU64(Rational(1 / epsilon)); }

void AddUnique(std::vector<Dist>& out, Dist d) {
  if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
}

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

}  // namespace

Dist RealizableQgLearn(const Sample& s, const GrowthFn& g) {
  for (const DomainPoint& x : s.points) {
    if (auto member = MemberForIndicator(x, g)) return *std::move(member);
  }
  return Dirac({0, 0});
}

std::uint64_t RealizableSampleSize(const Rational& epsilon, const Rational& delta,
                                   const GrowthFn& g) {
  CheckUnit(epsilon, "epsilon");
  CheckUnit(delta, "delta");
  const double growth = static_cast<double>(g(CeilInverse(epsilon)));
  return CeilToU64(std::log(1.0 / ToDouble(delta)) * growth);
}

Learner RealizableQgLearner(const GrowthFn& g) {
  return Learner{
      "realizable-qg",
      [g](const Sample& s, const Seed&, LearnTrace*) { return RealizableQgLearn(s, g); },
      [g](const Rational& epsilon, const Rational& delta) {
        return RealizableSampleSize(epsilon, delta, g);
      }};
}

SplitPlan AdditiveSplitPlan(const Rational& epsilon, const Rational& delta,
                            const SampleSizeFn& inner_size, const Rational& scale) {
  CheckUnit(epsilon, "epsilon");
  CheckUnit(delta, "delta");
  if (scale <= 0) Fail(ErrorCode::kBadParams, "scale must be positive");
  const double eps = ToDouble(epsilon);
  const double log_term = std::log(5.0 / ToDouble(delta));
  const double inner = 2.0 * static_cast<double>(inner_size(epsilon / 9, delta / 5));
  const double uniform = 162.0 * (1.0 + log_term) / (eps * eps);
  const double s = ToDouble(scale);
  SplitPlan plan;
  plan.n1 = CeilToU64(s * std::max(inner, uniform));
  plan.n2 = CeilToU64(s * 162.0 * (2.0 * static_cast<double>(plan.n1) + log_term) / (eps * eps));
  plan.subset_floor = 0;
  plan.scale = scale;
  return plan;
}

std::uint64_t CountSubsets(std::uint64_t n, std::uint64_t floor) {
  if (floor > n) return 0;
  // sum_{e=0}^{n-floor} C(n, e), counting excluded elements.
  unsigned __int128 total = 0;
  unsigned __int128 binom = 1;
  for (std::uint64_t e = 0; e <= n - floor; ++e) {
    if (e > 0) {
      binom = binom * (n - e + 1) / e;
      if (binom > kSaturated) return kSaturated;
    }
    total += binom;
    if (total > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t CleanSubsetFloor(std::uint64_t n1, const Rational& eta, const Rational& epsilon) {
  const Rational fraction = 1 - eta - 2 * epsilon / 9;
  if (fraction <= 0) return 0;
  return std::min(n1, CeilToU64(Rational(fraction * static_cast<unsigned long long>(n1))));
}

Dist Robustify(const Learner& inner, const Sample& s, const SplitPlan& plan, const Seed& seed,
               LearnTrace* trace) {
  if (s.size() != plan.total()) {
    Fail(ErrorCode::kBadParams, "sample has " + std::to_string(s.size()) +
                                    " points, plan expects " + std::to_string(plan.total()));
  }
  if (plan.n2 == 0) Fail(ErrorCode::kEmptySample, "S2 is empty");
  if (plan.subset_floor > plan.n1) Fail(ErrorCode::kBadParams, "subset floor exceeds n1");
  const std::uint64_t subset_count = CountSubsets(plan.n1, plan.subset_floor);
  if (subset_count > plan.subset_cap) {
    Fail(ErrorCode::kSubsetBlowup, std::to_string(subset_count) + " subsets exceed the cap of " +
                                       std::to_string(plan.subset_cap));
  }

  std::vector<DomainPoint> shuffled = s.points;
  Rng rng(seed.Child(0));
  for (std::size_t k = shuffled.size(); k > 1; --k) {
    std::swap(shuffled[k - 1], shuffled[rng.Below(k)]);
  }
  const std::size_t n1 = plan.n1;
  Sample s2{{shuffled.begin() + static_cast<std::ptrdiff_t>(n1), shuffled.end()}, "S2"};

  std::vector<Dist> hypotheses;
  std::uint64_t failed = 0;
  std::uint64_t index = 0;
  const Seed inner_seed = seed.Child(1);
  Sample subset;
  subset.origin = "S1-subset";
  std::vector<std::size_t> excluded;
  std::vector<char> skip(n1, 0);
  for (std::size_t e = 0; e <= n1 - plan.subset_floor; ++e) {
    // Lexicographic walk over e-element exclusion sets.
    excluded.resize(e);
    for (std::size_t k = 0; k < e; ++k) excluded[k] = k;
    while (true) {
      std::fill(skip.begin(), skip.end(), 0);
      for (std::size_t k : excluded) skip[k] = 1;
      subset.points.clear();
      for (std::size_t k = 0; k < n1; ++k) {
        if (!skip[k]) subset.points.push_back(shuffled[k]);
      }
      try {
        AddUnique(hypotheses, inner.run(subset, inner_seed.Child(index), nullptr));
      } catch (const Error&) {
        ++failed;
      }
      ++index;

      std::size_t pos = e;
      while (pos > 0 && excluded[pos - 1] == n1 - e + pos - 1) --pos;
      if (pos == 0) break;
      ++excluded[pos - 1];
      for (std::size_t k = pos; k < e; ++k) excluded[k] = excluded[k - 1] + 1;
    }
  }

  HypothesisList list = BuildYatracos(hypotheses);
  SelectionTrace selection;
  Dist chosen = SelectMin(list, s2, &selection);
  if (trace != nullptr) {
    trace->hypotheses = std::move(list.hypotheses);
    trace->selection = std::move(selection);
    trace->has_selection = true;
    trace->subsets_enumerated = index;
    trace->failed_subsets = failed;
    trace->desk_scale = plan.desk_scale || plan.scale < 1;
  }
  return chosen;
}

Learner RobustLearner(Learner inner, SplitPlan plan) {
  const std::string name = "robust(" + inner.name + ")";
  auto shared = std::make_shared<const Learner>(std::move(inner));
  return Learner{name,
                 [shared, plan](const Sample& s, const Seed& seed, LearnTrace* trace) {
                   return Robustify(*shared, s, plan, seed, trace);
                 },
                 [plan](const Rational&, const Rational&) { return plan.total(); }};
}

std::uint64_t EtaGridSteps(const Rational& alpha, const Rational& epsilon) {
  if (alpha < 1) Fail(ErrorCode::kBadParams, "alpha must be at least 1");
  CheckUnit(epsilon, "epsilon");
  return CeilToU64(Rational(8 * alpha / epsilon));
}

std::uint64_t EtaGridSampleSize(const std::function<Learner(std::size_t)>& level_learners,
                                const Rational& alpha, const Rational& epsilon,
                                const Rational& delta) {
  const std::uint64_t steps = EtaGridSteps(alpha, epsilon);
  CheckUnit(delta, "delta");
  std::uint64_t total = YatracosSampleSize(steps + 1, epsilon / 4, delta / 2);
  const Rational level_eps = epsilon / (8 * alpha);
  for (std::uint64_t i = 0; i <= steps; ++i) {
    total += level_learners(i).sample_size(level_eps, delta / 2);
  }
  return total;
}

Dist EtaGridReduce(const std::function<Learner(std::size_t)>& level_learners,
                   const Rational& alpha, const Sample& s, const Rational& epsilon,
                   const Rational& delta, const Seed& seed, LearnTrace* trace) {
  const std::uint64_t steps = EtaGridSteps(alpha, epsilon);
  CheckUnit(delta, "delta");
  const std::uint64_t s0_size = YatracosSampleSize(steps + 1, epsilon / 4, delta / 2);
  const Rational level_eps = epsilon / (8 * alpha);

  std::vector<Learner> levels;
  std::vector<std::uint64_t> sizes;
  std::uint64_t needed = s0_size;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    levels.push_back(level_learners(i));
    sizes.push_back(levels.back().sample_size(level_eps, delta / 2));
    needed += sizes.back();
  }
  if (s.size() < needed) {
    Fail(ErrorCode::kInsufficientSample, "eta-grid reduction needs " + std::to_string(needed) +
                                             " points, got " + std::to_string(s.size()));
  }

  auto begin = s.points.begin();
  Sample s0{{begin, begin + static_cast<std::ptrdiff_t>(s0_size)}, "S0"};
  std::size_t offset = s0_size;
  std::vector<Dist> candidates;
  for (std::uint64_t i = 0; i <= steps; ++i) {
    Sample part{{begin + static_cast<std::ptrdiff_t>(offset),
                 begin + static_cast<std::ptrdiff_t>(offset + sizes[i])},
                "S" + std::to_string(i + 1)};
    offset += sizes[i];
    AddUnique(candidates, levels[i].run(part, seed.Child(i), nullptr));
  }

  HypothesisList list = BuildYatracos(candidates);
  SelectionTrace selection;
  Dist chosen = SelectMin(list, s0, &selection);
  if (trace != nullptr) {
    trace->hypotheses = std::move(list.hypotheses);
    trace->selection = std::move(selection);
    trace->has_selection = true;
  }
  return chosen;
}

Interval WilsonInterval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // The endpoints are exact at the boundary counts.
  return {k == 0 ? 0.0 : std::max(0.0, center - half),
          k == n ? 1.0 : std::min(1.0, center + half)};
}

TrialSummary EvaluateLearner(const Learner& learner, const Dist& truth, const Dist& target,
                             std::uint64_t trials, std::uint64_t n, const Rational& epsilon,
                             const Seed& seed, std::size_t threads) {
  if (trials < 1) Fail(ErrorCode::kBadParams, "need at least one trial");
  TrialSummary summary;
  summary.trials = trials;
  summary.records.resize(trials);
  ParallelFor(trials, threads, [&](std::size_t t) {
    const auto start = std::chrono::steady_clock::now();
    const Seed trial_seed = seed.Child(t);
    Sample s = SampleFrom(truth, n, trial_seed.Child(0));
    TrialRecord& record = summary.records[t];
    record.index = t;
    record.n = n;
    record.output = learner.run(s, trial_seed.Child(1), &record.trace);
    record.error = TvDistance(record.output, target);
    record.success = record.error <= epsilon;
    record.micros = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                              start)
            .count());
  });
  double total = 0;
  summary.max_error = 0;
  for (const auto& r : summary.records) {
    if (!r.success) ++summary.failures;
    total += ToDouble(r.error);
    summary.max_error = std::max(summary.max_error, r.error);
  }
  summary.mean_error = total / static_cast<double>(trials);
  summary.failure_rate_ci = WilsonInterval(summary.failures, trials);
  return summary;
}

}  // namespace tvlab
