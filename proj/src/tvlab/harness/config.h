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

#ifndef TVLAB_HARNESS_CONFIG_H_
#define TVLAB_HARNESS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/families.h"
#include "tvlab/learners.h"
#include "tvlab/rational.h"

namespace tvlab::harness {

enum class Schedule {
  kPerMember,   // `trials` runs for every target member
  kRoundRobin,  // `trials` runs in total, trial t on member t mod M
};

// Everything a run depends on. Two runs with equal configs write
// byte-identical CSV files (timing off).
//
// Format: INI-style "key = value" lines under [experiment], [family],
// [adversary], [learner] and [acceptance]; '#' or ';' starts a comment line.
// Rationals are exact: "3/16", "0.15" and "1e-3" are all accepted.
struct ExperimentConfig {
  // [experiment]
  std::string name;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t threads = 0;  // 0 = one per core
  Rational scale = 1;
  Schedule schedule = Schedule::kPerMember;
  bool timing = false;
  std::uint64_t subset_cap = kDefaultSubsetCap;
  std::uint64_t member_cap = kDefaultMemberCap;

  // [family]
  std::string family_kind = "qg";  // qg | packing | explicit
  GrowthFn growth = GrowthFn::Square();
  std::vector<std::uint64_t> i_values{1};
  std::vector<std::uint64_t> j_values{1};
  Rational gamma = Rational(1, 4);
  std::uint64_t packing_k = 1;
  std::vector<Dist> members;
  std::optional<std::uint64_t> target;  // 1-based index into the listing

  // [adversary]
  std::string adversary_kind = "none";  // none | huber | subtract | general
  std::optional<Rational> eta;
  std::optional<Rational> eta_add;
  std::optional<Rational> eta_remove;
  std::string add = "decoy";         // "decoy" or a distribution label
  std::string remove = "indicator";  // "indicator" or a distribution label

  // [learner]
  std::optional<Rational> epsilon;
  std::optional<Rational> delta;
  std::optional<Rational> alpha;       // accuracy (privacy / cover experiments)
  std::optional<Rational> beta;        // confidence (privacy / cover experiments)
  std::optional<Rational> robustness;  // the factor in alpha * eta + eps
  std::optional<Rational> dp_epsilon;
  std::optional<Rational> dp_delta;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n1;
  std::optional<std::uint64_t> n2;
  std::optional<std::uint64_t> subset_floor;
  std::optional<std::uint64_t> level_n1;
  std::optional<std::uint64_t> level_n2;

  // [acceptance]
  std::optional<Rational> max_failure_rate;
  std::optional<Rational> min_success_rate;

  FamilySpec Family() const;

  // Canonical text; ValidateConfig(Canonical()) reproduces the config
  // except for threads, which is an execution detail.
  std::string Canonical() const;
};

// Parses and validates a config document. Every violation is reported,
// one "line N: ..." entry per problem, in a single ConfigError.
ExperimentConfig ValidateConfig(std::string_view text);

// "1..4" or "1,5,9" (mixed forms allowed: "1..3,7").
std::vector<std::uint64_t> ParseNaturalList(std::string_view text);

}  // namespace tvlab::harness

#endif  // TVLAB_HARNESS_CONFIG_H_
