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

#include "tvlab/harness/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>

#include <nlohmann/json.hpp>

#include "tvlab/adversary.h"
#include "tvlab/compress.h"
#include "tvlab/error.h"
#include "tvlab/harness/labels.h"
#include "tvlab/harness/report.h"
#include "tvlab/learners.h"
#include "tvlab/parallel.h"
#include "tvlab/privacy.h"
#include "tvlab/select.h"

namespace tvlab::harness {
namespace {

using Json = nlohmann::ordered_json;

// One member under test, after the adversary has acted.
struct Target {
  std::size_t listing_index = 0;
  Dist truth = Dirac({0, 0});      // the sampling distribution
  Dist reference = Dirac({0, 0});  // error = tv(output, reference)
  Rational eta;                    // effective corruption level
  Rational threshold;              // success iff error <= threshold (unless overridden)
  std::uint64_t n = 0;
  Rational predicted;              // subtractive attack only
};

struct Context {
  const ExperimentConfig* config = nullptr;
  std::vector<LabeledDist> listing;
  std::vector<Dist> class_dists;
  std::vector<Target> targets;
  std::optional<HypothesisList> class_list;
};

struct TrialOutput {
  std::string label;
  std::optional<LearnTrace> trace;
  bool flag = true;  // experiment-specific side check
};

struct Scored {
  Rational error;
  bool success = false;
};

struct Row {
  std::uint64_t trial = 0;
  std::size_t target = 0;
  std::uint64_t n = 0;
  std::string label;
  Scored scored;
  std::uint64_t micros = 0;
  std::optional<LearnTrace> trace;
  bool flag = true;
};

struct Verdict {
  bool holds = true;
  std::string statement;
  std::vector<std::string> flags;
  Json details = Json::object();
};

Rational Rat(std::int64_t p, std::int64_t q) { return Rational(p) / Rational(q); }

std::string RationalField(const Rational& r) { return FormatRational(r); }

void Collect(std::vector<std::string>& errors, bool ok, const std::string& message) {
  if (!ok) errors.push_back(message);
}

void CheckOpenUnit(std::vector<std::string>& errors, const std::optional<Rational>& v,
                   const std::string& key) {
  if (v && (*v <= 0 || *v >= 1)) {
    errors.push_back(key + " = " + FormatRational(*v) + " must satisfy 0 < " + key + " < 1");
  }
}

void SetDefault(std::optional<Rational>& slot, Rational value) {
  if (!slot) slot = std::move(value);
}

void SetDefault(std::optional<std::uint64_t>& slot, std::uint64_t value) {
  if (!slot) slot = value;
}

// The split plan the additive guarantee asks for at accuracy eps.
SplitPlan FullPlan(const ExperimentConfig& c, const Rational& eps, const Rational& scale = 1) {
  const GrowthFn g = c.growth;
  return AdditiveSplitPlan(
      eps, *c.delta,
      [g](const Rational& e, const Rational& d) { return RealizableSampleSize(e, d, g); }, scale);
}

std::uint64_t Scaled(const ExperimentConfig& c, std::uint64_t n) {
  if (c.scale == 1) return n;
  return std::max<std::uint64_t>(1, CeilToU64(c.scale * n));
}

// Decoy indicator for a Q_g member: (i', 2j + 2) with i' the next listed i,
// cyclically, or i + 1 when only one i is listed.
Dist DecoyFor(const ExperimentConfig& c, const QgCoords& q) {
  std::vector<std::uint64_t> is = c.i_values;
  std::sort(is.begin(), is.end());
  is.erase(std::unique(is.begin(), is.end()), is.end());
  std::uint64_t other = q.i + 1;
  if (is.size() > 1) {
    auto it = std::upper_bound(is.begin(), is.end(), q.i);
    other = it == is.end() ? is.front() : *it;
  }
  return Dirac({other, 2 * q.j + 2});
}

Dist AddedComponent(const ExperimentConfig& c, const LabeledDist& member) {
  if (c.add != "decoy") return ParseLabel(c.add);
  if (!member.coords) Fail(ErrorCode::kConfigError, "adversary.add = decoy needs a qg family");
  return DecoyFor(c, *member.coords);
}

Dist RemovedComponent(const ExperimentConfig& c, const LabeledDist& member) {
  if (c.remove != "indicator") return ParseLabel(c.remove);
  if (!member.coords) {
    Fail(ErrorCode::kConfigError, "adversary.remove = indicator needs a qg family");
  }
  return Dirac({member.coords->i, 2 * member.coords->j + 2});
}

// Applies the configured adversary; returns the sampling distribution and
// the effective corruption level.
std::pair<Dist, Rational> Corrupt(const ExperimentConfig& c, const LabeledDist& member) {
  const std::string& kind = c.adversary_kind;
  if (kind == "huber") {
    return {HuberContaminate(member.dist, AddedComponent(c, member), CorruptionLevel::Of(*c.eta)),
            *c.eta};
  }
  if (kind == "subtract") {
    Rational eta;
    if (c.eta) {
      eta = *c.eta;
    } else if (member.coords) {
      eta = Rational(1) / Rational(member.coords->k);
    } else {
      Fail(ErrorCode::kConfigError, "adversary.eta is required outside qg families");
    }
    return {SubtractComponent(member.dist, RemovedComponent(c, member), CorruptionLevel::Of(eta)),
            eta};
  }
  if (kind == "general") {
    Corruption out = GeneralCorrupt(member.dist, AddedComponent(c, member),
                                    RemovedComponent(c, member), CorruptionLevel::Of(*c.eta_add),
                                    CorruptionLevel::Of(*c.eta_remove));
    return {std::move(out.dist), out.displacement_bound};
  }
  return {member.dist, Rational(0)};
}

Rational MinDistance(const Dist& p, const std::vector<Dist>& members) {
  Rational best = 1;
  for (const Dist& m : members) best = std::min(best, TvDistance(p, m));
  return best;
}

Json TraceJson(std::uint64_t trial, const LearnTrace& trace) {
  Json j;
  j["trial"] = trial;
  Json hyps = Json::array();
  for (const Dist& h : trace.hypotheses) hyps.push_back(LabelOf(h));
  j["hypotheses"] = hyps;
  Json scores = Json::array();
  for (const Rational& s : trace.selection.scores) scores.push_back(FormatRational(s));
  j["scores"] = scores;
  j["chosen"] = trace.selection.chosen;
  j["subsets_enumerated"] = trace.subsets_enumerated;
  j["failed_subsets"] = trace.failed_subsets;
  j["desk_scale"] = trace.desk_scale;
  return j;
}

// Base class: one per experiment name.
class Experiment {
 public:
  Experiment(std::string name, std::string description)
      : name_(std::move(name)), description_(std::move(description)) {}
  virtual ~Experiment() = default;

  const std::string& name() const { return name_; }
  const std::string& description() const { return description_; }

  // Fill defaults and append problems to `errors`.
  virtual void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const = 0;
  virtual void Prepare(Context&) const {}
  // Sets reference, threshold and n on a target whose truth is known.
  virtual void Finish(const Context& ctx, Target& t) const = 0;
  virtual TrialOutput Run(const Context& ctx, const Target& t, const Sample& s,
                          const Seed& seed) const = 0;

  virtual Scored Score(const Context& ctx, const Target& t, std::string_view label) const {
    Dist out = ParseLabel(label);
    Rational error = TvDistance(out, t.reference);
    bool ok = Accept(ctx, t, out, error);
    return {std::move(error), ok};
  }

  // Baseline failure probability for the default rate predicate.
  virtual Rational BaseFailureRate(const ExperimentConfig& c) const { return *c.delta; }
  virtual bool UsesRatePredicate() const { return true; }
  // True when sample sizes sit below what the guarantees ask for.
  virtual bool DeskScale(const ExperimentConfig& c) const { return c.scale < 1; }
  virtual std::string Statement() const {
    return "failure rate <= delta + 3 sqrt(delta (1 - delta) / trials) for every member";
  }
  virtual void Conclude(const Context&, const std::vector<Row>&, Verdict&) const {}

 protected:
  virtual bool Accept(const Context&, const Target& t, const Dist&, const Rational& error) const {
    return error <= t.threshold;
  }

 private:
  std::string name_;
  std::string description_;
};

void RequireQg(const ExperimentConfig& c, std::vector<std::string>& errors) {
  Collect(errors, c.family_kind == "qg", "family.kind must be qg for " + c.name);
}

void CheckAdversary(const ExperimentConfig& c, std::vector<std::string>& errors) {
  const std::string& kind = c.adversary_kind;
  if (kind == "huber") {
    Collect(errors, c.eta.has_value(), "adversary.eta is required for huber");
  } else if (kind == "general") {
    Collect(errors, c.eta_add.has_value() && c.eta_remove.has_value(),
            "adversary.eta_add and adversary.eta_remove are required for general");
  } else if (kind == "subtract") {
    Collect(errors, c.eta.has_value() || c.family_kind == "qg",
            "adversary.eta is required for subtract outside qg families");
  }
  const bool adds = kind == "huber" || kind == "general";
  const bool removes = kind == "subtract" || kind == "general";
  if (adds && c.add == "decoy") {
    Collect(errors, c.family_kind == "qg", "adversary.add = decoy needs a qg family");
  }
  if (removes && c.remove == "indicator") {
    Collect(errors, c.family_kind == "qg", "adversary.remove = indicator needs a qg family");
  }
  for (const auto* label : {&c.add, &c.remove}) {
    if (*label == "decoy" || *label == "indicator") continue;
    try {
      ParseLabel(*label);
    } catch (const Error& e) {
      errors.push_back("adversary component '" + *label + "': " + e.what());
    }
  }
}

void CheckAccuracy(ExperimentConfig& c, std::vector<std::string>& errors, Rational eps,
                   Rational delta) {
  SetDefault(c.epsilon, std::move(eps));
  SetDefault(c.delta, std::move(delta));
  CheckOpenUnit(errors, c.epsilon, "epsilon");
  CheckOpenUnit(errors, c.delta, "delta");
}

void CheckPrivacy(ExperimentConfig& c, std::vector<std::string>& errors) {
  SetDefault(c.alpha, Rat(1, 2));
  SetDefault(c.beta, Rat(1, 10));
  SetDefault(c.dp_epsilon, Rational(1));
  SetDefault(c.dp_delta, Rat(1, 1000));
  CheckOpenUnit(errors, c.alpha, "alpha");
  CheckOpenUnit(errors, c.beta, "beta");
  CheckOpenUnit(errors, c.dp_delta, "dp_delta");
  Collect(errors, *c.dp_epsilon > 0, "dp_epsilon must be positive");
}

// ---------------------------------------------------------------------------

class RealizableQg : public Experiment {
 public:
  RealizableQg()
      : Experiment("realizable-qg",
                   "first-indicator learner on Q_g samples; failure rate vs delta") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    CheckAccuracy(c, errors, Rat(1, 2), Rat(1, 10));
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = ctx.listing[t.listing_index].dist;
    t.threshold = *c.epsilon;
    t.n = c.n ? *c.n : Scaled(c, RealizableSampleSize(*c.epsilon, *c.delta, c.growth));
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed&) const override {
    return {LabelOf(RealizableQgLearn(s, ctx.config->growth)), std::nullopt, true};
  }
};

class SubtractiveAttack : public Experiment {
 public:
  SubtractiveAttack()
      : Experiment("subtractive-attack",
                   "realizable learner on q' (indicator removed); "
                   "exact error vs alpha*eta + eps") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    if (c.adversary_kind == "none") c.adversary_kind = "subtract";
    Collect(errors, c.adversary_kind == "subtract",
            "subtractive-attack needs adversary.kind = subtract");
    CheckAccuracy(c, errors, Rat(1, 10), Rat(1, 10));
    SetDefault(c.robustness, Rational(1));
    SetDefault(c.n, 100);
    Collect(errors, *c.robustness >= 1, "robustness must be at least 1");
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    const LabeledDist& member = ctx.listing[t.listing_index];
    t.reference = t.truth;
    t.threshold = *c.robustness * t.eta + *c.epsilon;
    t.n = *c.n;
    const Rational j = member.coords->j;
    const Rational k = member.coords->k;
    // The learner never sees an indicator, outputs delta_(0,0) and loses the
    // whole uniform block of q'.
    t.predicted = (1 / j - 1 / k) / (1 - 1 / k);
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed&) const override {
    return {LabelOf(RealizableQgLearn(s, ctx.config->growth)), std::nullopt, true};
  }

  bool UsesRatePredicate() const override { return false; }
  std::string Statement() const override {
    return "every trial error equals (1/j - 1/k) / (1 - 1/k) exactly and exceeds "
           "alpha*eta + eps";
  }

  void Conclude(const Context& ctx, const std::vector<Row>& rows, Verdict& v) const override {
    const ExperimentConfig& c = *ctx.config;
    std::vector<bool> exact(ctx.targets.size(), true);
    for (const Row& r : rows) {
      if (r.scored.error != ctx.targets[r.target].predicted) exact[r.target] = false;
    }
    Json members = Json::array();
    for (std::size_t k = 0; k < ctx.targets.size(); ++k) {
      const Target& t = ctx.targets[k];
      const bool exceeds = t.predicted > t.threshold;
      Json m;
      m["member"] = ctx.listing[t.listing_index].label;
      m["eta"] = FormatRational(t.eta);
      m["predicted_error"] = FormatRational(t.predicted);
      m["threshold"] = FormatRational(t.threshold);
      m["all_errors_exact"] = static_cast<bool>(exact[k]);
      m["exceeds_threshold"] = exceeds;
      members.push_back(m);
      if (exceeds) {
        v.flags.push_back("exceeds alpha*eta + eps for alpha=" + FormatDecimalShort(*c.robustness) +
                          ", eps=" + FormatDecimalShort(*c.epsilon) +
                          ", eta=" + FormatDecimalShort(t.eta) + " (" +
                          ctx.listing[t.listing_index].label + ")");
      }
      v.holds = v.holds && exact[k] && exceeds;
    }
    v.details["members"] = members;
  }

 private:
  static std::string FormatDecimalShort(const Rational& r) {
    std::string s = FormatRational(r);
    if (s.size() > 2 && s.substr(s.size() - 2) == "/1") s.resize(s.size() - 2);
    return s;
  }
};

class AdditiveHuber : public Experiment {
 public:
  AdditiveHuber()
      : Experiment("additive-huber",
                   "subset enumeration + Yatracos selection under Huber contamination; "
                   "error vs 2 eta + eps") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    Collect(errors, c.adversary_kind == "none" || c.adversary_kind == "huber",
            "additive-huber needs adversary.kind = huber or none");
    CheckAccuracy(c, errors, Rat(1, 10), Rat(1, 10));
    Collect(errors, c.n1.has_value() == c.n2.has_value(),
            "learner.n1 and learner.n2 must be given together");
  }

  SplitPlan Plan(const ExperimentConfig& c) const {
    if (c.n1) {
      const SplitPlan full = FullPlan(c, *c.epsilon);
      SplitPlan plan;
      plan.n1 = *c.n1;
      plan.n2 = *c.n2;
      plan.subset_floor = c.subset_floor.value_or(0);
      plan.subset_cap = c.subset_cap;
      plan.scale = c.scale;
      plan.desk_scale = plan.n1 < full.n1 || plan.n2 < full.n2;
      return plan;
    }
    SplitPlan plan = FullPlan(c, *c.epsilon, c.scale);
    plan.subset_floor = c.subset_floor.value_or(0);
    plan.subset_cap = c.subset_cap;
    return plan;
  }

  bool DeskScale(const ExperimentConfig& c) const override {
    return Plan(c).desk_scale || c.scale < 1;
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = ctx.listing[t.listing_index].dist;
    t.threshold = 2 * t.eta + *c.epsilon;
    t.n = Plan(c).total();
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed& seed) const override {
    LearnTrace trace;
    Dist out = Robustify(RealizableQgLearner(ctx.config->growth), s, Plan(*ctx.config), seed,
                         &trace);
    return {LabelOf(out), std::move(trace), true};
  }
};

class YatracosFinite : public Experiment {
 public:
  YatracosFinite()
      : Experiment("yatracos-finite",
                   "minimum-distance selection over a finite class; error vs 3 opt + eps") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    CheckAccuracy(c, errors, Rat(1, 5), Rat(1, 10));
  }

  void Prepare(Context& ctx) const override { ctx.class_list = BuildYatracos(ctx.class_dists); }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = t.truth;
    t.threshold = 3 * MinDistance(t.truth, ctx.class_dists) + *c.epsilon;
    t.n = c.n ? *c.n
              : Scaled(c, YatracosSampleSize(ctx.class_dists.size(), *c.epsilon, *c.delta));
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed&) const override {
    LearnTrace trace;
    trace.hypotheses = ctx.class_list->hypotheses;
    trace.has_selection = true;
    const Dist& out = SelectMin(*ctx.class_list, s, &trace.selection);
    return {LabelOf(out), std::move(trace), true};
  }

  std::string Statement() const override {
    return "failure rate of error <= 3 opt + eps is at most delta + 3 sigma for every member";
  }
};

class EtaGrid : public Experiment {
 public:
  EtaGrid()
      : Experiment("eta-grid",
                   "known-eta grid reduction over robust learners; error vs 3 alpha eta + eps") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    Collect(errors, c.adversary_kind == "none" || c.adversary_kind == "huber",
            "eta-grid needs adversary.kind = huber or none");
    CheckAccuracy(c, errors, Rat(1, 2), Rat(1, 10));
    SetDefault(c.robustness, Rational(2));
    SetDefault(c.level_n1, 10);
    SetDefault(c.level_n2, 100);
    Collect(errors, *c.robustness >= 1, "robustness must be at least 1");
    Collect(errors, *c.level_n1 >= 1 && *c.level_n2 >= 1, "level_n1 and level_n2 must be >= 1");
  }

  std::function<Learner(std::size_t)> Levels(const ExperimentConfig& c) const {
    const Rational step = *c.epsilon / (8 * *c.robustness);
    return [c, step](std::size_t i) {
      SplitPlan plan;
      plan.n1 = *c.level_n1;
      plan.n2 = *c.level_n2;
      plan.subset_floor = CleanSubsetFloor(plan.n1, step * i, step);
      plan.subset_cap = c.subset_cap;
      plan.scale = c.scale;
      const SplitPlan full = FullPlan(c, step);
      plan.desk_scale = plan.n1 < full.n1 || plan.n2 < full.n2;
      return RobustLearner(RealizableQgLearner(c.growth), plan);
    };
  }

  bool DeskScale(const ExperimentConfig& c) const override {
    const SplitPlan full = FullPlan(c, *c.epsilon / (8 * *c.robustness));
    return *c.level_n1 < full.n1 || *c.level_n2 < full.n2 || c.scale < 1;
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = ctx.listing[t.listing_index].dist;
    t.threshold = 3 * *c.robustness * t.eta + *c.epsilon;
    const std::uint64_t needed = EtaGridSampleSize(Levels(c), *c.robustness, *c.epsilon, *c.delta);
    t.n = c.n ? *c.n : needed;
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed& seed) const override {
    const ExperimentConfig& c = *ctx.config;
    LearnTrace trace;
    Dist out = EtaGridReduce(Levels(c), *c.robustness, s, *c.epsilon, *c.delta, seed, &trace);
    return {LabelOf(out), std::move(trace), true};
  }
};

class CompressionRoundtrip : public Experiment {
 public:
  CompressionRoundtrip()
      : Experiment("compression-roundtrip",
                   "size-1 compression of Q_g samples; success rate vs 2/3") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    CheckAccuracy(c, errors, Rat(1, 3), Rat(1, 3));
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = ctx.listing[t.listing_index].dist;
    t.threshold = *c.epsilon;
    t.n = c.n ? *c.n : Scaled(c, CompressionSampleSize(*c.epsilon, c.growth));
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed&) const override {
    CompressionMessage m = QgEncode(s, ctx.config->growth);
    return {LabelOf(QgDecode(m, ctx.config->growth)), std::nullopt,
            !m.fallback_outside_sample};
  }

  Rational BaseFailureRate(const ExperimentConfig&) const override { return Rat(1, 3); }
  std::string Statement() const override {
    return "success rate >= 2/3 - 3 sqrt((2/9) / trials) for every member";
  }

  void Conclude(const Context&, const std::vector<Row>& rows, Verdict& v) const override {
    std::uint64_t fallbacks = 0;
    for (const Row& r : rows) fallbacks += r.flag ? 0 : 1;
    v.details["fallbacks_outside_sample"] = fallbacks;
  }
};

// "hist{a b count freq; ...}" with freq "-" for suppressed bins.
std::string HistogramLabel(const std::map<DomainPoint, std::uint64_t>& counts,
                           const BinFrequencies& released) {
  std::string out = "hist{";
  bool first = true;
  for (const auto& [x, c] : counts) {
    if (!first) out += "; ";
    first = false;
    out += std::to_string(x.a) + " " + std::to_string(x.b) + " " + std::to_string(c) + " ";
    auto it = released.find(x);
    if (it == released.end()) {
      out += "-";
    } else {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", it->second);
      out += buf;
    }
  }
  return out + "}";
}

class DpHistogram : public Experiment {
 public:
  DpHistogram()
      : Experiment("dp-histogram",
                   "stability histogram; every bin within alpha of its empirical frequency") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    SetDefault(c.alpha, Rat(1, 10));
    CheckPrivacy(c, errors);
    Collect(errors, *c.dp_delta > 0, "dp_delta must be positive for the histogram");
  }

  DpParams Params(const ExperimentConfig& c) const { return {*c.dp_epsilon, *c.dp_delta}; }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = t.truth;
    t.threshold = *c.alpha;
    t.n = c.n ? *c.n : HistogramSampleSize(*c.alpha, *c.beta, Params(c));
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed& seed) const override {
    const ExperimentConfig& c = *ctx.config;
    BinFrequencies released = StabilityHistogram(s, Params(c), *c.alpha, *c.beta, seed);
    const auto counts = BinCounts(s);
    // Neighboring dataset: the first element moved to a fresh point.
    Sample neighbor = s;
    neighbor.points[0] = DomainPoint{s.points[0].a + 1, s.points[0].b};
    while (counts.count(neighbor.points[0]) != 0) ++neighbor.points[0].a;
    const auto other = BinCounts(neighbor);
    bool bounded = true;
    std::size_t changed = 0;
    auto diff = [](std::uint64_t x, std::uint64_t y) { return x > y ? x - y : y - x; };
    for (const auto& [x, cnt] : counts) {
      auto it = other.find(x);
      const std::uint64_t d = diff(cnt, it == other.end() ? 0 : it->second);
      bounded = bounded && d <= 1;
      changed += d != 0 ? 1 : 0;
    }
    for (const auto& [x, cnt] : other) {
      if (counts.count(x) == 0) {
        bounded = bounded && cnt <= 1;
        ++changed;
      }
    }
    bounded = bounded && changed <= 2;
    return {HistogramLabel(counts, released), std::nullopt, bounded};
  }

  Scored Score(const Context& ctx, const Target& t, std::string_view label) const override {
    if (label.size() < 6 || label.substr(0, 5) != "hist{" || label.back() != '}') {
      Fail(ErrorCode::kParseError, "bad histogram label");
    }
    std::string body(label.substr(5, label.size() - 6));
    Rational worst = 0;
    std::uint64_t total = 0;
    std::size_t start = 0;
    while (start <= body.size()) {
      std::size_t end = body.find(';', start);
      if (end == std::string::npos) end = body.size();
      std::string entry = body.substr(start, end - start);
      start = end + 1;
      unsigned long long a = 0, b = 0, cnt = 0;
      char freq[64] = {0};
      if (std::sscanf(entry.c_str(), " %llu %llu %llu %63s", &a, &b, &cnt, freq) != 4) {
        Fail(ErrorCode::kParseError, "bad histogram entry '" + entry + "'");
      }
      total += cnt;
      Rational f = 0;
      if (std::string(freq) != "-") f = FromDouble(std::strtod(freq, nullptr));
      Rational dev = f - Rational(cnt) / Rational(t.n);
      if (dev < 0) dev = -dev;
      worst = std::max(worst, dev);
    }
    if (total != t.n) Fail(ErrorCode::kParseError, "histogram counts do not sum to n");
    (void)ctx;
    return {worst, worst <= t.threshold};
  }

  Rational BaseFailureRate(const ExperimentConfig& c) const override { return *c.beta; }
  std::string Statement() const override {
    return "fraction of trials with a bin off by more than alpha is at most beta + 3 sigma, "
           "and pre-noise neighbor sensitivity is at most 1 per bin in every trial";
  }

  void Conclude(const Context&, const std::vector<Row>& rows, Verdict& v) const override {
    std::uint64_t violations = 0;
    for (const Row& r : rows) violations += r.flag ? 0 : 1;
    v.details["sensitivity_checks"] = rows.size();
    v.details["sensitivity_violations"] = violations;
    v.holds = v.holds && violations == 0;
  }
};

class DpQg : public Experiment {
 public:
  DpQg()
      : Experiment("dp-qg",
                   "histogram-based private Q_g learner; exact recovery when 1/j > alpha") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    RequireQg(c, errors);
    CheckPrivacy(c, errors);
    Collect(errors, *c.dp_delta > 0, "dp_delta must be positive for the histogram");
  }

  DpParams Params(const ExperimentConfig& c) const { return {*c.dp_epsilon, *c.dp_delta}; }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = ctx.listing[t.listing_index].dist;
    t.threshold = *c.alpha;
    t.n = c.n ? *c.n : DpQgSampleSize(*c.alpha, *c.beta, Params(c), c.growth);
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed& seed) const override {
    const ExperimentConfig& c = *ctx.config;
    return {LabelOf(DpQgLearn(s, c.growth, *c.alpha, *c.beta, Params(c), seed)), std::nullopt,
            true};
  }

  Rational BaseFailureRate(const ExperimentConfig& c) const override { return *c.beta; }
  std::string Statement() const override {
    return "output equals the member when 1/j > alpha, else lies in {delta_(0,0), member} "
           "within alpha; failure rate <= beta + 3 sigma for every member";
  }

 protected:
  bool Accept(const Context& ctx, const Target& t, const Dist& out,
              const Rational& error) const override {
    const LabeledDist& member = ctx.listing[t.listing_index];
    if (Rational(1) / Rational(member.coords->j) > *ctx.config->alpha) return out == member.dist;
    return (out == member.dist || out == Dirac({0, 0})) && error <= t.threshold;
  }
};

class CoverSelect : public Experiment {
 public:
  CoverSelect()
      : Experiment("cover-select",
                   "greedy alpha/6 packing-cover then Yatracos selection; "
                   "error vs 3 opt + alpha") {}

  void Resolve(ExperimentConfig& c, std::vector<std::string>& errors) const override {
    SetDefault(c.alpha, Rat(1, 2));
    SetDefault(c.beta, Rat(1, 10));
    CheckOpenUnit(errors, c.alpha, "alpha");
    CheckOpenUnit(errors, c.beta, "beta");
  }

  void Finish(const Context& ctx, Target& t) const override {
    const ExperimentConfig& c = *ctx.config;
    t.reference = t.truth;
    t.threshold = 3 * MinDistance(t.truth, ctx.class_dists) + *c.alpha;
    t.n = c.n ? *c.n
              : Scaled(c, CoverThenSelectSampleSize(ctx.class_dists, *c.alpha, *c.beta));
  }

  TrialOutput Run(const Context& ctx, const Target&, const Sample& s,
                  const Seed&) const override {
    const ExperimentConfig& c = *ctx.config;
    LearnTrace trace;
    Dist out = CoverThenSelect(ctx.class_dists, *c.alpha, *c.beta, s, &trace);
    return {LabelOf(out), std::move(trace), true};
  }

  Rational BaseFailureRate(const ExperimentConfig& c) const override { return *c.beta; }
  std::string Statement() const override {
    return "the greedy packing is an exact alpha/6 packing and cover, and the failure rate of "
           "error <= 3 opt + alpha is at most beta + 3 sigma for every member";
  }

  void Conclude(const Context& ctx, const std::vector<Row>&, Verdict& v) const override {
    const Rational radius = *ctx.config->alpha / 6;
    const auto packing = GreedyPacking(ctx.class_dists, radius);
    bool separated = true;
    for (std::size_t a = 0; a < packing.size(); ++a) {
      for (std::size_t b = a + 1; b < packing.size(); ++b) {
        separated = separated && TvDistance(packing[a], packing[b]) > radius;
      }
    }
    bool covers = true;
    for (const Dist& m : ctx.class_dists) covers = covers && MinDistance(m, packing) <= radius;
    v.details["packing_size"] = packing.size();
    v.details["packing_separated"] = separated;
    v.details["packing_covers"] = covers;
    v.holds = v.holds && separated && covers;
  }
};

const std::vector<std::unique_ptr<Experiment>>& Registry() {
  static const auto* registry = [] {
    auto* r = new std::vector<std::unique_ptr<Experiment>>();
    r->push_back(std::make_unique<RealizableQg>());
    r->push_back(std::make_unique<SubtractiveAttack>());
    r->push_back(std::make_unique<AdditiveHuber>());
    r->push_back(std::make_unique<YatracosFinite>());
    r->push_back(std::make_unique<EtaGrid>());
    r->push_back(std::make_unique<CompressionRoundtrip>());
    r->push_back(std::make_unique<DpHistogram>());
    r->push_back(std::make_unique<DpQg>());
    r->push_back(std::make_unique<CoverSelect>());
    return r;
  }();
  return *registry;
}

const Experiment* Find(std::string_view name) {
  for (const auto& e : Registry()) {
    if (e->name() == name) return e.get();
  }
  return nullptr;
}

const Experiment& Lookup(const ExperimentConfig& c) {
  const Experiment* e = Find(c.name);
  if (e == nullptr) Fail(ErrorCode::kConfigError, "unknown experiment '" + c.name + "'");
  return *e;
}

Context BuildContext(const ExperimentConfig& config, const Experiment& exp) {
  Context ctx;
  ctx.config = &config;
  ctx.listing = EnumerateFamily(config.Family(), config.member_cap);
  if (ctx.listing.empty()) Fail(ErrorCode::kEmptyClass, "the family has no members");
  for (const auto& m : ctx.listing) ctx.class_dists.push_back(m.dist);
  exp.Prepare(ctx);
  std::vector<std::size_t> chosen;
  if (config.target) {
    if (*config.target < 1 || *config.target > ctx.listing.size()) {
      Fail(ErrorCode::kConfigError, "family.target = " + std::to_string(*config.target) +
                                        " is outside 1.." + std::to_string(ctx.listing.size()));
    }
    chosen.push_back(*config.target - 1);
  } else {
    for (std::size_t k = 0; k < ctx.listing.size(); ++k) chosen.push_back(k);
  }
  for (std::size_t index : chosen) {
    Target t;
    t.listing_index = index;
    auto [truth, eta] = Corrupt(config, ctx.listing[index]);
    t.truth = std::move(truth);
    t.eta = std::move(eta);
    exp.Finish(ctx, t);
    ctx.targets.push_back(std::move(t));
  }
  return ctx;
}

std::uint64_t TotalTrials(const ExperimentConfig& c, const Context& ctx) {
  return c.schedule == Schedule::kPerMember ? c.trials * ctx.targets.size() : c.trials;
}

std::size_t TargetOf(const ExperimentConfig& c, const Context& ctx, std::uint64_t trial) {
  return c.schedule == Schedule::kPerMember ? trial / c.trials : trial % ctx.targets.size();
}

CsvRow ToCsv(const Row& r) {
  CsvRow out;
  out.trial = r.trial;
  out.n = r.n;
  out.output_label = r.label;
  out.error_num = boost::multiprecision::numerator(r.scored.error).str();
  out.error_den = boost::multiprecision::denominator(r.scored.error).str();
  out.error_decimal = FormatDecimal(r.scored.error);
  out.success = r.scored.success;
  out.micros = r.micros;
  return out;
}

double Sigma3(double p, std::uint64_t trials) {
  return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

Verdict Summarize(const ExperimentConfig& c, const Experiment& exp, const Context& ctx,
                  const std::vector<Row>& rows, Json& summary) {
  Verdict v;
  v.statement = exp.Statement();
  // Groups: one per target, or a single pooled group for round robin.
  const bool pooled = c.schedule == Schedule::kRoundRobin;
  const std::size_t groups = pooled ? 1 : ctx.targets.size();
  std::vector<std::uint64_t> trials(groups, 0), failures(groups, 0);
  std::vector<Rational> error_sum(groups, Rational(0)), error_max(groups, Rational(0));
  for (const Row& r : rows) {
    const std::size_t g = pooled ? 0 : r.target;
    ++trials[g];
    failures[g] += r.scored.success ? 0 : 1;
    error_sum[g] += r.scored.error;
    error_max[g] = std::max(error_max[g], r.scored.error);
  }
  Json group_json = Json::array();
  for (std::size_t g = 0; g < groups; ++g) {
    double allowed;
    std::string rule;
    if (c.max_failure_rate) {
      allowed = ToDouble(*c.max_failure_rate);
      rule = "failure rate <= " + FormatRational(*c.max_failure_rate);
    } else if (c.min_success_rate) {
      allowed = 1.0 - ToDouble(*c.min_success_rate);
      rule = "success rate >= " + FormatRational(*c.min_success_rate);
    } else {
      const double base = ToDouble(exp.BaseFailureRate(c));
      allowed = base + Sigma3(base, trials[g]);
      rule = "failure rate <= " + FormatRational(exp.BaseFailureRate(c)) + " + 3 sigma";
    }
    const double rate =
        trials[g] == 0 ? 0.0 : static_cast<double>(failures[g]) / static_cast<double>(trials[g]);
    const bool ok = rate <= allowed;
    if (exp.UsesRatePredicate()) v.holds = v.holds && ok;
    Json j;
    if (pooled) {
      Json labels = Json::array();
      for (const Target& t : ctx.targets) labels.push_back(ctx.listing[t.listing_index].label);
      j["members"] = labels;
    } else {
      j["member"] = ctx.listing[ctx.targets[g].listing_index].label;
      j["threshold"] = FormatRational(ctx.targets[g].threshold);
      j["n"] = ctx.targets[g].n;
    }
    j["trials"] = trials[g];
    j["failures"] = failures[g];
    j["failure_rate"] = rate;
    Interval fail_ci = WilsonInterval(failures[g], trials[g]);
    Interval succ_ci = WilsonInterval(trials[g] - failures[g], trials[g]);
    j["failure_rate_wilson95"] = {fail_ci.lo, fail_ci.hi};
    j["success_rate_wilson95"] = {succ_ci.lo, succ_ci.hi};
    j["mean_error"] = trials[g] == 0 ? 0.0 : ToDouble(error_sum[g] / trials[g]);
    j["max_error"] = FormatRational(error_max[g]);
    if (exp.UsesRatePredicate()) {
      j["rule"] = rule;
      j["allowed_failure_rate"] = allowed;
      j["holds"] = ok;
    }
    group_json.push_back(j);
  }
  exp.Conclude(ctx, rows, v);
  if (c.max_failure_rate || c.min_success_rate) v.statement += " (rate bound overridden)";

  summary["experiment"] = c.name;
  summary["seed"] = c.seed;
  summary["trials_per_group"] = c.trials;
  summary["total_trials"] = rows.size();
  summary["schedule"] = pooled ? "round-robin" : "per-member";
  summary["scale"] = FormatRational(c.scale);
  summary["desk_scale"] = exp.DeskScale(c);
  summary["groups"] = group_json;
  Json pred;
  pred["statement"] = v.statement;
  pred["holds"] = v.holds;
  pred["flags"] = v.flags;
  summary["predicate"] = pred;
  summary["details"] = v.details;
  return v;
}

void WriteFile(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << data;
  out.flush();
  if (!out) Fail(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace

const std::vector<ExperimentInfo>& Experiments() {
  static const auto* infos = [] {
    auto* v = new std::vector<ExperimentInfo>();
    for (const auto& e : Registry()) v->push_back({e->name(), e->description()});
    return v;
  }();
  return *infos;
}

bool IsKnownExperiment(std::string_view name) { return Find(name) != nullptr; }

void ResolveDefaults(ExperimentConfig& config) {
  const Experiment* exp = Find(config.name);
  if (exp == nullptr) return;  // already reported by the range checks
  std::vector<std::string> errors;
  exp->Resolve(config, errors);
  CheckAdversary(config, errors);
  CheckOpenUnit(errors, config.max_failure_rate, "max_failure_rate");
  CheckOpenUnit(errors, config.min_success_rate, "min_success_rate");
  if (errors.empty()) {
    try {
      auto listing = EnumerateFamily(config.Family(), config.member_cap);
      if (config.target && (*config.target < 1 || *config.target > listing.size())) {
        errors.push_back("family.target = " + std::to_string(*config.target) +
                         " is outside 1.." + std::to_string(listing.size()));
      }
    } catch (const Error& e) {
      errors.push_back(std::string("family: ") + e.what());
    }
  }
  if (errors.empty()) return;
  std::string message = errors.front();
  for (std::size_t k = 1; k < errors.size(); ++k) message += "\n  " + errors[k];
  Fail(ErrorCode::kConfigError, message);
}

Report ExecuteExperiment(const ExperimentConfig& config) {
  const Experiment& exp = Lookup(config);
  const Context ctx = BuildContext(config, exp);
  const std::uint64_t total = TotalTrials(config, ctx);
  std::vector<Row> rows(total);
  const Seed master{config.seed, 0};
  ParallelFor(total, config.threads, [&](std::size_t t) {
    Row& row = rows[t];
    row.trial = t;
    row.target = TargetOf(config, ctx, t);
    const Target& target = ctx.targets[row.target];
    row.n = target.n;
    const Seed trial_seed = master.Child(t);
    const auto start = std::chrono::steady_clock::now();
    Sample s = SampleFrom(target.truth, target.n, trial_seed.Child(0));
    TrialOutput out = exp.Run(ctx, target, s, trial_seed.Child(1));
    if (config.timing) {
      row.micros = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::microseconds>(
              std::chrono::steady_clock::now() - start)
              .count());
    }
    row.scored = exp.Score(ctx, target, out.label);
    row.label = std::move(out.label);
    row.trace = std::move(out.trace);
    row.flag = out.flag;
  });

  Report report;
  std::vector<CsvRow> csv_rows;
  csv_rows.reserve(rows.size());
  for (const Row& r : rows) csv_rows.push_back(ToCsv(r));
  report.csv = WriteCsv(config.name, config.Canonical(), csv_rows);
  for (const Row& r : rows) {
    if (r.trace) report.trace_jsonl += TraceJson(r.trial, *r.trace).dump() + "\n";
  }
  Json summary;
  const Verdict v = Summarize(config, exp, ctx, rows, summary);
  report.passed = v.holds;
  report.summary_json = summary.dump(2) + "\n";
  return report;
}

RunResult RunExperiment(const ExperimentConfig& config, const std::string& out_dir) {
  RunResult result;
  result.report = ExecuteExperiment(config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  result.csv_path = (dir / (config.name + ".csv")).string();
  result.summary_path = (dir / (config.name + ".summary.json")).string();
  WriteFile(result.csv_path, result.report.csv);
  WriteFile(result.summary_path, result.report.summary_json);
  if (!result.report.trace_jsonl.empty()) {
    result.trace_path = (dir / (config.name + ".trace.jsonl")).string();
    WriteFile(result.trace_path, result.report.trace_jsonl);
  }
  return result;
}

VerifyResult VerifyReport(std::string_view csv_text) {
  VerifyResult result;
  const ParsedCsv parsed = ReadCsv(csv_text);
  const ExperimentConfig config = ValidateConfig(parsed.config_text);
  const Experiment& exp = Lookup(config);
  const Context ctx = BuildContext(config, exp);
  const std::uint64_t total = TotalTrials(config, ctx);
  if (parsed.rows.size() != total) {
    result.problems.push_back("expected " + std::to_string(total) + " rows, found " +
                              std::to_string(parsed.rows.size()));
  }
  for (std::size_t k = 0; k < parsed.rows.size(); ++k) {
    const CsvRow& row = parsed.rows[k];
    ++result.rows;
    std::string where = "trial " + std::to_string(row.trial) + ": ";
    if (row.trial != k) {
      result.problems.push_back(where + "out of order");
      ++result.mismatches;
      continue;
    }
    if (row.trial >= total) {
      ++result.mismatches;
      result.problems.push_back(where + "beyond the configured trial count");
      continue;
    }
    const Target& target = ctx.targets[TargetOf(config, ctx, row.trial)];
    Row recomputed;
    recomputed.trial = row.trial;
    recomputed.n = target.n;
    recomputed.label = row.output_label;
    try {
      recomputed.scored = exp.Score(ctx, target, row.output_label);
    } catch (const Error& e) {
      ++result.mismatches;
      result.problems.push_back(where + "cannot score output: " + e.what());
      continue;
    }
    recomputed.micros = row.micros;
    const CsvRow expect = ToCsv(recomputed);
    std::vector<std::string> diffs;
    if (row.n != expect.n) diffs.push_back("n");
    if (row.error_num != expect.error_num || row.error_den != expect.error_den) {
      diffs.push_back("error " + row.error_num + "/" + row.error_den + " vs " + expect.error_num +
                      "/" + expect.error_den);
    }
    if (row.error_decimal != expect.error_decimal) diffs.push_back("error_decimal");
    if (row.success != expect.success) diffs.push_back("success");
    if (!diffs.empty()) {
      ++result.mismatches;
      std::string msg = where + "mismatch in";
      for (const auto& d : diffs) msg += " " + d;
      result.problems.push_back(msg);
    }
  }
  return result;
}

}  // namespace tvlab::harness
