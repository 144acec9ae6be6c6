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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every check re-derives its verdict from
// raw outputs (labels, CSV rows) with exact arithmetic where possible,
// independent of the harness's own predicate.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tvlab/dist.h"
#include "tvlab/error.h"
#include "tvlab/families.h"
#include "tvlab/privacy.h"
#include "tvlab/random.h"
#include "tvlab/rational.h"
#include "tvlab/select.h"
#include "tvlab/harness/config.h"
#include "tvlab/harness/experiments.h"
#include "tvlab/harness/labels.h"
#include "tvlab/harness/report.h"

namespace tvlab {
namespace {

using harness::ExecuteExperiment;
using harness::ExperimentConfig;
using harness::ParsedCsv;
using harness::ParseLabel;
using harness::ReadCsv;
using harness::Report;
using harness::ValidateConfig;
using Clock = std::chrono::steady_clock;

Rational Q(std::int64_t p, std::int64_t q = 1) { return Rational(p) / Rational(q); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few reasons a criterion failed.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) reasons_ += (reasons_.empty() ? "" : "; ") + what;
  }
  void Note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  Outcome Done() const {
    std::string d = notes_;
    if (!pass_) {
      d += (d.empty() ? "" : " | ") + reasons_;
      if (failures_ > 3) d += " (+" + std::to_string(failures_ - 3) + " more)";
    }
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  int failures_ = 0;
  std::string reasons_;
  std::string notes_;
};

std::string Fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

double Sigma(double p, double n) { return std::sqrt(p * (1 - p) / n); }

// max over subsets B of the union support of p(B) - q(B), visiting subsets
// in Gray-code order so each step adds or removes one point.
Rational BruteForceTv(const Dist& p, const Dist& q) {
  std::set<DomainPoint> support;
  for (const auto& [x, w] : p.atoms()) support.insert(x);
  for (const auto& [x, w] : q.atoms()) support.insert(x);
  std::vector<Rational> diff;
  for (const auto& x : support) diff.push_back(p.Weight(x) - q.Weight(x));
  Rational best = 0;
  Rational current = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << diff.size()); ++step) {
    const int bit = __builtin_ctzll(step);
    gray ^= std::uint64_t{1} << bit;
    current += (gray >> bit & 1) ? diff[bit] : -diff[bit];
    if (current > best) best = current;
  }
  return best;
}

// Weights are random integers normalized to one, so denominators vary.
Dist RandomDist(Rng& rng, const std::vector<DomainPoint>& pool, std::size_t max_support,
                std::uint64_t max_weight) {
  const std::size_t size = 1 + rng.Below(std::min(max_support, pool.size()));
  std::vector<DomainPoint> shuffled = pool;
  for (std::size_t k = 0; k < size; ++k) {
    std::swap(shuffled[k], shuffled[k + rng.Below(shuffled.size() - k)]);
  }
  std::vector<std::uint64_t> raw(size);
  std::uint64_t total = 0;
  for (auto& r : raw) total += r = 1 + rng.Below(max_weight);
  std::map<DomainPoint, Rational> w;
  for (std::size_t k = 0; k < size; ++k) w[shuffled[k]] = Q(raw[k], total);
  return Dist::FromWeights(w);
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void CheckRuntime(Checker& c, Clock::time_point start, double limit) {
  const double s = Seconds(start);
  c.Note("runtime " + Fmt(s, 2) + "s");
  c.Expect(s < limit, "runtime over " + Fmt(limit, 0) + "s");
}

Rational RowError(const harness::CsvRow& row) {
  return Rational(BigInt(row.error_num)) / Rational(BigInt(row.error_den));
}

struct Run {
  ExperimentConfig config;
  std::vector<LabeledDist> listing;
  ParsedCsv csv;
  nlohmann::json summary;
};

Run Execute(const std::string& text) {
  Run run;
  run.config = ValidateConfig(text);
  run.listing = EnumerateFamily(run.config.Family(), run.config.member_cap);
  Report report = ExecuteExperiment(run.config);
  run.csv = ReadCsv(report.csv);
  run.summary = nlohmann::json::parse(report.summary_json);
  return run;
}

// ---------------------------------------------------------------------------

Outcome TvOracle() {
  const auto start = Clock::now();
  Checker c;
  Rng rng(Seed{2026, 1});
  std::vector<DomainPoint> pool;
  for (std::uint64_t a = 0; a < 4; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) pool.push_back({a, b});
  }
  int checked = 0;
  std::size_t max_union = 0;
  while (checked < 500) {
    const Dist p = RandomDist(rng, pool, 8, 97);
    const Dist q = RandomDist(rng, pool, 8, 97);
    std::set<DomainPoint> u;
    for (const auto& [x, w] : p.atoms()) u.insert(x);
    for (const auto& [x, w] : q.atoms()) u.insert(x);
    if (u.size() > 12) continue;
    max_union = std::max(max_union, u.size());
    const Rational fast = TvDistance(p, q);
    c.Expect(fast == BruteForceTv(p, q), "mismatch on pair " + std::to_string(checked));
    c.Expect(fast == TvDistance(q, p), "asymmetric on pair " + std::to_string(checked));
    ++checked;
  }
  c.Note("500 pairs, max union support " + std::to_string(max_union));
  CheckRuntime(c, start, 5);
  return c.Done();
}

Outcome LedgerAndDecompositions() {
  const auto start = Clock::now();
  Checker c;
  const GrowthFn g = GrowthFn::Square();
  int cases = 0;
  for (std::uint64_t i = 1; i <= 15; ++i) {
    for (std::uint64_t j = 1; j <= 6; ++j) {
      ++cases;
      const std::string tag = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      const std::uint64_t k = j * j;
      const Dist q = MakeQgMember(i, j, g);
      const DomainPoint origin{0, 0};
      const DomainPoint indicator{i, 2 * j + 2};
      const auto subset = DecodeSubset(i);

      // Three-weight ledger.
      c.Expect(q.Weight(origin) == 1 - Q(1, j), "origin weight " + tag);
      c.Expect(q.Weight(indicator) == Q(1, k), "indicator weight " + tag);
      Rational uniform_total = 0;
      for (std::uint64_t a : subset) {
        const Rational w = q.Weight({a, 2 * j + 1});
        c.Expect(w == (Q(1, j) - Q(1, k)) / subset.size(), "uniform weight " + tag);
        uniform_total += w;
      }
      c.Expect(uniform_total == Q(1, j) - Q(1, k), "uniform total " + tag);
      Rational total = 0;
      for (const auto& [x, w] : q.atoms()) {
        total += w;
        c.Expect(x == origin || x == indicator || x.b == 2 * j + 1, "stray atom " + tag);
      }
      c.Expect(total == 1, "total mass " + tag);

      // Removal form: (1 - 1/k) q' + (1/k) delta_indicator.
      if (k == 1) {
        c.Expect(q == Dirac(indicator), "k = 1 member is the indicator " + tag);
      } else {
        const std::vector<std::pair<Rational, Dist>> parts{
            {1 - Q(1, k), MakeQPrime(i, j, g)}, {Q(1, k), Dirac(indicator)}};
        c.Expect(Mix(parts) == q, "removal decomposition " + tag);
      }

      // Limit form: (1 - j/k) q_lim + (j/k) ((1 - 1/j) delta_origin + (1/j) delta_indicator).
      std::map<DomainPoint, Rational> rest_w{{origin, 1 - Q(1, j)}, {indicator, Q(1, j)}};
      if (j == 1) rest_w.erase(origin);
      const Dist rest = Dist::FromWeights(rest_w);
      if (j == k) {
        c.Expect(q == rest, "j = k member equals the residual " + tag);
      } else {
        const std::vector<std::pair<Rational, Dist>> parts{
            {1 - Q(j, k), MakeQLimit(i, j)}, {Q(j, k), rest}};
        c.Expect(Mix(parts) == q, "limit decomposition " + tag);
      }
    }
  }
  c.Note(std::to_string(cases) + " members");
  CheckRuntime(c, start, 1);
  return c.Done();
}

Outcome RealizableSampleComplexity() {
  const auto start = Clock::now();
  Checker c;
  const Run run = Execute(
      "[experiment]\nname = realizable-qg\ntrials = 2000\nseed = 42\n"
      "[family]\ngrowth = square\ni = 1,5,9\nj = 1,2,3,5\n"
      "[learner]\nepsilon = 1/2\ndelta = 1/10\nn = 10\n");
  const std::uint64_t trials = 2000;
  c.Expect(run.csv.rows.size() == trials * 12, "row count");
  std::vector<std::uint64_t> failures(run.listing.size(), 0);
  for (const auto& row : run.csv.rows) {
    const Dist& truth = run.listing[row.trial / trials].dist;
    c.Expect(row.n == 10, "n != 10");
    if (TvDistance(ParseLabel(row.output_label), truth) > Q(1, 2)) ++failures[row.trial / trials];
  }
  const double bound = 0.1 + 3 * Sigma(0.1, trials);
  double worst = 0;
  for (std::size_t m = 0; m < failures.size(); ++m) {
    const double rate = static_cast<double>(failures[m]) / trials;
    worst = std::max(worst, rate);
    c.Expect(rate <= bound, run.listing[m].label + " failure rate " + Fmt(rate));
  }
  c.Note("12 members, worst failure rate " + Fmt(worst) + " <= " + Fmt(bound));
  CheckRuntime(c, start, 30);
  return c.Done();
}

Outcome SubtractiveSeparation() {
  Checker c;
  const Run run = Execute(
      "[experiment]\nname = subtractive-attack\ntrials = 200\nseed = 1\n"
      "[family]\ni = 5\nj = 4\n[adversary]\nkind = subtract\neta = 1/16\n"
      "[learner]\nepsilon = 1/10\nrobustness = 1\nn = 100\n");
  const Dist truth = MakeQgMember(5, 4, GrowthFn::Square());
  // The sampling distribution never shows the indicator atom.
  const Dist sampled = MakeQPrime(5, 4, GrowthFn::Square());
  c.Expect(TvDistance(sampled, truth) == Q(1, 16), "tv(q', q) != 1/16");
  c.Expect(!sampled.Contains({5, 10}), "q' keeps the indicator");
  for (const auto& row : run.csv.rows) {
    // Error is measured against the distribution the samples came from.
    const Rational error = TvDistance(ParseLabel(row.output_label), sampled);
    c.Expect(error == Q(1, 5), "trial " + std::to_string(row.trial) + " error " +
                                   FormatRational(error));
    c.Expect(RowError(row) == Q(1, 5), "logged error differs");
  }
  const Rational threshold = 1 * Q(1, 16) + Q(1, 10);
  c.Expect(threshold == Q(13, 80), "threshold != 0.1625");
  c.Expect(Q(1, 5) > threshold, "1/5 does not exceed the threshold");
  c.Expect(run.summary["predicate"]["holds"] == true, "harness predicate");
  c.Note(std::to_string(run.csv.rows.size()) + " trials, error 1/5 > 13/80");
  return c.Done();
}

Outcome YatracosFiniteClass() {
  const auto start = Clock::now();
  Checker c;
  const Run run = Execute(
      "[experiment]\nname = yatracos-finite\ntrials = 1000\nseed = 7\n"
      "[family]\nkind = explicit\n"
      "member = {0 0 1/2; 1 0 1/2}\n"
      "member = {0 0 1/4; 1 0 1/4; 2 0 1/2}\n"
      "member = {1 0 1/3; 2 0 1/3; 3 0 1/3}\n"
      "member = {0 0 1/10; 3 0 9/10}\n"
      "target = 2\n"
      "[learner]\nepsilon = 1/5\ndelta = 1/10\n");
  const auto& members = run.config.members;
  std::string matrix;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      const Rational tv = TvDistance(members[a], members[b]);
      c.Expect(tv == BruteForceTv(members[a], members[b]), "pairwise tv");
      c.Expect(tv > 0, "duplicate members");
      matrix += (matrix.empty() ? "" : " ") + FormatRational(tv);
    }
  }
  c.Expect(YatracosSampleSize(4, Q(1, 5), Q(1, 10)) == 1154, "sample size != 1154");
  const Dist& truth = members[1];
  std::uint64_t failures = 0;
  for (const auto& row : run.csv.rows) {
    c.Expect(row.n == 1154, "n != 1154");
    // p is a member, so 3 * min over the class is zero.
    if (TvDistance(ParseLabel(row.output_label), truth) > Q(1, 5)) ++failures;
  }
  c.Expect(run.csv.rows.size() == 1000, "row count");
  const double rate = failures / 1000.0;
  const double bound = 0.1 + 3 * Sigma(0.1, 1000);
  c.Expect(rate <= bound, "failure rate " + Fmt(rate));
  c.Note("pairwise tv " + matrix + "; m = 1154, failure rate " + Fmt(rate) + " <= " +
         Fmt(bound));
  CheckRuntime(c, start, 60);
  return c.Done();
}

Outcome AdditiveRobustDeskScale() {
  const auto start = Clock::now();
  Checker c;
  ExperimentConfig config = ValidateConfig(
      "[experiment]\nname = additive-huber\ntrials = 500\nschedule = round-robin\n"
      "[family]\ni = 1..4\nj = 1,2\n"
      "[adversary]\nkind = huber\neta = 1/10\nadd = decoy\n"
      "[learner]\nepsilon = 0.15\nn1 = 12\nn2 = 400\n"
      "[acceptance]\nmin_success_rate = 0.85\n");
  const auto listing = EnumerateFamily(config.Family(), config.member_cap);
  const Report report = ExecuteExperiment(config);
  const ParsedCsv csv = ReadCsv(report.csv);
  const Rational threshold = 2 * Q(1, 10) + Q(15, 100);
  std::uint64_t successes = 0;
  for (const auto& row : csv.rows) {
    const Dist& p = listing[row.trial % listing.size()].dist;
    c.Expect(row.n == 412, "n != n1 + n2");
    if (TvDistance(ParseLabel(row.output_label), p) <= threshold) ++successes;
  }
  c.Expect(csv.rows.size() == 500, "row count");
  std::istringstream trace(report.trace_jsonl);
  std::string line;
  std::uint64_t traced = 0;
  while (std::getline(trace, line)) {
    const auto j = nlohmann::json::parse(line);
    c.Expect(j["subsets_enumerated"] == 4096, "power set not enumerated");
    ++traced;
  }
  c.Expect(traced == 500, "trace lines");
  const double rate = successes / 500.0;
  c.Expect(rate >= 0.85, "success rate " + Fmt(rate));
  c.Note(std::to_string(listing.size()) + " members, 4096 subsets of S1, success rate " +
         Fmt(rate) + " >= 0.85 at tv <= 7/20");
  CheckRuntime(c, start, 600);
  return c.Done();
}

Outcome CompressionRoundTrip() {
  const auto start = Clock::now();
  Checker c;
  const Run run = Execute(
      "[experiment]\nname = compression-roundtrip\ntrials = 1000\n"
      "[family]\ngrowth = square\ni = 3\nj = 2,4\n[learner]\nepsilon = 1/3\n");
  std::vector<std::uint64_t> successes(run.listing.size(), 0);
  for (const auto& row : run.csv.rows) {
    c.Expect(row.n == 90, "n != 90");
    const Dist& truth = run.listing[row.trial / 1000].dist;
    if (TvDistance(ParseLabel(row.output_label), truth) <= Q(1, 3)) ++successes[row.trial / 1000];
  }
  c.Expect(run.csv.rows.size() == 2000, "row count");
  const double bound = 2.0 / 3 - 3 * Sigma(2.0 / 3, 1000);
  for (std::size_t m = 0; m < successes.size(); ++m) {
    const double rate = successes[m] / 1000.0;
    c.Expect(rate >= bound, run.listing[m].label + " success rate " + Fmt(rate));
    c.Note(run.listing[m].label + " success " + Fmt(rate));
  }
  c.Note("bound " + Fmt(bound) + ", n = 90");
  CheckRuntime(c, start, 30);
  return c.Done();
}

// "hist{a b count freq|-; ...}" -> max over bins of |released_or_0 - count/n|,
// and the sum of the counts.
std::pair<double, std::uint64_t> HistogramError(const std::string& label, std::uint64_t n) {
  std::string body = label.substr(5, label.size() - 6);
  for (char& ch : body) {
    if (ch == ';') ch = '\n';
  }
  std::istringstream in(body);
  std::string entry;
  double worst = 0;
  std::uint64_t total = 0;
  while (std::getline(in, entry)) {
    std::istringstream fields(entry);
    std::uint64_t a = 0, b = 0, count = 0;
    std::string freq;
    fields >> a >> b >> count >> freq;
    total += count;
    const double released = freq == "-" ? 0.0 : std::stod(freq);
    worst = std::max(worst, std::abs(released - static_cast<double>(count) / n));
  }
  return {worst, total};
}

Outcome DpHistogramAccuracy() {
  const auto start = Clock::now();
  Checker c;
  const DpParams params{Q(1), Q(1, 1000)};
  const std::uint64_t n = HistogramSampleSize(Q(1, 10), Q(1, 10), params);
  c.Expect(n == 793, "calculator n != 793");
  const Run run = Execute(
      "[experiment]\nname = dp-histogram\ntrials = 500\n"
      "[family]\nkind = explicit\nmember = {0 0 2/5; 1 0 1/5; 2 0 1/5; 3 0 1/10; 4 0 1/10}\n"
      "[learner]\nalpha = 1/10\nbeta = 1/10\ndp_epsilon = 1\ndp_delta = 1e-3\n");
  std::uint64_t good = 0;
  for (const auto& row : run.csv.rows) {
    c.Expect(row.n == n, "row n differs from calculator");
    const auto [error, total] = HistogramError(row.output_label, row.n);
    c.Expect(total == row.n, "bin counts do not sum to n");
    if (error <= 0.1) ++good;
  }
  c.Expect(run.csv.rows.size() == 500, "row count");
  const double rate = good / 500.0;
  const double bound = 0.9 - 3 * Sigma(0.1, 500);
  c.Expect(rate >= bound, "accuracy rate " + Fmt(rate));

  // Pre-noise sensitivity: moving one sample point changes each bin count
  // by at most one.
  const Dist p = run.config.members.front();
  Rng rng(Seed{8, 8});
  std::uint64_t max_change = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Sample s = SampleFrom(p, n, Seed{8, 0}.Child(trial));
    Sample neighbor = s;
    const std::size_t at = rng.Below(s.size());
    neighbor.points[at] = rng.Below(2) ? DomainPoint{rng.Below(5), 0} : DomainPoint{9, 9};
    const auto before = BinCounts(s);
    const auto after = BinCounts(neighbor);
    std::set<DomainPoint> bins;
    for (const auto& [x, k] : before) bins.insert(x);
    for (const auto& [x, k] : after) bins.insert(x);
    for (const auto& x : bins) {
      const std::uint64_t u = before.count(x) ? before.at(x) : 0;
      const std::uint64_t v = after.count(x) ? after.at(x) : 0;
      max_change = std::max(max_change, u > v ? u - v : v - u);
    }
  }
  c.Expect(max_change <= 1, "neighbor moved a bin by " + std::to_string(max_change));
  c.Expect(run.summary["details"]["sensitivity_violations"] == 0, "harness sensitivity check");
  c.Note("n = 793, within alpha in " + Fmt(rate) + " >= " + Fmt(bound) +
         ", max neighbor bin change " + std::to_string(max_change));
  CheckRuntime(c, start, 30);
  return c.Done();
}

Outcome DpQgLearner() {
  const auto start = Clock::now();
  Checker c;
  const GrowthFn g = GrowthFn::Square();
  const std::uint64_t n = DpQgSampleSize(Q(1, 2), Q(1, 10), DpParams{Q(1), Q(1, 1000)}, g);
  const Run run = Execute(
      "[experiment]\nname = dp-qg\ntrials = 500\n[family]\ni = 5\nj = 1..4\n"
      "[learner]\nalpha = 1/2\nbeta = 1/10\ndp_epsilon = 1\ndp_delta = 1e-3\n");
  const Dist origin = Dirac({0, 0});
  c.Expect(run.csv.rows.size() == 2000, "row count");
  for (std::size_t m = 0; m < run.listing.size(); ++m) {
    const Dist& truth = run.listing[m].dist;
    const std::uint64_t j = run.listing[m].coords->j;
    std::uint64_t exact = 0;
    for (std::uint64_t t = m * 500; t < (m + 1) * 500; ++t) {
      const auto& row = run.csv.rows[t];
      c.Expect(row.n == n, "n differs from calculator");
      const Dist out = ParseLabel(row.output_label);
      if (out == truth) ++exact;
      if (Q(1, j) <= Q(1, 2)) {
        c.Expect(out == truth || out == origin, run.listing[m].label + " output " +
                                                    row.output_label);
      }
    }
    const double rate = exact / 500.0;
    if (Q(1, j) > Q(1, 2)) {
      const double bound = 0.9 - 3 * Sigma(0.1, 500);
      c.Expect(rate >= bound, run.listing[m].label + " exact rate " + Fmt(rate));
    }
    c.Note(run.listing[m].label + " exact " + Fmt(rate));
  }
  c.Note("n = " + std::to_string(n));
  CheckRuntime(c, start, 60);
  return c.Done();
}

Outcome PackingCover() {
  const auto start = Clock::now();
  Checker c;
  Rng rng(Seed{10, 10});
  // A small domain and coarse weights make ties at the radius common.
  std::vector<DomainPoint> pool;
  for (std::uint64_t a = 0; a < 3; ++a) {
    for (std::uint64_t b = 0; b < 3; ++b) pool.push_back({a, b});
  }
  const std::vector<Rational> radii{Q(1, 12), Q(1, 6), Q(1, 4), Q(1, 3), Q(1, 2)};
  std::size_t total_members = 0;
  std::size_t total_packed = 0;
  for (int cls = 0; cls < 100; ++cls) {
    const std::size_t size = 1 + rng.Below(20);
    std::vector<Dist> members;
    for (std::size_t m = 0; m < size; ++m) members.push_back(RandomDist(rng, pool, 8, 6));
    const Rational radius = radii[rng.Below(radii.size())];
    const auto packing = GreedyPacking(members, radius);
    total_members += size;
    total_packed += packing.size();
    const std::string tag = "class " + std::to_string(cls);
    for (const auto& d : packing) {
      c.Expect(std::find(members.begin(), members.end(), d) != members.end(),
               tag + ": packing element outside the class");
    }
    for (std::size_t a = 0; a < packing.size(); ++a) {
      for (std::size_t b = a + 1; b < packing.size(); ++b) {
        c.Expect(TvDistance(packing[a], packing[b]) > radius, tag + ": not separated");
      }
    }
    for (const auto& d : members) {
      bool covered = false;
      for (const auto& e : packing) covered = covered || TvDistance(d, e) <= radius;
      c.Expect(covered, tag + ": member not covered");
    }
    // Reference greedy pass in list order.
    std::vector<Dist> expected;
    for (const auto& d : members) {
      bool far = true;
      for (const auto& e : expected) far = far && TvDistance(d, e) > radius;
      if (far) expected.push_back(d);
    }
    c.Expect(packing == expected, tag + ": differs from list-order greedy");
  }
  c.Note("100 classes, " + std::to_string(total_members) + " members, " +
         std::to_string(total_packed) + " packed");
  CheckRuntime(c, start, 5);
  return c.Done();
}

Outcome Determinism() {
  Checker c;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(TVLAB_CONFIG_DIR)) {
    if (entry.path().extension() == ".ini") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  c.Expect(!files.empty(), "no configs found");
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    const ExperimentConfig config = ValidateConfig(text.str());
    const Report a = ExecuteExperiment(config);
    const Report b = ExecuteExperiment(config);
    c.Expect(a.csv == b.csv, path.filename().string() + ": CSV differs");
    c.Expect(a.summary_json == b.summary_json, path.filename().string() + ": summary differs");
    c.Expect(a.trace_jsonl == b.trace_jsonl, path.filename().string() + ": trace differs");
  }
  c.Note(std::to_string(files.size()) + " shipped configs run twice");
  return c.Done();
}

}  // namespace
}  // namespace tvlab

int main() {
  struct Criterion {
    const char* name;
    std::function<tvlab::Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"tv-oracle-equivalence", tvlab::TvOracle},
      {"ledger-and-decompositions", tvlab::LedgerAndDecompositions},
      {"realizable-sample-complexity", tvlab::RealizableSampleComplexity},
      {"subtractive-separation", tvlab::SubtractiveSeparation},
      {"yatracos-finite-class", tvlab::YatracosFiniteClass},
      {"additive-robust-desk-scale", tvlab::AdditiveRobustDeskScale},
      {"compression-round-trip", tvlab::CompressionRoundTrip},
      {"dp-histogram-accuracy", tvlab::DpHistogramAccuracy},
      {"dp-qg-learner", tvlab::DpQgLearner},
      {"packing-cover", tvlab::PackingCover},
      {"determinism", tvlab::Determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    tvlab::Outcome outcome;
    try {
      outcome = criteria[k].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", k + 1, criteria[k].name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
