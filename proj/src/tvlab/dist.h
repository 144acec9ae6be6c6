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

#ifndef TVLAB_DIST_H_
#define TVLAB_DIST_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tvlab/random.h"
#include "tvlab/rational.h"

namespace tvlab {

// A point of N x N. Ordered lexicographically; every support iteration in
// the library follows this order.
struct DomainPoint {
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend auto operator<=>(const DomainPoint&, const DomainPoint&) = default;
};

std::string ToString(const DomainPoint& x);

// Exact finite-support probability distribution. Stored weights are strictly
// positive and sum to exactly one; the support is kept sorted.
class Dist {
 public:
  using Atom = std::pair<DomainPoint, Rational>;

  // Drops zero weights. Throws BadWeights on a negative weight or if the
  // total is not exactly one.
  static Dist FromWeights(const std::map<DomainPoint, Rational>& weights);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Zero outside the support.
  Rational Weight(const DomainPoint& x) const;
  bool Contains(const DomainPoint& x) const;

  std::vector<DomainPoint> Support() const;

  friend bool operator==(const Dist&, const Dist&) = default;

 private:
  explicit Dist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

Dist Dirac(const DomainPoint& x);

// Throws EmptySet if `points` is empty. Duplicates are collapsed.
Dist Uniform(std::span<const DomainPoint> points);

// Convex combination. Throws BadWeights if any weight is negative or the
// weights do not sum to exactly one.
Dist Mix(std::span<const std::pair<Rational, Dist>> components);

Rational TvDistance(const Dist& p, const Dist& q);

// A subset of the (infinite) domain: the listed points, plus, when
// `outside` is set, every point not in `reference`. `listed` and `reference`
// are sorted and listed is a subset of reference.
struct YatracosSet {
  std::vector<DomainPoint> listed;
  bool outside = false;
  std::shared_ptr<const std::vector<DomainPoint>> reference;

  bool Contains(const DomainPoint& x) const;
};

Rational MassOf(const Dist& p, const YatracosSet& set);

// Ordered multiset of domain points. `origin` names the split a sample came
// from ("S", "S1", "S2", ...), carried for traces only.
struct Sample {
  std::vector<DomainPoint> points;
  std::string origin = "S";

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

// n i.i.d. draws by inverse CDF over the lexicographic support. Each draw
// takes one 64-bit word u and returns the first atom whose cumulative weight
// exceeds u / 2^64.
Sample SampleFrom(const Dist& p, std::size_t n, const Seed& seed);

// Canonical text form: one "a b num/den" line per atom, sorted, each line
// newline-terminated.
std::string FormatDist(const Dist& p);

// Parses the canonical form. Blank lines and '#' comments are ignored, lines
// may come in any order, and repeated points are rejected.
Dist ParseDist(std::string_view text);

// Single-line form "{a b num/den; a b num/den}" used in report labels.
std::string FormatDistInline(const Dist& p);
Dist ParseDistInline(std::string_view text);

}  // namespace tvlab

#endif  // TVLAB_DIST_H_
