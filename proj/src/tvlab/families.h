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

#ifndef TVLAB_FAMILIES_H_
#define TVLAB_FAMILIES_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tvlab/dist.h"
#include "tvlab/rational.h"

namespace tvlab {

// Growth function g : N -> N indexing the Q_g class.
class GrowthFn {
 public:
  // t -> t^2.
  static GrowthFn Square();
  // t -> ceil(32 * alpha * t^2). alpha must be positive.
  static GrowthFn ScaledSquare(const Rational& alpha);
  // Explicit values; must be nondecreasing in t.
  static GrowthFn Table(std::map<std::uint64_t, std::uint64_t> values);

  // "square", "scaled-square(1/2)", "table(1:1,2:4)".
  static GrowthFn Parse(std::string_view text);
  std::string ToString() const;

  // Throws BadParams on overflow or a missing table entry.
  std::uint64_t operator()(std::uint64_t t) const;

  // As operator(), additionally requiring g(t) >= t.
  std::uint64_t CheckedAt(std::uint64_t t) const;

 private:
  enum class Kind { kSquare, kScaledSquare, kTable };

  Kind kind_ = Kind::kSquare;
  Rational alpha_;
  std::map<std::uint64_t, std::uint64_t> table_;
};

// Bijection between i >= 1 and nonempty finite subsets of N+:
// A_i = { b + 1 : bit b of i is set }. Index 0 decodes to the empty set.
std::vector<std::uint64_t> DecodeSubset(std::uint64_t i);
// Elements must lie in [1, 64]; throws BadIndex otherwise.
std::uint64_t EncodeSubset(const std::vector<std::uint64_t>& elements);

// (1 - 1/j) delta_(0,0) + (1/j - 1/k) U_{A_i x {2j+1}} + (1/k) delta_(i,2j+2).
// Requires k >= j >= 1 (BadParams) and a nonempty A_i whenever the uniform
// part has positive mass (BadIndex).
Dist MakeQijk(std::uint64_t i, std::uint64_t j, std::uint64_t k);

// q_{i,j,g(j)} with g(j) >= j enforced.
Dist MakeQgMember(std::uint64_t i, std::uint64_t j, const GrowthFn& g);

// The member with its indicator atom removed and the rest renormalized:
// ((1 - 1/j) delta_(0,0) + (1/j - 1/k) U_{A_i x {2j+1}}) / (1 - 1/k), k = g(j).
Dist MakeQPrime(std::uint64_t i, std::uint64_t j, const GrowthFn& g);
Dist MakeQPrimeForK(std::uint64_t i, std::uint64_t j, std::uint64_t k);

// (1 - 1/j) delta_(0,0) + (1/j) U_{A_i x {2j+1}}, the k -> infinity limit of q_{i,j,k}.
Dist MakeQLimit(std::uint64_t i, std::uint64_t j);

// (1 - gamma) delta_(0,0) + gamma U_{A x {2j+1}}.
Dist MakePackingMember(const std::vector<std::uint64_t>& subset, const Rational& gamma,
                       std::uint64_t j);

// (1/j - 1/g(j)) / (8 (1 - 1/g(j))).
Rational GammaOf(std::uint64_t j, const GrowthFn& g);

// (a, b) is an indicator iff b is even and b >= 4, i.e. b = 2j + 2, j >= 1.
bool IsIndicator(const DomainPoint& x);
std::uint64_t IndicatorLevel(const DomainPoint& x);  // j for b = 2j + 2

// The Q_g member an indicator point identifies, or nullopt when that member
// cannot be formed (A_a empty with positive uniform mass, g(j) < j, overflow).
std::optional<Dist> MemberForIndicator(const DomainPoint& x, const GrowthFn& g);

struct QgFamily {
  GrowthFn g;
  std::vector<std::uint64_t> i_values;
  std::vector<std::uint64_t> j_values;
};

struct PackingFamily {
  Rational gamma;
  std::uint64_t k = 1;
  std::uint64_t j = 1;
};

struct ExplicitFamily {
  std::vector<Dist> members;
};

using FamilySpec = std::variant<QgFamily, PackingFamily, ExplicitFamily>;

struct QgCoords {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t k = 0;
};

struct LabeledDist {
  std::string label;
  Dist dist;
  std::optional<QgCoords> coords;  // set for Q_g members
};

inline constexpr std::size_t kDefaultMemberCap = 100000;

// Deterministic, duplicate-free listing. Q_g members are ordered by (i, j),
// packing members by the subset index of A, explicit members as given with
// later duplicates dropped. Throws TooLarge past `cap` members.
std::vector<LabeledDist> EnumerateFamily(const FamilySpec& spec,
                                         std::size_t cap = kDefaultMemberCap);

std::string QgLabel(std::uint64_t i, std::uint64_t j, std::uint64_t k);

}  // namespace tvlab

#endif  // TVLAB_FAMILIES_H_
