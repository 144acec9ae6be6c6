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

#include "tvlab/families.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>

#include "tvlab/error.h"

namespace tvlab {
namespace {

constexpr std::uint64_t kMaxLevel = (std::numeric_limits<std::uint64_t>::max() - 2) / 2;

std::vector<DomainPoint> Row(const std::vector<std::uint64_t>& subset, std::uint64_t b) {
  std::vector<DomainPoint> out;
  out.reserve(subset.size());
  for (std::uint64_t a : subset) out.push_back(DomainPoint{a, b});
  return out;
}

void AddUniform(std::map<DomainPoint, Rational>& weights, const std::vector<DomainPoint>& row,
                const Rational& mass) {
  if (mass == 0) return;
  const Rational each = mass / static_cast<long long>(row.size());
  for (const auto& x : row) weights[x] += each;
}

void CheckLevel(std::uint64_t j) {
  if (j == 0) Fail(ErrorCode::kBadParams, "level j must be at least 1");
  if (j > kMaxLevel) Fail(ErrorCode::kBadParams, "level j too large for the domain");
}

std::uint64_t ParseU64(std::string_view s) {
  Rational r = ParseRational(s);
  if (boost::multiprecision::denominator(r) != 1 || r < 0) {
    Fail(ErrorCode::kParseError, "expected a natural number, got '" + std::string(s) + "'");
  }
  return CeilToU64(r);
}

}  // namespace

GrowthFn GrowthFn::Square() { return GrowthFn(); }

GrowthFn GrowthFn::ScaledSquare(const Rational& alpha) {
  if (alpha <= 0) Fail(ErrorCode::kBadParams, "scaled-square needs alpha > 0");
  GrowthFn g;
  g.kind_ = Kind::kScaledSquare;
  g.alpha_ = alpha;
  return g;
}

GrowthFn GrowthFn::Table(std::map<std::uint64_t, std::uint64_t> values) {
  if (values.empty()) Fail(ErrorCode::kBadParams, "empty growth table");
  std::uint64_t previous = 0;
  for (const auto& [t, v] : values) {
    if (v < previous) Fail(ErrorCode::kBadParams, "growth table is not monotone");
    previous = v;
  }
  GrowthFn g;
  g.kind_ = Kind::kTable;
  g.table_ = std::move(values);
  return g;
}

GrowthFn GrowthFn::Parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "square") return Square();
  auto inner = [&](std::string_view prefix) -> std::optional<std::string_view> {
    std::string_view v(s);
    if (v.size() > prefix.size() + 1 && v.substr(0, prefix.size()) == prefix &&
        v[prefix.size()] == '(' && v.back() == ')') {
      return v.substr(prefix.size() + 1, v.size() - prefix.size() - 2);
    }
    return std::nullopt;
  };
  if (auto arg = inner("scaled-square")) return ScaledSquare(ParseRational(*arg));
  if (auto arg = inner("table")) {
    std::map<std::uint64_t, std::uint64_t> values;
    std::string_view rest = *arg;
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view entry = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
      std::size_t colon = entry.find(':');
      if (colon == std::string_view::npos) {
        Fail(ErrorCode::kParseError, "growth table entries look like 't:g(t)'");
      }
      values[ParseU64(entry.substr(0, colon))] = ParseU64(entry.substr(colon + 1));
    }
    return Table(std::move(values));
  }
  Fail(ErrorCode::kParseError, "unknown growth function '" + std::string(text) + "'");
}

std::string GrowthFn::ToString() const {
  switch (kind_) {
    case Kind::kSquare:
      return "square";
    case Kind::kScaledSquare: {
      std::string a = FormatRational(alpha_);
      if (a.size() > 2 && a.substr(a.size() - 2) == "/1") a.resize(a.size() - 2);
      return "scaled-square(" + a + ")";
    }
    case Kind::kTable: {
      std::string out = "table(";
      bool first = true;
      for (const auto& [t, v] : table_) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(t) + ":" + std::to_string(v);
      }
      return out + ")";
    }
  }
  return "square";
}

std::uint64_t GrowthFn::operator()(std::uint64_t t) const {
  switch (kind_) {
    case Kind::kSquare: {
      unsigned __int128 v = static_cast<unsigned __int128>(t) * t;
      if (v > std::numeric_limits<std::uint64_t>::max()) {
        Fail(ErrorCode::kBadParams, "g(t) overflows at t=" + std::to_string(t));
      }
      return static_cast<std::uint64_t>(v);
    }
    case Kind::kScaledSquare: {
      const Rational v = 32 * alpha_ * Rational(BigInt(t) * t);
      return CeilToU64(v);
    }
    case Kind::kTable: {
      auto it = table_.find(t);
      if (it == table_.end()) {
        Fail(ErrorCode::kBadParams, "growth table has no entry for t=" + std::to_string(t));
      }
      return it->second;
    }
  }
  return 0;
}

std::uint64_t GrowthFn::CheckedAt(std::uint64_t t) const {
  const std::uint64_t v = (*this)(t);
  if (v < t) {
    Fail(ErrorCode::kBadParams,
         "g(" + std::to_string(t) + ") = " + std::to_string(v) + " is below t");
  }
  return v;
}

std::vector<std::uint64_t> DecodeSubset(std::uint64_t i) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t bit = 0; bit < 64; ++bit) {
    if ((i >> bit) & 1U) out.push_back(bit + 1);
  }
  return out;
}

std::uint64_t EncodeSubset(const std::vector<std::uint64_t>& elements) {
  std::uint64_t i = 0;
  for (std::uint64_t e : elements) {
    if (e < 1 || e > 64) {
      Fail(ErrorCode::kBadIndex, "subset element " + std::to_string(e) + " outside [1, 64]");
    }
    i |= std::uint64_t{1} << (e - 1);
  }
  return i;
}

Dist MakeQijk(std::uint64_t i, std::uint64_t j, std::uint64_t k) {
  CheckLevel(j);
  if (k < j) {
    Fail(ErrorCode::kBadParams,
         "q_{i,j,k} needs k >= j (got j=" + std::to_string(j) + ", k=" + std::to_string(k) + ")");
  }
  const Rational inv_j(1, j);
  const Rational inv_k(1, k);
  const Rational uniform_mass = inv_j - inv_k;
  const std::vector<std::uint64_t> subset = DecodeSubset(i);
  if (uniform_mass > 0 && subset.empty()) {
    Fail(ErrorCode::kBadIndex, "A_0 is empty but the uniform component has positive mass");
  }
  std::map<DomainPoint, Rational> weights;
  weights[DomainPoint{0, 0}] += 1 - inv_j;
  AddUniform(weights, Row(subset, 2 * j + 1), uniform_mass);
  weights[DomainPoint{i, 2 * j + 2}] += inv_k;
  return Dist::FromWeights(weights);
}

Dist MakeQgMember(std::uint64_t i, std::uint64_t j, const GrowthFn& g) {
  CheckLevel(j);
  return MakeQijk(i, j, g.CheckedAt(j));
}

Dist MakeQPrimeForK(std::uint64_t i, std::uint64_t j, std::uint64_t k) {
  CheckLevel(j);
  if (k <= 1) Fail(ErrorCode::kBadParams, "q' needs g(j) > 1");
  if (k < j) Fail(ErrorCode::kBadParams, "q' needs g(j) >= j");
  const Rational inv_j(1, j);
  const Rational inv_k(1, k);
  const Rational scale = 1 / (1 - inv_k);
  const Rational uniform_mass = (inv_j - inv_k) * scale;
  const std::vector<std::uint64_t> subset = DecodeSubset(i);
  if (uniform_mass > 0 && subset.empty()) {
    Fail(ErrorCode::kBadIndex, "A_0 is empty but the uniform component has positive mass");
  }
  std::map<DomainPoint, Rational> weights;
  weights[DomainPoint{0, 0}] += (1 - inv_j) * scale;
  AddUniform(weights, Row(subset, 2 * j + 1), uniform_mass);
  return Dist::FromWeights(weights);
}

Dist MakeQPrime(std::uint64_t i, std::uint64_t j, const GrowthFn& g) {
  CheckLevel(j);
  return MakeQPrimeForK(i, j, g(j));
}

Dist MakeQLimit(std::uint64_t i, std::uint64_t j) {
  CheckLevel(j);
  const std::vector<std::uint64_t> subset = DecodeSubset(i);
  if (subset.empty()) Fail(ErrorCode::kBadIndex, "A_i is empty");
  const Rational inv_j(1, j);
  std::map<DomainPoint, Rational> weights;
  weights[DomainPoint{0, 0}] += 1 - inv_j;
  AddUniform(weights, Row(subset, 2 * j + 1), inv_j);
  return Dist::FromWeights(weights);
}

Dist MakePackingMember(const std::vector<std::uint64_t>& subset, const Rational& gamma,
                       std::uint64_t j) {
  CheckLevel(j);
  if (subset.empty()) Fail(ErrorCode::kBadParams, "packing member needs a nonempty A");
  if (gamma <= 0 || gamma >= 1) Fail(ErrorCode::kBadParams, "packing needs 0 < gamma < 1");
  std::set<std::uint64_t> distinct(subset.begin(), subset.end());
  std::vector<std::uint64_t> elements(distinct.begin(), distinct.end());
  std::map<DomainPoint, Rational> weights;
  weights[DomainPoint{0, 0}] += 1 - gamma;
  AddUniform(weights, Row(elements, 2 * j + 1), gamma);
  return Dist::FromWeights(weights);
}

Rational GammaOf(std::uint64_t j, const GrowthFn& g) {
  CheckLevel(j);
  const std::uint64_t k = g(j);
  if (k <= 1) Fail(ErrorCode::kBadParams, "gamma(j) needs g(j) > 1");
  const Rational inv_k(1, k);
  return (Rational(1, j) - inv_k) / (8 * (1 - inv_k));
}

bool IsIndicator(const DomainPoint& x) { return x.b >= 4 && x.b % 2 == 0; }

std::uint64_t IndicatorLevel(const DomainPoint& x) { return (x.b - 2) / 2; }

std::optional<Dist> MemberForIndicator(const DomainPoint& x, const GrowthFn& g) {
  if (!IsIndicator(x)) return std::nullopt;
  try {
    return MakeQgMember(x.a, IndicatorLevel(x), g);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string QgLabel(std::uint64_t i, std::uint64_t j, std::uint64_t k) {
  return "q(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

std::vector<LabeledDist> EnumerateFamily(const FamilySpec& spec, std::size_t cap) {
  std::vector<LabeledDist> out;
  if (const auto* qg = std::get_if<QgFamily>(&spec)) {
    std::set<std::uint64_t> is(qg->i_values.begin(), qg->i_values.end());
    std::set<std::uint64_t> js(qg->j_values.begin(), qg->j_values.end());
    if (is.empty() || js.empty()) Fail(ErrorCode::kBadParams, "Q_g slice has an empty range");
    if (is.size() * js.size() > cap) {
      Fail(ErrorCode::kTooLarge, "Q_g slice exceeds the member cap");
    }
    for (std::uint64_t i : is) {
      for (std::uint64_t j : js) {
        CheckLevel(j);
        const std::uint64_t k = qg->g.CheckedAt(j);
        out.push_back({QgLabel(i, j, k), MakeQijk(i, j, k), QgCoords{i, j, k}});
      }
    }
  } else if (const auto* packing = std::get_if<PackingFamily>(&spec)) {
    if (packing->k == 0) Fail(ErrorCode::kBadParams, "packing needs k >= 1");
    if (packing->gamma <= 0 || packing->gamma >= 1) {
      Fail(ErrorCode::kBadParams, "packing needs 0 < gamma < 1");
    }
    const std::uint64_t width = 4 * packing->k;
    if (width >= 63 || (std::uint64_t{1} << width) - 1 > cap) {
      Fail(ErrorCode::kTooLarge, "packing class over [" + std::to_string(width) +
                                     "] exceeds the member cap");
    }
    std::string gamma = FormatRational(packing->gamma);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << width); ++mask) {
      std::vector<std::uint64_t> subset = DecodeSubset(mask);
      std::string label = "packing(" + gamma + "," + std::to_string(packing->j) + ",{";
      for (std::size_t e = 0; e < subset.size(); ++e) {
        if (e) label += ",";
        label += std::to_string(subset[e]);
      }
      label += "})";
      out.push_back({label, MakePackingMember(subset, packing->gamma, packing->j), std::nullopt});
    }
  } else {
    const auto& members = std::get<ExplicitFamily>(spec).members;
    if (members.size() > cap) Fail(ErrorCode::kTooLarge, "explicit class exceeds the member cap");
    for (const Dist& d : members) {
      bool seen = std::any_of(out.begin(), out.end(),
                              [&](const LabeledDist& existing) { return existing.dist == d; });
      if (!seen) out.push_back({FormatDistInline(d), d, std::nullopt});
    }
  }
  return out;
}

}  // namespace tvlab
