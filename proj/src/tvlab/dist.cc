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

#include "tvlab/dist.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "tvlab/error.h"

namespace tvlab {
namespace {

std::string_view TrimView(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t ParseNatural(std::string_view token) {
  if (token.empty() || token.size() > 20) {
    Fail(ErrorCode::kParseError, "bad coordinate '" + std::string(token) + "'");
  }
  unsigned __int128 v = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      Fail(ErrorCode::kParseError, "bad coordinate '" + std::string(token) + "'");
    }
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    Fail(ErrorCode::kParseError, "coordinate out of range '" + std::string(token) + "'");
  }
  return static_cast<std::uint64_t>(v);
}

// "a b w" -> atom.
std::pair<DomainPoint, Rational> ParseAtom(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) tokens.push_back(line.substr(start, pos - start));
  }
  if (tokens.size() != 3) {
    Fail(ErrorCode::kParseError, "expected 'a b weight', got '" + std::string(line) + "'");
  }
  return {DomainPoint{ParseNatural(tokens[0]), ParseNatural(tokens[1])},
          ParseRational(tokens[2])};
}

Dist FromAtomLines(const std::vector<std::string_view>& lines) {
  std::map<DomainPoint, Rational> weights;
  for (std::string_view raw : lines) {
    std::string_view line = TrimView(raw);
    if (line.empty() || line.front() == '#') continue;
    auto [x, w] = ParseAtom(line);
    if (!weights.emplace(x, w).second) {
      Fail(ErrorCode::kParseError, "repeated point " + ToString(x));
    }
  }
  return Dist::FromWeights(weights);
}

}  // namespace

std::string ToString(const DomainPoint& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
}

Dist Dist::FromWeights(const std::map<DomainPoint, Rational>& weights) {
  std::vector<Atom> atoms;
  atoms.reserve(weights.size());
  Rational total = 0;
  for (const auto& [x, w] : weights) {
    if (w < 0) Fail(ErrorCode::kBadWeights, "negative weight at " + ToString(x));
    if (w == 0) continue;
    total += w;
    atoms.emplace_back(x, w);
  }
  if (total != 1) {
    Fail(ErrorCode::kBadWeights, "weights sum to " + FormatRational(total) + ", not 1");
  }
  return Dist(std::move(atoms));
}

Rational Dist::Weight(const DomainPoint& x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& atom, const DomainPoint& p) { return atom.first < p; });
  if (it != atoms_.end() && it->first == x) return it->second;
  return Rational(0);
}

bool Dist::Contains(const DomainPoint& x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& atom, const DomainPoint& p) { return atom.first < p; });
  return it != atoms_.end() && it->first == x;
}

std::vector<DomainPoint> Dist::Support() const {
  std::vector<DomainPoint> out;
  out.reserve(atoms_.size());
  for (const auto& atom : atoms_) out.push_back(atom.first);
  return out;
}

Dist Dirac(const DomainPoint& x) {
  return Dist::FromWeights({{x, Rational(1)}});
}

Dist Uniform(std::span<const DomainPoint> points) {
  if (points.empty()) Fail(ErrorCode::kEmptySet, "uniform over an empty set");
  std::vector<DomainPoint> distinct(points.begin(), points.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const Rational w(1, static_cast<long long>(distinct.size()));
  std::map<DomainPoint, Rational> weights;
  for (const auto& x : distinct) weights.emplace(x, w);
  return Dist::FromWeights(weights);
}

Dist Mix(std::span<const std::pair<Rational, Dist>> components) {
  Rational total = 0;
  std::map<DomainPoint, Rational> weights;
  for (const auto& [w, d] : components) {
    if (w < 0) Fail(ErrorCode::kBadWeights, "negative mixture weight");
    total += w;
    if (w == 0) continue;
    for (const auto& [x, px] : d.atoms()) weights[x] += w * px;
  }
  if (total != 1) {
    Fail(ErrorCode::kBadWeights,
         "mixture weights sum to " + FormatRational(total) + ", not 1");
  }
  return Dist::FromWeights(weights);
}

Rational TvDistance(const Dist& p, const Dist& q) {
  // Merge walk over the two sorted supports.
  Rational sum = 0;
  auto pi = p.atoms().begin(), pe = p.atoms().end();
  auto qi = q.atoms().begin(), qe = q.atoms().end();
  while (pi != pe || qi != qe) {
    if (qi == qe || (pi != pe && pi->first < qi->first)) {
      sum += pi->second;
      ++pi;
    } else if (pi == pe || qi->first < pi->first) {
      sum += qi->second;
      ++qi;
    } else {
      Rational d = pi->second - qi->second;
      sum += d < 0 ? Rational(-d) : d;
      ++pi;
      ++qi;
    }
  }
  return sum / 2;
}

bool YatracosSet::Contains(const DomainPoint& x) const {
  if (std::binary_search(listed.begin(), listed.end(), x)) return true;
  if (!outside) return false;
  return reference == nullptr || !std::binary_search(reference->begin(), reference->end(), x);
}

Rational MassOf(const Dist& p, const YatracosSet& set) {
  Rational mass = 0;
  for (const auto& [x, w] : p.atoms()) {
    if (set.Contains(x)) mass += w;
  }
  return mass;
}

Sample SampleFrom(const Dist& p, std::size_t n, const Seed& seed) {
  Sample out;
  out.points.reserve(n);
  const auto& atoms = p.atoms();
  // thresholds[k] = floor(cum_k * 2^64) for every atom except the last.
  std::vector<std::uint64_t> thresholds;
  thresholds.reserve(atoms.size());
  const BigInt two64 = BigInt(1) << 64;
  Rational cumulative = 0;
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    cumulative += atoms[k].second;
    BigInt scaled = boost::multiprecision::numerator(cumulative) * two64 /
                    boost::multiprecision::denominator(cumulative);
    thresholds.push_back(scaled.convert_to<std::uint64_t>());
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < n; ++t) {
    const std::uint64_t u = rng.Next();
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
    out.points.push_back(atoms[static_cast<std::size_t>(it - thresholds.begin())].first);
  }
  return out;
}

std::string FormatDist(const Dist& p) {
  std::string out;
  for (const auto& [x, w] : p.atoms()) {
    out += std::to_string(x.a) + " " + std::to_string(x.b) + " " + FormatRational(w) + "\n";
  }
  return out;
}

Dist ParseDist(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return FromAtomLines(lines);
}

std::string FormatDistInline(const Dist& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, w] : p.atoms()) {
    if (!first) out += "; ";
    first = false;
    out += std::to_string(x.a) + " " + std::to_string(x.b) + " " + FormatRational(w);
  }
  return out + "}";
}

Dist ParseDistInline(std::string_view text) {
  std::string_view s = TrimView(text);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}') {
    Fail(ErrorCode::kParseError, "inline distribution must be wrapped in braces");
  }
  s = s.substr(1, s.size() - 2);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string_view::npos) end = s.size();
    parts.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return FromAtomLines(parts);
}

}  // namespace tvlab
