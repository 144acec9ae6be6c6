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

#include "tvlab/harness/labels.h"

#include <cctype>
#include <optional>
#include <vector>

#include "tvlab/error.h"
#include "tvlab/families.h"

namespace tvlab::harness {
namespace {

std::uint64_t ToNatural(std::string_view token) {
  Rational r = ParseRational(token);
  if (r < 0 || boost::multiprecision::denominator(r) != 1) {
    Fail(ErrorCode::kParseError, "expected a natural number in label, got '" +
                                     std::string(token) + "'");
  }
  return CeilToU64(r);
}

// "name(args)" -> args, if the label has that shape.
std::optional<std::string_view> Arguments(std::string_view label, std::string_view name) {
  if (label.size() < name.size() + 2 || label.substr(0, name.size()) != name ||
      label[name.size()] != '(' || label.back() != ')') {
    return std::nullopt;
  }
  return label.substr(name.size() + 1, label.size() - name.size() - 2);
}

std::vector<std::string_view> SplitTopLevel(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '{') ++depth;
    if (s[k] == '}') --depth;
    if (s[k] == ',' && depth == 0) {
      out.push_back(s.substr(start, k - start));
      start = k + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::vector<std::uint64_t> Naturals(std::string_view args, std::size_t expected) {
  std::vector<std::uint64_t> out;
  for (auto part : SplitTopLevel(args)) out.push_back(ToNatural(part));
  if (out.size() != expected) Fail(ErrorCode::kParseError, "wrong number of label arguments");
  return out;
}

std::optional<std::string> QijkLabel(const Dist& d) {
  std::optional<DomainPoint> indicator;
  for (const auto& [x, w] : d.atoms()) {
    if (!IsIndicator(x)) continue;
    if (indicator) return std::nullopt;
    indicator = x;
  }
  if (!indicator) return std::nullopt;
  const Rational w = d.Weight(*indicator);
  if (boost::multiprecision::numerator(w) != 1) return std::nullopt;
  const BigInt den = boost::multiprecision::denominator(w);
  if (den > UINT64_MAX) return std::nullopt;
  const auto k = den.convert_to<std::uint64_t>();
  const std::uint64_t j = IndicatorLevel(*indicator);
  try {
    if (MakeQijk(indicator->a, j, k) == d) return QgLabel(indicator->a, j, k);
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

std::string LabelOf(const Dist& d) {
  if (d.size() == 1) {
    const DomainPoint& x = d.atoms().front().first;
    return "dirac(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
  }
  if (auto label = QijkLabel(d)) return *label;
  return FormatDistInline(d);
}

Dist ParseLabel(std::string_view label) {
  while (!label.empty() && std::isspace(static_cast<unsigned char>(label.front()))) {
    label.remove_prefix(1);
  }
  while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back()))) {
    label.remove_suffix(1);
  }
  if (!label.empty() && label.front() == '{') return ParseDistInline(label);
  if (auto args = Arguments(label, "dirac")) {
    auto v = Naturals(*args, 2);
    return Dirac({v[0], v[1]});
  }
  if (auto args = Arguments(label, "q")) {
    auto v = Naturals(*args, 3);
    return MakeQijk(v[0], v[1], v[2]);
  }
  if (auto args = Arguments(label, "qprime")) {
    auto v = Naturals(*args, 3);
    return MakeQPrimeForK(v[0], v[1], v[2]);
  }
  if (auto args = Arguments(label, "packing")) {
    auto parts = SplitTopLevel(*args);
    if (parts.size() != 3 || parts[2].size() < 2 || parts[2].front() != '{' ||
        parts[2].back() != '}') {
      Fail(ErrorCode::kParseError, "packing labels look like packing(gamma,j,{a,b})");
    }
    std::vector<std::uint64_t> subset;
    for (auto e : SplitTopLevel(parts[2].substr(1, parts[2].size() - 2))) {
      subset.push_back(ToNatural(e));
    }
    return MakePackingMember(subset, ParseRational(parts[0]), ToNatural(parts[1]));
  }
  Fail(ErrorCode::kParseError, "unrecognized distribution label '" + std::string(label) + "'");
}

}  // namespace tvlab::harness
