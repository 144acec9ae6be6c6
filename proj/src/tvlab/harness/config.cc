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

#include "tvlab/harness/config.h"

#include <cctype>
#include <cstring>
#include <functional>
#include <map>
#include <set>

#include "tvlab/error.h"
#include "tvlab/harness/experiments.h"
#include "tvlab/harness/labels.h"

namespace tvlab::harness {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string Pretty(const Rational& r) {
  std::string s = FormatRational(r);
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "/1") == 0) s.resize(s.size() - 2);
  return s;
}

std::uint64_t ParseCount(std::string_view v) {
  Rational r = ParseRational(v);
  if (r < 0 || boost::multiprecision::denominator(r) != 1) {
    Fail(ErrorCode::kParseError, "expected a natural number, got '" + std::string(v) + "'");
  }
  return CeilToU64(r);
}

bool ParseBool(std::string_view v) {
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  Fail(ErrorCode::kParseError, "expected on/off, got '" + std::string(v) + "'");
}

std::string JoinList(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(values[k]);
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"experiment.name", [](auto& c, auto v) { c.name = std::string(v); }},
      {"experiment.trials", [](auto& c, auto v) { c.trials = ParseCount(v); }},
      {"experiment.seed", [](auto& c, auto v) { c.seed = ParseCount(v); }},
      {"experiment.threads", [](auto& c, auto v) { c.threads = ParseCount(v); }},
      {"experiment.scale", [](auto& c, auto v) { c.scale = ParseRational(v); }},
      {"experiment.schedule",
       [](auto& c, auto v) {
         if (v == "per-member") {
           c.schedule = Schedule::kPerMember;
         } else if (v == "round-robin") {
           c.schedule = Schedule::kRoundRobin;
         } else {
           Fail(ErrorCode::kParseError, "schedule is per-member or round-robin");
         }
       }},
      {"experiment.timing", [](auto& c, auto v) { c.timing = ParseBool(v); }},
      {"experiment.subset_cap", [](auto& c, auto v) { c.subset_cap = ParseCount(v); }},
      {"experiment.member_cap", [](auto& c, auto v) { c.member_cap = ParseCount(v); }},
      {"family.kind",
       [](auto& c, auto v) {
         if (v != "qg" && v != "packing" && v != "explicit") {
           Fail(ErrorCode::kParseError, "family kind is qg, packing or explicit");
         }
         c.family_kind = std::string(v);
       }},
      {"family.growth", [](auto& c, auto v) { c.growth = GrowthFn::Parse(v); }},
      {"family.i", [](auto& c, auto v) { c.i_values = ParseNaturalList(v); }},
      {"family.j", [](auto& c, auto v) { c.j_values = ParseNaturalList(v); }},
      {"family.gamma", [](auto& c, auto v) { c.gamma = ParseRational(v); }},
      {"family.k", [](auto& c, auto v) { c.packing_k = ParseCount(v); }},
      {"family.member", [](auto& c, auto v) { c.members.push_back(ParseLabel(v)); }},
      {"family.target", [](auto& c, auto v) { c.target = ParseCount(v); }},
      {"adversary.kind",
       [](auto& c, auto v) {
         if (v != "none" && v != "huber" && v != "subtract" && v != "general") {
           Fail(ErrorCode::kParseError, "adversary kind is none, huber, subtract or general");
         }
         c.adversary_kind = std::string(v);
       }},
      {"adversary.eta", [](auto& c, auto v) { c.eta = ParseRational(v); }},
      {"adversary.eta_add", [](auto& c, auto v) { c.eta_add = ParseRational(v); }},
      {"adversary.eta_remove", [](auto& c, auto v) { c.eta_remove = ParseRational(v); }},
      {"adversary.add",
       [](auto& c, auto v) {
         if (v != "decoy") ParseLabel(v);
         c.add = std::string(v);
       }},
      {"adversary.remove",
       [](auto& c, auto v) {
         if (v != "indicator") ParseLabel(v);
         c.remove = std::string(v);
       }},
      {"learner.epsilon", [](auto& c, auto v) { c.epsilon = ParseRational(v); }},
      {"learner.delta", [](auto& c, auto v) { c.delta = ParseRational(v); }},
      {"learner.alpha", [](auto& c, auto v) { c.alpha = ParseRational(v); }},
      {"learner.beta", [](auto& c, auto v) { c.beta = ParseRational(v); }},
      {"learner.robustness", [](auto& c, auto v) { c.robustness = ParseRational(v); }},
      {"learner.dp_epsilon", [](auto& c, auto v) { c.dp_epsilon = ParseRational(v); }},
      {"learner.dp_delta", [](auto& c, auto v) { c.dp_delta = ParseRational(v); }},
      {"learner.n", [](auto& c, auto v) { c.n = ParseCount(v); }},
      {"learner.n1", [](auto& c, auto v) { c.n1 = ParseCount(v); }},
      {"learner.n2", [](auto& c, auto v) { c.n2 = ParseCount(v); }},
      {"learner.subset_floor", [](auto& c, auto v) { c.subset_floor = ParseCount(v); }},
      {"learner.level_n1", [](auto& c, auto v) { c.level_n1 = ParseCount(v); }},
      {"learner.level_n2", [](auto& c, auto v) { c.level_n2 = ParseCount(v); }},
      {"acceptance.max_failure_rate",
       [](auto& c, auto v) { c.max_failure_rate = ParseRational(v); }},
      {"acceptance.min_success_rate",
       [](auto& c, auto v) { c.min_success_rate = ParseRational(v); }},
  };
  return *setters;
}

// Range checks that do not depend on the experiment.
// `lines` maps "section.key" to the line that set it, for diagnostics.
void CheckRanges(const ExperimentConfig& c, const std::map<std::string, std::size_t>& lines,
                 std::vector<std::string>& errors) {
  auto at = [&](const std::string& full) {
    auto it = lines.find(full);
    return it == lines.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
  };
  auto open_unit = [&](const std::optional<Rational>& v, const char* full) {
    const std::string key = std::strchr(full, '.') + 1;
    if (v && (*v <= 0 || *v >= 1)) {
      errors.push_back(at(full) + key + " = " + Pretty(*v) + " must satisfy 0 < " + key + " < 1");
    }
  };
  auto budget = [&](const std::optional<Rational>& v, const char* full) {
    const std::string key = std::strchr(full, '.') + 1;
    if (v && (*v < 0 || *v >= 1)) {
      errors.push_back(at(full) + key + " = " + Pretty(*v) + " must satisfy 0 <= " + key +
                       " < 1");
    }
  };
  auto closed_unit = [&](const std::optional<Rational>& v, const char* full) {
    const std::string key = std::strchr(full, '.') + 1;
    if (v && (*v < 0 || *v > 1)) errors.push_back(at(full) + key + " must lie in [0, 1]");
  };
  if (c.name.empty()) {
    errors.push_back("experiment.name is required");
  } else if (!IsKnownExperiment(c.name)) {
    errors.push_back("unknown experiment '" + c.name + "' (see list-experiments)");
  }
  if (c.trials < 1) errors.push_back("experiment.trials must be at least 1");
  if (c.scale <= 0) errors.push_back("experiment.scale must be positive");
  if (c.family_kind == "qg") {
    if (c.i_values.empty()) errors.push_back("family.i is empty");
    if (c.j_values.empty()) errors.push_back("family.j is empty");
    for (auto j : c.j_values) {
      if (j == 0) errors.push_back("family.j values must be at least 1");
    }
  }
  if (c.family_kind == "packing") {
    if (c.gamma <= 0 || c.gamma >= 1) errors.push_back("family.gamma must satisfy 0 < gamma < 1");
    if (c.packing_k < 1) errors.push_back("family.k must be at least 1");
    if (c.j_values.size() != 1 || c.j_values[0] == 0) {
      errors.push_back("packing families take a single family.j >= 1");
    }
  }
  if (c.family_kind == "explicit" && c.members.empty()) {
    errors.push_back("explicit families need at least one family.member");
  }
  if (c.target && *c.target == 0) errors.push_back("family.target is 1-based");
  budget(c.eta, "adversary.eta");
  budget(c.eta_add, "adversary.eta_add");
  budget(c.eta_remove, "adversary.eta_remove");
  open_unit(c.epsilon, "learner.epsilon");
  open_unit(c.delta, "learner.delta");
  open_unit(c.alpha, "learner.alpha");
  open_unit(c.beta, "learner.beta");
  if (c.robustness && *c.robustness <= 0) errors.push_back("robustness must be positive");
  if (c.dp_epsilon && *c.dp_epsilon <= 0) errors.push_back("dp_epsilon must be positive");
  budget(c.dp_delta, "learner.dp_delta");
  closed_unit(c.max_failure_rate, "acceptance.max_failure_rate");
  closed_unit(c.min_success_rate, "acceptance.min_success_rate");
}

}  // namespace

std::vector<std::uint64_t> ParseNaturalList(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::string_view rest = Trim(text);
  if (rest.empty()) Fail(ErrorCode::kParseError, "empty list");
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string_view item = Trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      std::uint64_t lo = ParseCount(item.substr(0, dots));
      std::uint64_t hi = ParseCount(item.substr(dots + 2));
      if (hi < lo) Fail(ErrorCode::kParseError, "empty range '" + std::string(item) + "'");
      if (hi - lo > 1000000) Fail(ErrorCode::kParseError, "range too long");
      for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(ParseCount(item));
    }
  }
  return out;
}

FamilySpec ExperimentConfig::Family() const {
  if (family_kind == "packing") {
    return PackingFamily{gamma, packing_k, j_values.empty() ? 1 : j_values.front()};
  }
  if (family_kind == "explicit") return ExplicitFamily{members};
  return QgFamily{growth, i_values, j_values};
}

std::string ExperimentConfig::Canonical() const {
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };
  auto opt_rational = [&](const char* key, const std::optional<Rational>& v) {
    if (v) line(key, Pretty(*v));
  };
  auto opt_count = [&](const char* key, const std::optional<std::uint64_t>& v) {
    if (v) line(key, std::to_string(*v));
  };
  out += "[experiment]\n";
  line("name", name);
  line("trials", std::to_string(trials));
  line("seed", std::to_string(seed));
  // threads is left out: it never changes results, and reports echo this text.
  line("scale", Pretty(scale));
  line("schedule", schedule == Schedule::kPerMember ? "per-member" : "round-robin");
  line("timing", timing ? "on" : "off");
  line("subset_cap", std::to_string(subset_cap));
  line("member_cap", std::to_string(member_cap));
  out += "[family]\n";
  line("kind", family_kind);
  if (family_kind == "qg") {
    line("growth", growth.ToString());
    line("i", JoinList(i_values));
    line("j", JoinList(j_values));
  } else if (family_kind == "packing") {
    line("gamma", Pretty(gamma));
    line("k", std::to_string(packing_k));
    line("j", JoinList(j_values));
  } else {
    for (const Dist& m : members) line("member", FormatDistInline(m));
  }
  opt_count("target", target);
  out += "[adversary]\n";
  line("kind", adversary_kind);
  opt_rational("eta", eta);
  opt_rational("eta_add", eta_add);
  opt_rational("eta_remove", eta_remove);
  if (adversary_kind != "none") {
    line("add", add);
    line("remove", remove);
  }
  out += "[learner]\n";
  opt_rational("epsilon", epsilon);
  opt_rational("delta", delta);
  opt_rational("alpha", alpha);
  opt_rational("beta", beta);
  opt_rational("robustness", robustness);
  opt_rational("dp_epsilon", dp_epsilon);
  opt_rational("dp_delta", dp_delta);
  opt_count("n", n);
  opt_count("n1", n1);
  opt_count("n2", n2);
  opt_count("subset_floor", subset_floor);
  opt_count("level_n1", level_n1);
  opt_count("level_n2", level_n2);
  out += "[acceptance]\n";
  opt_rational("max_failure_rate", max_failure_rate);
  opt_rational("min_success_rate", min_success_rate);
  return out;
}

ExperimentConfig ValidateConfig(std::string_view text) {
  ExperimentConfig config;
  std::vector<std::string> errors;
  std::map<std::string, std::size_t> seen;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = Trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "unterminated section header");
        continue;
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (section != "experiment" && section != "family" && section != "adversary" &&
          section != "learner" && section != "acceptance") {
        errors.push_back(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (section.empty()) {
      errors.push_back(where + "key '" + key + "' outside any section");
      continue;
    }
    const std::string full = section + "." + key;
    const auto& setters = Setters();
    auto it = setters.find(full);
    if (it == setters.end()) {
      errors.push_back(where + "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    if (full != "family.member" && !seen.emplace(full, line_no).second) {
      errors.push_back(where + "repeated key '" + key + "'");
      continue;
    }
    try {
      it->second(config, value);
    } catch (const Error& e) {
      errors.push_back(where + key + ": " + e.what());
    }
  }
  CheckRanges(config, seen, errors);
  if (errors.empty()) {
    try {
      ResolveDefaults(config);
    } catch (const Error& e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string message = "invalid config:";
    for (const auto& e : errors) message += "\n  " + e;
    Fail(ErrorCode::kConfigError, message);
  }
  return config;
}

}  // namespace tvlab::harness
