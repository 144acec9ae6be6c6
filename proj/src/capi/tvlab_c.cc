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

#include "tvlab/tvlab.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "tvlab/dist.h"
#include "tvlab/error.h"
#include "tvlab/families.h"
#include "tvlab/harness/config.h"
#include "tvlab/harness/experiments.h"
#include "tvlab/harness/labels.h"

struct tvlab_dist {
  tvlab::Dist dist;
};

struct tvlab_run {
  tvlab::harness::RunResult result;
};

namespace {

thread_local std::string g_last_error;

tvlab_status Record(tvlab_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, mapping exceptions to status codes.
template <typename Fn>
tvlab_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return TVLAB_OK;
  } catch (const tvlab::Error& e) {
    return Record(static_cast<tvlab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Record(TVLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Record(TVLAB_INTERNAL, e.what());
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

tvlab::Dist ParseAny(const char* text) {
  std::string_view view(text);
  const auto first = view.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && view[first] == '{') return tvlab::ParseDistInline(view);
  if (first != std::string_view::npos && std::isalpha(static_cast<unsigned char>(view[first]))) {
    const std::size_t last = view.find_last_not_of(" \t\r\n");
    return tvlab::harness::ParseLabel(view.substr(first, last - first + 1));
  }
  return tvlab::ParseDist(view);
}

#define TVLAB_REQUIRE(ptr)                                                   \
  do {                                                                       \
    if ((ptr) == nullptr) return Record(TVLAB_NULL_ARGUMENT, #ptr " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* tvlab_last_error(void) { return g_last_error.c_str(); }

const char* tvlab_status_name(tvlab_status status) {
  if (status == TVLAB_OK) return "Ok";
  if (status == TVLAB_NULL_ARGUMENT) return "NullArgument";
  return tvlab::ErrorCodeName(static_cast<tvlab::ErrorCode>(status)).data();
}

const char* tvlab_version(void) { return "1.0.0"; }

void tvlab_string_free(char* s) { std::free(s); }

tvlab_status tvlab_dist_parse(const char* text, tvlab_dist** out) {
  TVLAB_REQUIRE(text);
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = new tvlab_dist{ParseAny(text)}; });
}

tvlab_status tvlab_dist_dirac(uint64_t a, uint64_t b, tvlab_dist** out) {
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = new tvlab_dist{tvlab::Dirac({a, b})}; });
}

tvlab_status tvlab_dist_qijk(uint64_t i, uint64_t j, uint64_t k, tvlab_dist** out) {
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = new tvlab_dist{tvlab::MakeQijk(i, j, k)}; });
}

void tvlab_dist_free(tvlab_dist* d) { delete d; }

size_t tvlab_dist_size(const tvlab_dist* d) { return d == nullptr ? 0 : d->dist.size(); }

tvlab_status tvlab_dist_format(const tvlab_dist* d, char** out) {
  TVLAB_REQUIRE(d);
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = Dup(tvlab::FormatDist(d->dist)); });
}

tvlab_status tvlab_dist_label(const tvlab_dist* d, char** out) {
  TVLAB_REQUIRE(d);
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = Dup(tvlab::harness::LabelOf(d->dist)); });
}

tvlab_status tvlab_dist_tv(const tvlab_dist* p, const tvlab_dist* q, char** out) {
  TVLAB_REQUIRE(p);
  TVLAB_REQUIRE(q);
  TVLAB_REQUIRE(out);
  return Guard([&] { *out = Dup(tvlab::FormatRational(tvlab::TvDistance(p->dist, q->dist))); });
}

tvlab_status tvlab_list_experiments(char** out) {
  TVLAB_REQUIRE(out);
  return Guard([&] {
    std::string text;
    for (const auto& e : tvlab::harness::Experiments()) {
      text += e.name + "\t" + e.description + "\n";
    }
    *out = Dup(text);
  });
}

tvlab_status tvlab_validate_config(const char* config_text, char** canonical_out) {
  TVLAB_REQUIRE(config_text);
  return Guard([&] {
    auto config = tvlab::harness::ValidateConfig(config_text);
    if (canonical_out != nullptr) *canonical_out = Dup(config.Canonical());
  });
}

tvlab_status tvlab_run_experiment(const char* config_text, const tvlab_overrides* overrides,
                                  const char* out_dir, tvlab_run** out) {
  TVLAB_REQUIRE(config_text);
  TVLAB_REQUIRE(out_dir);
  TVLAB_REQUIRE(out);
  return Guard([&] {
    auto config = tvlab::harness::ValidateConfig(config_text);
    if (overrides != nullptr) {
      if (overrides->seed != nullptr) config.seed = *overrides->seed;
      if (overrides->trials != nullptr) {
        if (*overrides->trials == 0) {
          tvlab::Fail(tvlab::ErrorCode::kConfigError, "invalid config:\n  --trials must be >= 1");
        }
        config.trials = *overrides->trials;
      }
      if (overrides->threads != nullptr) config.threads = *overrides->threads;
      if (overrides->scale != nullptr) {
        tvlab::Rational scale;
        try {
          scale = tvlab::ParseRational(overrides->scale);
        } catch (const tvlab::Error& e) {
          tvlab::Fail(tvlab::ErrorCode::kConfigError,
                      std::string("invalid config:\n  --scale: ") + e.what());
        }
        if (scale <= 0) {
          tvlab::Fail(tvlab::ErrorCode::kConfigError,
                      "invalid config:\n  --scale must be positive");
        }
        config.scale = scale;
      }
    }
    auto run = std::make_unique<tvlab_run>();
    run->result = tvlab::harness::RunExperiment(config, out_dir);
    *out = run.release();
  });
}

int tvlab_run_passed(const tvlab_run* run) {
  return run != nullptr && run->result.report.passed ? 1 : 0;
}

const char* tvlab_run_summary_json(const tvlab_run* run) {
  return run == nullptr ? "" : run->result.report.summary_json.c_str();
}

const char* tvlab_run_csv_path(const tvlab_run* run) {
  return run == nullptr ? "" : run->result.csv_path.c_str();
}

const char* tvlab_run_summary_path(const tvlab_run* run) {
  return run == nullptr ? "" : run->result.summary_path.c_str();
}

const char* tvlab_run_trace_path(const tvlab_run* run) {
  return run == nullptr ? "" : run->result.trace_path.c_str();
}

void tvlab_run_free(tvlab_run* run) { delete run; }

tvlab_status tvlab_verify_report(const char* csv_path, uint64_t* rows, uint64_t* problems,
                                 char** report_out) {
  TVLAB_REQUIRE(csv_path);
  return Guard([&] {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) tvlab::Fail(tvlab::ErrorCode::kIoError, std::string("cannot open ") + csv_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const auto result = tvlab::harness::VerifyReport(buffer.str());
    if (rows != nullptr) *rows = result.rows;
    if (problems != nullptr) *problems = result.problems.size();
    if (report_out != nullptr) {
      std::string text;
      for (const auto& p : result.problems) text += p + "\n";
      *report_out = Dup(text);
    }
  });
}

}  // extern "C"
