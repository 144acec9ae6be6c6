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

// C interface to the tvlab library. All handles are opaque; every call that
// can fail returns a tvlab_status and records a message retrievable with
// tvlab_last_error() on the calling thread. Strings returned through out
// parameters are owned by the caller and released with tvlab_string_free().

#ifndef TVLAB_TVLAB_H_
#define TVLAB_TVLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TVLAB_BUILDING_LIBRARY)
#define TVLAB_API __attribute__((visibility("default")))
#else
#define TVLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tvlab_status {
  TVLAB_OK = 0,
  TVLAB_EMPTY_SET = 1,
  TVLAB_BAD_WEIGHTS = 2,
  TVLAB_BAD_PARAMS = 3,
  TVLAB_BAD_INDEX = 4,
  TVLAB_TOO_LARGE = 5,
  TVLAB_MASS_UNDERFLOW = 6,
  TVLAB_DEGENERATE_ETA = 7,
  TVLAB_EMPTY_LIST = 8,
  TVLAB_EMPTY_SAMPLE = 9,
  TVLAB_SUBSET_BLOWUP = 10,
  TVLAB_INSUFFICIENT_SAMPLE = 11,
  TVLAB_BAD_MESSAGE = 12,
  TVLAB_EMPTY_CLASS = 13,
  TVLAB_CONFIG_ERROR = 14,
  TVLAB_PARSE_ERROR = 15,
  TVLAB_IO_ERROR = 16,
  TVLAB_INTERNAL = 17,
  TVLAB_NULL_ARGUMENT = 18,
} tvlab_status;

typedef struct tvlab_dist tvlab_dist;
typedef struct tvlab_run tvlab_run;

// Message for the last failed call on this thread ("" if none).
TVLAB_API const char* tvlab_last_error(void);
// Symbolic name of a status, e.g. "ConfigError".
TVLAB_API const char* tvlab_status_name(tvlab_status status);
TVLAB_API const char* tvlab_version(void);

TVLAB_API void tvlab_string_free(char* s);

// ---- distributions --------------------------------------------------------

// Accepts the line form ("a b p/q" per line) and the inline form
// ("{a b p/q; ...}"), as well as report labels ("q(5,4,16)", "dirac(0,0)").
TVLAB_API tvlab_status tvlab_dist_parse(const char* text, tvlab_dist** out);
TVLAB_API tvlab_status tvlab_dist_dirac(uint64_t a, uint64_t b, tvlab_dist** out);
TVLAB_API tvlab_status tvlab_dist_qijk(uint64_t i, uint64_t j, uint64_t k, tvlab_dist** out);
TVLAB_API void tvlab_dist_free(tvlab_dist* d);

TVLAB_API size_t tvlab_dist_size(const tvlab_dist* d);
// Line form, exact weights.
TVLAB_API tvlab_status tvlab_dist_format(const tvlab_dist* d, char** out);
// Short report label.
TVLAB_API tvlab_status tvlab_dist_label(const tvlab_dist* d, char** out);
// Exact total variation distance as "num/den".
TVLAB_API tvlab_status tvlab_dist_tv(const tvlab_dist* p, const tvlab_dist* q, char** out);

// ---- experiments ----------------------------------------------------------

// Newline-separated "name<TAB>description" lines.
TVLAB_API tvlab_status tvlab_list_experiments(char** out);

// Validates a config document; on failure the message lists every problem.
TVLAB_API tvlab_status tvlab_validate_config(const char* config_text, char** canonical_out);

// Overrides applied after validation. A null pointer keeps the config value.
typedef struct tvlab_overrides {
  const uint64_t* seed;
  const uint64_t* trials;
  const uint64_t* threads;
  const char* scale;  // rational text
} tvlab_overrides;

// Runs an experiment and writes its reports into out_dir (created if
// missing). overrides may be null.
TVLAB_API tvlab_status tvlab_run_experiment(const char* config_text,
                                            const tvlab_overrides* overrides,
                                            const char* out_dir, tvlab_run** out);
TVLAB_API int tvlab_run_passed(const tvlab_run* run);
TVLAB_API const char* tvlab_run_summary_json(const tvlab_run* run);
TVLAB_API const char* tvlab_run_csv_path(const tvlab_run* run);
TVLAB_API const char* tvlab_run_summary_path(const tvlab_run* run);
// "" when the experiment has no selection trace.
TVLAB_API const char* tvlab_run_trace_path(const tvlab_run* run);
TVLAB_API void tvlab_run_free(tvlab_run* run);

// Recomputes every row of a report CSV from its logged output label and
// embedded config. *problems receives the number of disagreements (rows
// whose error or success flag differs, plus structural problems such as a
// wrong row count); *report_out (optional) lists them, one per line.
TVLAB_API tvlab_status tvlab_verify_report(const char* csv_path, uint64_t* rows,
                                           uint64_t* problems, char** report_out);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // TVLAB_TVLAB_H_
