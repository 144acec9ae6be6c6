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

#ifndef TVLAB_HARNESS_EXPERIMENTS_H_
#define TVLAB_HARNESS_EXPERIMENTS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvlab/harness/config.h"

namespace tvlab::harness {

struct ExperimentInfo {
  std::string name;
  std::string description;
};

const std::vector<ExperimentInfo>& Experiments();
bool IsKnownExperiment(std::string_view name);

// Fills experiment-specific defaults (epsilon, delta, ...) and checks the
// family/adversary combination. Throws ConfigError. Called by
// ValidateConfig, so a validated config is always resolved.
void ResolveDefaults(ExperimentConfig& config);

// In-memory result of a run.
struct Report {
  bool passed = false;
  std::string csv;          // per-trial rows, config echoed in the header
  std::string summary_json; // derived from the rows
  std::string trace_jsonl;  // selection traces, empty if the learner has none
};

// Runs the configured campaign. Module errors propagate as tvlab::Error.
Report ExecuteExperiment(const ExperimentConfig& config);

struct RunResult {
  Report report;
  std::string csv_path;
  std::string summary_path;
  std::string trace_path;  // empty when no trace was written
};

// ExecuteExperiment, then writes <out_dir>/<name>.csv, <name>.summary.json
// and, when present, <name>.trace.jsonl. Throws IoError.
RunResult RunExperiment(const ExperimentConfig& config, const std::string& out_dir);

struct VerifyResult {
  std::uint64_t rows = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> problems;

  bool ok() const { return mismatches == 0 && problems.empty(); }
};

// Re-derives every row's error and success flag from its logged output
// label and the config embedded in the CSV header.
VerifyResult VerifyReport(std::string_view csv_text);

}  // namespace tvlab::harness

#endif  // TVLAB_HARNESS_EXPERIMENTS_H_
