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

// tvlab command-line runner. Links only the C interface.
//
//   tvlab run <config> [--seed N] [--trials N] [--threads N] [--out DIR] [--scale p/q]
//   tvlab list-experiments
//   tvlab verify <report.csv>
//
// Exit codes: 0 success / predicate holds, 1 predicate fails or verify found
// mismatches, 2 config error, 3 any other error. Errors are also written to
// stderr as a one-line JSON record.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tvlab/tvlab.h"

namespace {

constexpr int kExitPredicateFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitError = 3;

int ReportError(tvlab_status status, const std::string& message) {
  nlohmann::ordered_json record;
  record["error"] = tvlab_status_name(status);
  record["code"] = static_cast<int>(status);
  record["message"] = message;
  std::cerr << record.dump() << "\n";
  return status == TVLAB_CONFIG_ERROR || status == TVLAB_PARSE_ERROR ? kExitConfig : kExitError;
}

int Fail(tvlab_status status) { return ReportError(status, tvlab_last_error()); }

std::string TakeString(char* s) {
  std::string out = s == nullptr ? "" : s;
  tvlab_string_free(s);
  return out;
}

int RunCommand(const std::string& config_path, std::optional<std::uint64_t> seed,
               std::optional<std::uint64_t> trials, std::optional<std::uint64_t> threads,
               const std::optional<std::string>& scale, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) return ReportError(TVLAB_IO_ERROR, "cannot open config " + config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();

  tvlab_overrides overrides{};
  if (seed) overrides.seed = &*seed;
  if (trials) overrides.trials = &*trials;
  if (threads) overrides.threads = &*threads;
  if (scale) overrides.scale = scale->c_str();

  tvlab_run* run = nullptr;
  tvlab_status status =
      tvlab_run_experiment(buffer.str().c_str(), &overrides, out_dir.c_str(), &run);
  if (status != TVLAB_OK) return Fail(status);
  const bool passed = tvlab_run_passed(run) != 0;
  std::cout << "csv: " << tvlab_run_csv_path(run) << "\n"
            << "summary: " << tvlab_run_summary_path(run) << "\n";
  if (*tvlab_run_trace_path(run) != '\0') {
    std::cout << "trace: " << tvlab_run_trace_path(run) << "\n";
  }
  std::cout << "predicate: " << (passed ? "holds" : "fails") << "\n";
  tvlab_run_free(run);
  return passed ? 0 : kExitPredicateFailed;
}

int ListCommand() {
  char* text = nullptr;
  tvlab_status status = tvlab_list_experiments(&text);
  if (status != TVLAB_OK) return Fail(status);
  std::cout << TakeString(text);
  return 0;
}

int VerifyCommand(const std::string& csv_path) {
  std::uint64_t rows = 0;
  std::uint64_t problems = 0;
  char* report = nullptr;
  tvlab_status status = tvlab_verify_report(csv_path.c_str(), &rows, &problems, &report);
  if (status != TVLAB_OK) return Fail(status);
  std::cout << TakeString(report);
  std::cout << "verified " << rows << " rows, " << problems
            << (problems == 1 ? " problem\n" : " problems\n");
  return problems == 0 ? 0 : kExitPredicateFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tvlab: exact experiments on robust distribution learning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tvlab_version());

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> threads;
  std::optional<std::string> scale;
  std::string out_dir = ".";
  CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--threads", threads, "Override the worker count (0 = all cores)");
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--scale", scale, "Override the sample-size scale factor (p/q)");

  app.add_subcommand("list-experiments", "List experiment names");

  std::string csv_path;
  CLI::App* verify = app.add_subcommand("verify", "Recompute a report's errors from its log");
  verify->add_option("report", csv_path, "Report CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (app.got_subcommand("run")) {
    return RunCommand(config_path, seed, trials, threads, scale, out_dir);
  }
  if (app.got_subcommand("list-experiments")) return ListCommand();
  return VerifyCommand(csv_path);
}
