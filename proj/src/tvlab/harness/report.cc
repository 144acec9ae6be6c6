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

#include "tvlab/harness/report.h"

#include <charconv>

#include "tvlab/error.h"

namespace tvlab::harness {
namespace {

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          current += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) Fail(ErrorCode::kParseError, "unterminated quote in CSV row");
  fields.push_back(std::move(current));
  return fields;
}

std::uint64_t ToU64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    Fail(ErrorCode::kParseError, "bad integer field '" + s + "'");
  }
  return v;
}

}  // namespace

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string WriteCsv(std::string_view experiment, std::string_view canonical_config,
                     const std::vector<CsvRow>& rows) {
  std::string out = "# tvlab report v1\n# experiment = ";
  out += experiment;
  out += "\n# begin-config\n";
  std::size_t start = 0;
  while (start < canonical_config.size()) {
    std::size_t end = canonical_config.find('\n', start);
    if (end == std::string_view::npos) end = canonical_config.size();
    out += "# ";
    out += canonical_config.substr(start, end - start);
    out += "\n";
    start = end + 1;
  }
  out += "# end-config\n";
  out += kCsvColumns;
  out += "\n";
  for (const CsvRow& r : rows) {
    out += std::to_string(r.trial) + "," + std::to_string(r.n) + "," +
           CsvField(r.output_label) + "," + r.error_num + "," + r.error_den + "," +
           r.error_decimal + "," + (r.success ? "1" : "0") + "," + std::to_string(r.micros) +
           "\n";
  }
  return out;
}

ParsedCsv ReadCsv(std::string_view text) {
  ParsedCsv parsed;
  bool in_config = false;
  bool saw_columns = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = line.size() >= 2 ? line.substr(2) : std::string_view();
      if (body == "begin-config") {
        in_config = true;
      } else if (body == "end-config") {
        in_config = false;
      } else if (in_config) {
        parsed.config_text += std::string(body) + "\n";
      }
      continue;
    }
    if (!saw_columns) {
      if (line != kCsvColumns) Fail(ErrorCode::kParseError, "unexpected CSV column header");
      saw_columns = true;
      continue;
    }
    auto fields = SplitCsvLine(line);
    if (fields.size() != 8) {
      Fail(ErrorCode::kParseError, "CSV row has " + std::to_string(fields.size()) + " fields");
    }
    CsvRow row;
    row.trial = ToU64(fields[0]);
    row.n = ToU64(fields[1]);
    row.output_label = fields[2];
    row.error_num = fields[3];
    row.error_den = fields[4];
    row.error_decimal = fields[5];
    if (fields[6] != "0" && fields[6] != "1") {
      Fail(ErrorCode::kParseError, "success must be 0 or 1");
    }
    row.success = fields[6] == "1";
    row.micros = ToU64(fields[7]);
    parsed.rows.push_back(std::move(row));
  }
  if (!saw_columns) Fail(ErrorCode::kParseError, "no CSV column header found");
  if (parsed.config_text.empty()) Fail(ErrorCode::kParseError, "report has no embedded config");
  return parsed;
}

}  // namespace tvlab::harness
