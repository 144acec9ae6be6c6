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

#ifndef TVLAB_HARNESS_REPORT_H_
#define TVLAB_HARNESS_REPORT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tvlab::harness {

// One per-trial CSV line. Column order is fixed:
// trial,n,output_label,error_num,error_den,error_decimal,success,micros
struct CsvRow {
  std::uint64_t trial = 0;
  std::uint64_t n = 0;
  std::string output_label;
  std::string error_num;
  std::string error_den;
  std::string error_decimal;
  bool success = false;
  std::uint64_t micros = 0;
};

inline constexpr std::string_view kCsvColumns =
    "trial,n,output_label,error_num,error_den,error_decimal,success,micros";

// Header comment block ("# ..." lines, canonical config between
// "# begin-config" and "# end-config"), the column line, then the rows.
std::string WriteCsv(std::string_view experiment, std::string_view canonical_config,
                     const std::vector<CsvRow>& rows);

struct ParsedCsv {
  std::string config_text;
  std::vector<CsvRow> rows;
};

// Throws ParseError on malformed input.
ParsedCsv ReadCsv(std::string_view text);

// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string CsvField(std::string_view value);

}  // namespace tvlab::harness

#endif  // TVLAB_HARNESS_REPORT_H_
