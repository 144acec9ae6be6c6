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

#ifndef TVLAB_ERROR_H_
#define TVLAB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvlab {

// Failure categories shared by every module. The C API maps these one-to-one
// onto tvlab_status values, so the numbering is part of the ABI.
enum class ErrorCode {
  kEmptySet = 1,
  kBadWeights = 2,
  kBadParams = 3,
  kBadIndex = 4,
  kTooLarge = 5,
  kMassUnderflow = 6,
  kDegenerateEta = 7,
  kEmptyList = 8,
  kEmptySample = 9,
  kSubsetBlowup = 10,
  kInsufficientSample = 11,
  kBadMessage = 12,
  kEmptyClass = 13,
  kConfigError = 14,
  kParseError = 15,
  kIoError = 16,
  kInternal = 17,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace tvlab

#endif  // TVLAB_ERROR_H_
