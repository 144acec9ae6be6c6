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

#include "tvlab/error.h"

namespace tvlab {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kBadWeights: return "BadWeights";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kBadIndex: return "BadIndex";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kMassUnderflow: return "MassUnderflow";
    case ErrorCode::kDegenerateEta: return "DegenerateEta";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kSubsetBlowup: return "SubsetBlowup";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kBadMessage: return "BadMessage";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tvlab
