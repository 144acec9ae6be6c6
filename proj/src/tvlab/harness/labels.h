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

#ifndef TVLAB_HARNESS_LABELS_H_
#define TVLAB_HARNESS_LABELS_H_

#include <string>
#include <string_view>

#include "tvlab/dist.h"

namespace tvlab::harness {

// Self-contained report label: "dirac(a,b)" for atoms, "q(i,j,k)" for
// members of the q_{i,j,k} construction, the inline "{a b w; ...}" form
// otherwise.
std::string LabelOf(const Dist& d);

// Inverse of LabelOf; also accepts "qprime(i,j,k)" and
// "packing(gamma,j,{a,b,...})". Throws ParseError.
Dist ParseLabel(std::string_view label);

}  // namespace tvlab::harness

#endif  // TVLAB_HARNESS_LABELS_H_
