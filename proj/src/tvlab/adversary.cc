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

#include "tvlab/adversary.h"

#include <map>
#include <utility>
#include <vector>

#include "tvlab/error.h"

namespace tvlab {

CorruptionLevel CorruptionLevel::Of(const Rational& eta) {
  if (eta == 1) Fail(ErrorCode::kDegenerateEta, "corruption level eta = 1");
  if (eta < 0 || eta > 1) {
    Fail(ErrorCode::kBadParams, "corruption level " + FormatRational(eta) + " outside [0, 1)");
  }
  return CorruptionLevel(eta);
}

Dist HuberContaminate(const Dist& p, const Dist& r, const CorruptionLevel& eta) {
  const std::vector<std::pair<Rational, Dist>> parts{{eta.eta(), r}, {1 - eta.eta(), p}};
  return Mix(parts);
}

Dist SubtractComponent(const Dist& q, const Dist& removed, const CorruptionLevel& eta) {
  if (eta.eta() == 0) return q;
  std::map<DomainPoint, Rational> weights;
  for (const auto& [x, w] : q.atoms()) weights.emplace(x, w);
  for (const auto& [x, w] : removed.atoms()) {
    Rational& slot = weights[x];
    slot -= eta.eta() * w;
    if (slot < 0) {
      Fail(ErrorCode::kMassUnderflow, "removed mass exceeds q at " + ToString(x));
    }
  }
  const Rational scale = 1 / (1 - eta.eta());
  for (auto& [x, w] : weights) w *= scale;
  return Dist::FromWeights(weights);
}

Corruption GeneralCorrupt(const Dist& q, const Dist& add, const Dist& remove,
                          const CorruptionLevel& eta_add, const CorruptionLevel& eta_remove) {
  Dist subtracted = SubtractComponent(q, remove, eta_remove);
  return Corruption{HuberContaminate(subtracted, add, eta_add),
                    eta_add.eta() + eta_remove.eta()};
}

}  // namespace tvlab
