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

#ifndef TVLAB_ADVERSARY_H_
#define TVLAB_ADVERSARY_H_

#include "tvlab/dist.h"
#include "tvlab/rational.h"

namespace tvlab {

// Corruption budget eta with 0 <= eta < 1. Of() throws DegenerateEta for
// eta == 1 and BadParams for anything else outside the range.
class CorruptionLevel {
 public:
  static CorruptionLevel Of(const Rational& eta);

  const Rational& eta() const { return eta_; }

 private:
  explicit CorruptionLevel(Rational eta) : eta_(std::move(eta)) {}

  Rational eta_;
};

// eta r + (1 - eta) p.
Dist HuberContaminate(const Dist& p, const Dist& r, const CorruptionLevel& eta);

// (q - eta removed) / (1 - eta). Throws MassUnderflow unless
// eta * removed(x) <= q(x) for every x.
Dist SubtractComponent(const Dist& q, const Dist& removed, const CorruptionLevel& eta);

struct Corruption {
  Dist dist;
  // eta_add + eta_remove; an upper bound on tv(dist, q).
  Rational displacement_bound;
};

// Subtract first, then contaminate.
Corruption GeneralCorrupt(const Dist& q, const Dist& add, const Dist& remove,
                          const CorruptionLevel& eta_add, const CorruptionLevel& eta_remove);

}  // namespace tvlab

#endif  // TVLAB_ADVERSARY_H_
