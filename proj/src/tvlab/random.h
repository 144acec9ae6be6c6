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

#ifndef TVLAB_RANDOM_H_
#define TVLAB_RANDOM_H_

#include <cstdint>
#include <random>

namespace tvlab {

std::uint64_t SplitMix64(std::uint64_t x);

// (master, stream) fully determines a random sequence. Child streams use a
// counter scheme: Child(k) keeps the master and replaces the stream with
// SplitMix64(stream + (k + 1) * 0x9E3779B97F4A7C15). Trial t of an experiment
// runs on Seed{master, 0}.Child(t).
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  Seed Child(std::uint64_t index) const;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Bit-reproducible generator. All derived draws (bounded integers, doubles,
// Laplace variates) are computed here rather than through <random>
// distributions, whose outputs differ between standard libraries.
class Rng {
 public:
  explicit Rng(const Seed& seed);

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, bound). bound must be positive.
  std::uint64_t Below(std::uint64_t bound);

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();

  // Laplace(0, scale) by inversion.
  double Laplace(double scale);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tvlab

#endif  // TVLAB_RANDOM_H_
