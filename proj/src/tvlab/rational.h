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

#ifndef TVLAB_RATIONAL_H_
#define TVLAB_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tvlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "7", "3/16", "0.15" and "1e-3"; every form is converted exactly.
Rational ParseRational(std::string_view text);

// Always "num/den", including integers ("1/1").
std::string FormatRational(const Rational& value);

// Fixed 12-digit decimal rendering, stable across runs.
std::string FormatDecimal(const Rational& value);

double ToDouble(const Rational& value);

// Doubles are dyadic rationals, so this is exact.
Rational FromDouble(double value);

// Ceiling of a nonnegative rational; throws BadParams if it exceeds 2^64-1.
std::uint64_t CeilToU64(const Rational& value);

// Ceiling of a nonnegative double, with the same overflow check.
std::uint64_t CeilToU64(double value);

}  // namespace tvlab

#endif  // TVLAB_RATIONAL_H_
