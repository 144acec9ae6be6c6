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

#include "tvlab/rational.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tvlab/error.h"

namespace tvlab {
namespace {

BigInt ParseDigits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    Fail(ErrorCode::kParseError, "malformed number '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      Fail(ErrorCode::kParseError,
           "malformed number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt Pow10(unsigned exponent) {
  BigInt p = 1;
  for (unsigned k = 0; k < exponent; ++k) p *= 10;
  return p;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const std::string_view whole = Trim(text);
  std::string_view s = whole;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = ParseDigits(s.substr(0, slash), whole);
    BigInt den = ParseDigits(s.substr(slash + 1), whole);
    if (den == 0) {
      Fail(ErrorCode::kParseError, "zero denominator in '" + std::string(whole) + "'");
    }
    value = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_part = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_negative = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (exp_part.empty() || exp_part.size() > 4) {
        Fail(ErrorCode::kParseError, "bad exponent in '" + std::string(whole) + "'");
      }
      exponent = static_cast<long>(ParseDigits(exp_part, whole));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = s.substr(0, dot);
      std::string_view frac_part = s.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) {
        Fail(ErrorCode::kParseError, "malformed number '" + std::string(whole) + "'");
      }
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    } else {
      digits = std::string(s);
    }
    BigInt mantissa = ParseDigits(digits, whole);
    if (exponent >= 0) {
      value = Rational(mantissa * Pow10(static_cast<unsigned>(exponent)));
    } else {
      value = Rational(mantissa, Pow10(static_cast<unsigned>(-exponent)));
    }
  }
  return negative ? Rational(-value) : value;
}

std::string FormatRational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string FormatDecimal(const Rational& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12f", ToDouble(value));
  return buffer;
}

double ToDouble(const Rational& value) {
  return value.convert_to<double>();
}

Rational FromDouble(double value) {
  if (!std::isfinite(value)) {
    Fail(ErrorCode::kBadParams, "non-finite value has no rational form");
  }
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an exact integer for IEEE doubles.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num = scaled;
  if (exponent >= 0) {
    return Rational(num << exponent);
  }
  return Rational(num, BigInt(1) << -exponent);
}

std::uint64_t CeilToU64(const Rational& value) {
  if (value < 0) Fail(ErrorCode::kBadParams, "negative size");
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q = (num + den - 1) / den;
  if (q > std::numeric_limits<std::uint64_t>::max()) {
    Fail(ErrorCode::kBadParams, "size overflows 64 bits");
  }
  return q.convert_to<std::uint64_t>();
}

std::uint64_t CeilToU64(double value) {
  if (!(value >= 0.0)) Fail(ErrorCode::kBadParams, "negative or NaN size");
  double c = std::ceil(value);
  if (c >= 18446744073709551616.0) {
    Fail(ErrorCode::kBadParams, "size overflows 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace tvlab
