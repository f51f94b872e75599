// Copyright 2026 The infoagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFOAGG_RATIONAL_H_
#define INFOAGG_RATIONAL_H_

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace infoagg {

// All quantities in this library are exact rationals kept in lowest terms
// with a positive denominator; cpp_rational maintains that canonical form.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Malformed or semantically invalid input data.
class ValueError : public std::runtime_error {
 public:
  explicit ValueError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration request larger than the configured cap. `required` is the
// number of items the exhaustive search would have to visit.
class CapExceededError : public std::runtime_error {
 public:
  CapExceededError(const std::string& what, long long required)
      : std::runtime_error(what), required(required) {}
  long long required;
};

// Parses "p/q", an optionally signed integer, or a plain decimal such as
// "0.25". No whitespace, exponents, or leading '.' are accepted.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  auto fail = [&]() -> Rational {
    throw ValueError("not a rational number: \"" + s + "\"");
  };

  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    negative = s[pos] == '-';
    ++pos;
  }
  std::size_t digits_start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits_start) return fail();
  BigInt numerator(s.substr(digits_start, pos - digits_start));
  BigInt denominator = 1;

  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    std::size_t den_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == den_start || pos != s.size()) return fail();
    denominator = BigInt(s.substr(den_start));
    if (denominator == 0) throw ValueError("zero denominator: \"" + s + "\"");
  } else if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t frac_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == frac_start || pos != s.size()) return fail();
    for (std::size_t i = frac_start; i < s.size(); ++i) {
      numerator = numerator * 10 + (s[i] - '0');
      denominator *= 10;
    }
  } else if (pos != s.size()) {
    return fail();
  }

  Rational r(numerator, denominator);
  if (negative) r = -r;
  return r;
}

// Lowest-terms text form; integers print without a denominator.
inline std::string format_rational(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) {
    out += '/';
    out += denominator(r).str();
  }
  return out;
}

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace infoagg

#endif  // INFOAGG_RATIONAL_H_
