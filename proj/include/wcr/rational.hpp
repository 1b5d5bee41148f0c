/*
 *   Copyright 2026 The wcr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace wcr {

/// Exact probability / distance value. Arbitrary precision on both sides.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Canonical "num/den" form. Integers keep the "/1" so every value has the
/// same shape on the wire.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Parses "num/den" or a bare integer.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9')
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    return BigInt(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace wcr
