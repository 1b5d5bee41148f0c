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

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "wcr/rational.hpp"

namespace wcr {

/// An exact real of the form sum_p c_p * log2(p) over primes p with rational
/// coefficients. log2 of distinct primes are linearly independent over Q, so
/// equality of the coefficient maps is equality of the reals.
class Log2Sum {
 public:
  Log2Sum() = default;

  /// coeff * log2(arg), arg > 0 with numerator and denominator below 2^63.
  static Log2Sum term(const Rational& coeff, const Rational& arg) {
    Log2Sum s;
    s.add_log2(coeff, arg);
    return s;
  }

  void add_log2(const Rational& coeff, const Rational& arg) {
    if (arg <= 0) throw std::domain_error("log2 of a non-positive value");
    if (coeff == 0) return;
    factor_into(boost::multiprecision::numerator(arg), coeff);
    factor_into(boost::multiprecision::denominator(arg), -coeff);
  }

  Log2Sum& operator+=(const Log2Sum& o) {
    for (const auto& [p, c] : o.coeffs_) accumulate(p, c);
    return *this;
  }

  friend Log2Sum operator+(Log2Sum a, const Log2Sum& b) { return a += b; }

  Log2Sum scaled(const Rational& k) const {
    Log2Sum s;
    if (k == 0) return s;
    for (const auto& [p, c] : coeffs_) s.coeffs_[p] = c * k;
    return s;
  }

  double value() const {
    double v = 0.0;
    for (const auto& [p, c] : coeffs_) v += to_double(c) * std::log2(static_cast<double>(p));
    return v;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// e.g. "3/2*log2(2)+1/2*log2(3)", or "0".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : coeffs_) {
      if (!s.empty()) s += "+";
      s += wcr::to_string(c) + "*log2(" + std::to_string(p) + ")";
    }
    return s;
  }

  bool operator==(const Log2Sum&) const = default;

 private:
  void accumulate(std::uint64_t prime, const Rational& c) {
    auto& slot = coeffs_[prime];
    slot += c;
    if (slot == 0) coeffs_.erase(prime);
  }

  void factor_into(const BigInt& n, const Rational& coeff) {
    if (n > BigInt(INT64_MAX)) throw std::domain_error("log2 argument too large to factor");
    auto v = n.convert_to<std::uint64_t>();
    for (std::uint64_t p = 2; p * p <= v; ++p) {
      while (v % p == 0) {
        accumulate(p, coeff);
        v /= p;
      }
    }
    if (v > 1) accumulate(v, coeff);
  }

  std::map<std::uint64_t, Rational> coeffs_;
};

}  // namespace wcr
