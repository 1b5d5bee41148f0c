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

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>

#include "wcr/errors.hpp"

namespace wcr {

/// An m-bit tag / pad, read as a polynomial over GF(2). Addition is XOR.
struct FieldElem {
  std::uint32_t value = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t v) : value(v) {}

  constexpr FieldElem operator^(FieldElem o) const { return FieldElem(value ^ o.value); }
  constexpr FieldElem& operator^=(FieldElem o) {
    value ^= o.value;
    return *this;
  }
  constexpr auto operator<=>(const FieldElem&) const = default;
};

namespace detail {

// Carry-less remainder of a by b (both as GF(2) polynomials, b != 0).
constexpr std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = static_cast<int>(std::bit_width(b)) - 1;
  while (a != 0 && static_cast<int>(std::bit_width(a)) - 1 >= db) {
    a ^= b << (std::bit_width(a) - 1 - db);
  }
  return a;
}

// Fixed moduli, index = degree. Entries for m = 2, 3, 4 and 8 are pinned so
// evaluation tables are reproducible bit for bit.
inline constexpr std::array<std::uint32_t, 17> kDefaultModuli = {
    0,
    0b11,                 // x + 1
    0b111,                // x^2 + x + 1
    0b1011,               // x^3 + x + 1
    0b10011,              // x^4 + x + 1
    0b100101,             // x^5 + x^2 + 1
    0b1000011,            // x^6 + x + 1
    0b10000011,           // x^7 + x + 1
    0x11B,                // x^8 + x^4 + x^3 + x + 1
    0x211,                // x^9 + x^4 + 1
    0x409,                // x^10 + x^3 + 1
    0x805,                // x^11 + x^2 + 1
    0x1053,               // x^12 + x^6 + x^4 + x + 1
    0x201B,               // x^13 + x^4 + x^3 + x + 1
    0x4443,               // x^14 + x^10 + x^6 + x + 1
    0x8003,               // x^15 + x + 1
    0x1100B,              // x^16 + x^12 + x^3 + x + 1
};

}  // namespace detail

/// True when `poly` (degree >= 1) has no factor of degree 1..deg/2.
constexpr bool is_irreducible(std::uint64_t poly) {
  const int deg = static_cast<int>(std::bit_width(poly)) - 1;
  if (deg < 1) return false;
  for (std::uint64_t d = 2; static_cast<int>(std::bit_width(d)) - 1 <= deg / 2; ++d) {
    if (detail::poly_mod(poly, d) == 0) return false;
  }
  return true;
}

/// GF(2^m) for 1 <= m <= 16.
class FieldCtx {
 public:
  static constexpr unsigned kMaxBits = 16;

  explicit FieldCtx(unsigned m) : FieldCtx(m, m >= 1 && m <= kMaxBits ? detail::kDefaultModuli[m] : 0) {}

  FieldCtx(unsigned m, std::uint32_t modulus) : m_(m), modulus_(modulus) {
    if (m < 1 || m > kMaxBits)
      throw DomainError("field bit-width must be in [1, 16], got " + std::to_string(m));
    if (static_cast<unsigned>(std::bit_width(modulus)) != m + 1)
      throw DomainError("modulus degree does not match m=" + std::to_string(m));
    if (!is_irreducible(modulus))
      throw DomainError("modulus " + std::to_string(modulus) + " is reducible over GF(2)");
  }

  unsigned bits() const noexcept { return m_; }
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << m_; }
  std::uint32_t mask() const noexcept { return size() - 1; }

  bool contains(FieldElem a) const noexcept { return a.value < size(); }

  FieldElem elem(std::uint32_t v) const {
    if (v >= size()) throw DomainError("value " + std::to_string(v) + " is not an element of GF(2^" + std::to_string(m_) + ")");
    return FieldElem(v);
  }

  /// Shift-and-add multiplication with reduction after every shift.
  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    std::uint32_t acc = 0;
    std::uint32_t x = a.value;
    std::uint32_t y = b.value;
    const std::uint32_t top = std::uint32_t{1} << m_;
    while (y != 0) {
      if (y & 1u) acc ^= x;
      y >>= 1;
      x <<= 1;
      if (x & top) x ^= modulus_;
    }
    return FieldElem(acc);
  }

  FieldElem pow(FieldElem a, std::uint64_t e) const noexcept {
    FieldElem r(1);
    while (e != 0) {
      if (e & 1u) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// a^(2^m - 2). Zero maps to zero.
  FieldElem inv(FieldElem a) const {
    if (a.value == 0) throw DomainError("zero has no multiplicative inverse");
    return pow(a, size() - 2);
  }

  bool operator==(const FieldCtx&) const = default;

 private:
  unsigned m_;
  std::uint32_t modulus_;
};

inline FieldElem field_mul(const FieldCtx& ctx, FieldElem a, FieldElem b) {
  if (!ctx.contains(a) || !ctx.contains(b)) throw DomainError("operand outside the field");
  return ctx.mul(a, b);
}

}  // namespace wcr
