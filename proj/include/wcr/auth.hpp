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

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wcr/errors.hpp"
#include "wcr/hash_family.hpp"

namespace wcr {

/// k1 selects the hash function and is recycled; k2 is the one-time pad.
struct AuthKey {
  KeyIndex k1 = 0;
  FieldElem k2;
  bool operator==(const AuthKey&) const = default;
};

/// y = (x, t).
struct TaggedMessage {
  MessageId x = 0;
  FieldElem t;
  auto operator<=>(const TaggedMessage&) const = default;
};

inline void check_key(const HashFamily& fam, const AuthKey& key) {
  if (key.k1 >= fam.key_count())
    throw DomainError("k1 = " + std::to_string(key.k1) + " outside key space of size " + std::to_string(fam.key_count()));
  if (key.k2.value >= fam.tag_count())
    throw DomainError("pad k2 = " + std::to_string(key.k2.value) + " wider than " + std::to_string(fam.tag_bits()) + " bits");
}

/// (x, h_{k1}(x) ^ k2).
inline TaggedMessage authenticate(const HashFamily& fam, const AuthKey& key, MessageId x) {
  check_key(fam, key);
  return TaggedMessage{x, fam.eval(key.k1, x) ^ key.k2};
}

/// The receiver's decision: the message on acceptance, nullopt for ⊥.
/// The hash is always evaluated before the comparison; a message outside X
/// is rejected, not an error.
inline std::optional<MessageId> verify(const HashFamily& fam, const AuthKey& key, const TaggedMessage& y) {
  check_key(fam, key);
  if (y.x >= fam.message_count()) return std::nullopt;
  const FieldElem expected = fam.eval_unchecked(key.k1, y.x) ^ key.k2;
  if (expected == y.t) return y.x;
  return std::nullopt;
}

class KeyStreamExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// One recycled k1 plus caller-supplied pads, each handed out once.
class KeyStream {
 public:
  KeyStream(const HashFamily& fam, KeyIndex k1, std::vector<FieldElem> pads)
      : k1_(k1), tag_bits_(fam.tag_bits()), pads_(std::move(pads)) {
    for (auto p : pads_) check_key(fam, AuthKey{k1_, p});
    if (pads_.empty()) check_key(fam, AuthKey{k1_, FieldElem(0)});
  }

  AuthKey next() {
    if (cursor_ >= pads_.size())
      throw KeyStreamExhausted("key stream exhausted after " + std::to_string(cursor_) + " rounds");
    return AuthKey{k1_, pads_[cursor_++]};
  }

  KeyIndex k1() const noexcept { return k1_; }
  std::size_t rounds_used() const noexcept { return cursor_; }
  std::size_t rounds_left() const noexcept { return pads_.size() - cursor_; }

  /// Pad bits consumed so far; the recycled k1 is not counted.
  std::uint64_t consumed_bits() const noexcept { return std::uint64_t{cursor_} * tag_bits_; }

 private:
  KeyIndex k1_;
  unsigned tag_bits_;
  std::vector<FieldElem> pads_;
  std::size_t cursor_ = 0;
};

inline AuthKey stream_next(KeyStream& ks) { return ks.next(); }

// Wire form: the message index big-endian in message_bytes() bytes, then the
// tag big-endian in ceil(m / 8) bytes.

inline std::size_t message_bytes(const HashFamily& fam) {
  const auto bits = static_cast<std::size_t>(std::bit_width(fam.message_count() - 1));
  return std::max<std::size_t>(1, (bits + 7) / 8);
}

inline std::size_t tag_bytes(const HashFamily& fam) { return (fam.tag_bits() + 7) / 8; }

inline std::vector<std::uint8_t> encode_wire(const HashFamily& fam, const TaggedMessage& y) {
  if (y.x >= fam.message_count()) throw DomainError("message outside message space");
  if (y.t.value >= fam.tag_count()) throw DomainError("tag wider than the tag space");
  std::vector<std::uint8_t> out;
  const auto mb = message_bytes(fam);
  for (std::size_t i = mb; i-- > 0;) out.push_back(static_cast<std::uint8_t>(y.x >> (8 * i)));
  const auto tb = tag_bytes(fam);
  for (std::size_t i = tb; i-- > 0;) out.push_back(static_cast<std::uint8_t>(y.t.value >> (8 * i)));
  return out;
}

inline TaggedMessage decode_wire(const HashFamily& fam, std::span<const std::uint8_t> bytes) {
  const auto mb = message_bytes(fam);
  const auto tb = tag_bytes(fam);
  if (bytes.size() != mb + tb)
    throw DomainError("wire form must be " + std::to_string(mb + tb) + " bytes, got " + std::to_string(bytes.size()));
  TaggedMessage y;
  for (std::size_t i = 0; i < mb; ++i) y.x = (y.x << 8) | bytes[i];
  std::uint32_t t = 0;
  for (std::size_t i = 0; i < tb; ++i) t = (t << 8) | bytes[mb + i];
  y.t = FieldElem(t);
  if (y.x >= fam.message_count()) throw DomainError("decoded message outside message space");
  if (y.t.value >= fam.tag_count()) throw DomainError("decoded tag wider than the tag space");
  return y;
}

}  // namespace wcr
