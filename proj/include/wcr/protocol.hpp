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

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "wcr/auth.hpp"
#include "wcr/hash_family.hpp"

namespace wcr {

/// A one-round authentication scheme over a single joint key index.
///
/// Encodings live in the space {0..message_count()-1} x {0..tag_count()-1}.
/// `recycled_key` is the part of the key handed back for reuse (nullopt when
/// the scheme recycles nothing; `recycled_key_count()` is then 1).
/// `kXtForm` says whether the encoding of x always has first component x.
template <class P>
concept AuthProtocol = requires(const P& p, KeyIndex key, MessageId x, const TaggedMessage& y) {
  { p.name() } -> std::convertible_to<std::string>;
  { p.message_count() } -> std::same_as<std::uint64_t>;
  { p.tag_count() } -> std::same_as<std::uint64_t>;
  { p.key_count() } -> std::same_as<std::uint64_t>;
  { p.recycled_key_count() } -> std::same_as<std::uint64_t>;
  { p.encode(key, x) } -> std::same_as<TaggedMessage>;
  { p.decode(key, y) } -> std::same_as<std::optional<MessageId>>;
  { p.recycled_key(key) } -> std::same_as<std::optional<KeyIndex>>;
  { P::kXtForm } -> std::convertible_to<bool>;
};

/// Wegman-Carter with a one-time-padded tag; k1 is recycled.
/// Joint key index = k1 * |T| + k2.
class RecyclingAuth {
 public:
  static constexpr bool kXtForm = true;

  explicit RecyclingAuth(HashFamily fam) : fam_(std::move(fam)) {}

  const HashFamily& family() const noexcept { return fam_; }
  std::string name() const { return "recycling(" + fam_.descriptor() + ")"; }
  std::uint64_t message_count() const { return fam_.message_count(); }
  std::uint64_t tag_count() const { return fam_.tag_count(); }
  std::uint64_t key_count() const { return saturating_mul(fam_.key_count(), fam_.tag_count()); }
  std::uint64_t recycled_key_count() const { return fam_.key_count(); }

  AuthKey split(KeyIndex key) const {
    return AuthKey{key / tag_count(), FieldElem(static_cast<std::uint32_t>(key % tag_count()))};
  }

  TaggedMessage encode(KeyIndex key, MessageId x) const { return authenticate(fam_, split(key), x); }
  std::optional<MessageId> decode(KeyIndex key, const TaggedMessage& y) const { return verify(fam_, split(key), y); }
  std::optional<KeyIndex> recycled_key(KeyIndex key) const { return key / tag_count(); }

 private:
  HashFamily fam_;
};

/// y = (x, h_k(x)); the whole key is consumed.
class StandardAuth {
 public:
  static constexpr bool kXtForm = true;

  explicit StandardAuth(HashFamily fam) : fam_(std::move(fam)) {}

  const HashFamily& family() const noexcept { return fam_; }
  std::string name() const { return "standard(" + fam_.descriptor() + ")"; }
  std::uint64_t message_count() const { return fam_.message_count(); }
  std::uint64_t tag_count() const { return fam_.tag_count(); }
  std::uint64_t key_count() const { return fam_.key_count(); }
  std::uint64_t recycled_key_count() const { return 1; }

  TaggedMessage encode(KeyIndex key, MessageId x) const { return authenticate(fam_, AuthKey{key, FieldElem(0)}, x); }
  std::optional<MessageId> decode(KeyIndex key, const TaggedMessage& y) const {
    return verify(fam_, AuthKey{key, FieldElem(0)}, y);
  }
  std::optional<KeyIndex> recycled_key(KeyIndex) const { return std::nullopt; }

 private:
  HashFamily fam_;
};

/// x in {0,1} is sent as (x ^ a, h_b(x ^ a)) with h the counterexample family
/// (h_b(0) = 0, h_b(1) uniform over nonzero tags). Joint key = a * (2^m - 1) + b.
/// Not of (x, t) form: the first component is masked.
class CounterexampleProtocol {
 public:
  static constexpr bool kXtForm = false;

  explicit CounterexampleProtocol(unsigned m) : fam_(HashFamily::counterexample(m)) {}

  const HashFamily& family() const noexcept { return fam_; }
  std::string name() const { return "masked(" + fam_.descriptor() + ")"; }
  std::uint64_t message_count() const { return 2; }
  std::uint64_t tag_count() const { return fam_.tag_count(); }
  std::uint64_t key_count() const { return 2 * fam_.key_count(); }
  std::uint64_t recycled_key_count() const { return 1; }

  TaggedMessage encode(KeyIndex key, MessageId x) const {
    if (x > 1) throw DomainError("masked protocol messages are single bits");
    const auto [mask, hkey] = split(key);
    const MessageId u = x ^ mask;
    return TaggedMessage{u, fam_.eval(hkey, u)};
  }

  std::optional<MessageId> decode(KeyIndex key, const TaggedMessage& y) const {
    if (y.x > 1) return std::nullopt;
    const auto [mask, hkey] = split(key);
    if (fam_.eval(hkey, y.x) != y.t) return std::nullopt;
    return y.x ^ mask;
  }

  std::optional<KeyIndex> recycled_key(KeyIndex) const { return std::nullopt; }

 private:
  std::pair<MessageId, KeyIndex> split(KeyIndex key) const {
    return {key / fam_.key_count(), key % fam_.key_count()};
  }

  HashFamily fam_;
};

inline CounterexampleProtocol counterexample_protocol(unsigned m) {
  if (m < 1) throw DomainError("counterexample protocol needs m >= 1");
  return CounterexampleProtocol(m);
}

static_assert(AuthProtocol<RecyclingAuth>);
static_assert(AuthProtocol<StandardAuth>);
static_assert(AuthProtocol<CounterexampleProtocol>);

}  // namespace wcr
