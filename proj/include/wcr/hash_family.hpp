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

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "wcr/errors.hpp"
#include "wcr/field.hpp"

namespace wcr {

using KeyIndex = std::uint64_t;
using MessageId = std::uint64_t;

/// A finite keyed family {h_k : X -> {0,1}^m}. Keys and messages are dense
/// indices; the kind decides how an index maps to a function / a message.
///
///  - Mul:            h_k(x) = k*x in GF(2^m), X = K = GF(2^m)
///  - Poly:           h_k(x_1..x_L) = sum_i x_i k^i, no constant term
///  - Toeplitz:       h_k(x) = T_k x over GF(2), T_k built from n+m-1 key bits
///  - Table:          explicit |K| x |X| tag table
///  - Counterexample: X = {0,1}, h_k(0) = 0, h_k(1) = k + 1 ranges over the
///                    nonzero tags as k ranges over 2^m - 1 keys
///  - Lifted:         g_{k1,k2}(x) = h_{k1}(x) ^ k2, key index k1*|T| + k2
class HashFamily {
 public:
  struct Mul {
    FieldCtx field;
  };
  struct Poly {
    FieldCtx field;
    unsigned blocks;
  };
  struct Toeplitz {
    unsigned n;
    unsigned m;
  };
  struct Table {
    unsigned m;
    std::uint64_t keys;
    std::vector<std::string> messages;  // labels, one per column
    std::vector<std::uint32_t> tags;    // row-major, keys x messages
    std::string source;                 // file path, or empty for inline tables
  };
  struct Counterexample {
    unsigned m;
  };
  struct Lifted {
    std::shared_ptr<const HashFamily> base;
  };
  using Kind = std::variant<Mul, Poly, Toeplitz, Table, Counterexample, Lifted>;

  static HashFamily mul(unsigned m) { return HashFamily(Mul{FieldCtx(m)}); }

  static HashFamily poly(unsigned m, unsigned blocks) {
    if (blocks < 1) throw DomainError("poly family needs at least one block");
    if (m * blocks > 32) throw DomainError("poly family message space exceeds 2^32");
    return HashFamily(Poly{FieldCtx(m), blocks});
  }

  static HashFamily toeplitz(unsigned n, unsigned m) {
    if (n < 1 || m < 1 || m > FieldCtx::kMaxBits || n > 32)
      throw DomainError("toeplitz family needs 1 <= n <= 32 and 1 <= m <= 16");
    return HashFamily(Toeplitz{n, m});
  }

  static HashFamily counterexample(unsigned m) {
    if (m < 1 || m > FieldCtx::kMaxBits) throw DomainError("counterexample family needs 1 <= m <= 16");
    return HashFamily(Counterexample{m});
  }

  /// `tags` is row-major: tags[k * messages.size() + x].
  static HashFamily table(unsigned m, std::uint64_t keys, std::vector<std::string> messages,
                          std::vector<std::uint32_t> tags, std::string source = {}) {
    if (m < 1 || m > FieldCtx::kMaxBits) throw DomainError("table tag width must be in [1, 16]");
    if (keys == 0 || messages.empty()) throw DomainError("table family needs at least one key and one message");
    if (tags.size() != keys * messages.size())
      throw DomainError("table has " + std::to_string(tags.size()) + " tags, expected " +
                        std::to_string(keys * messages.size()));
    for (auto t : tags) {
      if (t >> m) throw DomainError("table tag " + std::to_string(t) + " does not fit in " + std::to_string(m) + " bits");
    }
    return HashFamily(Table{m, keys, std::move(messages), std::move(tags), std::move(source)});
  }

  static HashFamily lifted(HashFamily base) {
    return HashFamily(Lifted{std::make_shared<const HashFamily>(std::move(base))});
  }

  const Kind& kind() const noexcept { return kind_; }

  unsigned tag_bits() const {
    return std::visit(
        [](const auto& k) -> unsigned {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Mul> || std::is_same_v<K, Poly>) return k.field.bits();
          else if constexpr (std::is_same_v<K, Lifted>) return k.base->tag_bits();
          else return k.m;
        },
        kind_);
  }

  std::uint64_t tag_count() const { return std::uint64_t{1} << tag_bits(); }

  std::uint64_t key_count() const {
    return std::visit(
        [](const auto& k) -> std::uint64_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Mul> || std::is_same_v<K, Poly>) return k.field.size();
          else if constexpr (std::is_same_v<K, Toeplitz>) return std::uint64_t{1} << (k.n + k.m - 1);
          else if constexpr (std::is_same_v<K, Table>) return k.keys;
          else if constexpr (std::is_same_v<K, Counterexample>) return (std::uint64_t{1} << k.m) - 1;
          else return saturating_mul(k.base->key_count(), k.base->tag_count());
        },
        kind_);
  }

  std::uint64_t message_count() const {
    return std::visit(
        [](const auto& k) -> std::uint64_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Mul>) return k.field.size();
          else if constexpr (std::is_same_v<K, Poly>) return std::uint64_t{1} << (k.field.bits() * k.blocks);
          else if constexpr (std::is_same_v<K, Toeplitz>) return std::uint64_t{1} << k.n;
          else if constexpr (std::is_same_v<K, Table>) return k.messages.size();
          else if constexpr (std::is_same_v<K, Counterexample>) return 2;
          else return k.base->message_count();
        },
        kind_);
  }

  /// Checked evaluation.
  FieldElem eval(KeyIndex key, MessageId x) const {
    if (key >= key_count())
      throw DomainError("key " + std::to_string(key) + " outside key space of size " + std::to_string(key_count()));
    if (x >= message_count())
      throw DomainError("message " + std::to_string(x) + " outside message space of size " +
                        std::to_string(message_count()));
    return eval_unchecked(key, x);
  }

  /// Evaluation without range checks; callers iterate over valid ranges.
  FieldElem eval_unchecked(KeyIndex key, MessageId x) const {
    return std::visit(
        [&](const auto& k) -> FieldElem {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Mul>) {
            return k.field.mul(FieldElem(static_cast<std::uint32_t>(key)), FieldElem(static_cast<std::uint32_t>(x)));
          } else if constexpr (std::is_same_v<K, Poly>) {
            // Horner from the highest block: (((x_L k + x_{L-1}) k + ...) + x_1) k
            const unsigned m = k.field.bits();
            const FieldElem kk(static_cast<std::uint32_t>(key));
            FieldElem acc;
            for (unsigned i = k.blocks; i-- > 0;) {
              acc ^= FieldElem(static_cast<std::uint32_t>((x >> (i * m)) & k.field.mask()));
              acc = k.field.mul(acc, kk);
            }
            return acc;
          } else if constexpr (std::is_same_v<K, Toeplitz>) {
            // T[i][j] = key bit (i - j + n - 1).
            // Row i is key bits [i, i+n); row bit (n-1-j) multiplies x_j, so
            // reverse x once instead of every row.
            std::uint64_t xr = 0;
            for (unsigned j = 0; j < k.n; ++j) xr |= ((x >> j) & 1u) << (k.n - 1 - j);
            std::uint32_t out = 0;
            for (unsigned i = 0; i < k.m; ++i) {
              const std::uint64_t row = (key >> i) & ((std::uint64_t{1} << k.n) - 1);
              out |= static_cast<std::uint32_t>(std::popcount(row & xr) & 1) << i;
            }
            return FieldElem(out);
          } else if constexpr (std::is_same_v<K, Table>) {
            return FieldElem(k.tags[key * k.messages.size() + x]);
          } else if constexpr (std::is_same_v<K, Counterexample>) {
            return x == 0 ? FieldElem(0) : FieldElem(static_cast<std::uint32_t>(key + 1));
          } else {
            const std::uint64_t t = k.base->tag_count();
            return k.base->eval_unchecked(key / t, x) ^ FieldElem(static_cast<std::uint32_t>(key % t));
          }
        },
        kind_);
  }

  /// Canonical text form, e.g. "mul:m=2" or "lift:toeplitz:n=4,m=3".
  std::string descriptor() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Mul>) {
            return "mul:m=" + std::to_string(k.field.bits());
          } else if constexpr (std::is_same_v<K, Poly>) {
            return "poly:m=" + std::to_string(k.field.bits()) + ",L=" + std::to_string(k.blocks);
          } else if constexpr (std::is_same_v<K, Toeplitz>) {
            return "toeplitz:n=" + std::to_string(k.n) + ",m=" + std::to_string(k.m);
          } else if constexpr (std::is_same_v<K, Table>) {
            if (!k.source.empty()) return "table:@" + k.source;
            return "table:inline(K=" + std::to_string(k.keys) + ",X=" + std::to_string(k.messages.size()) +
                   ",m=" + std::to_string(k.m) + ")";
          } else if constexpr (std::is_same_v<K, Counterexample>) {
            return "counterexample:m=" + std::to_string(k.m);
          } else {
            return "lift:" + k.base->descriptor();
          }
        },
        kind_);
  }

  /// Human/JSON label of a message index.
  std::string message_label(MessageId x) const {
    if (const auto* t = std::get_if<Table>(&kind_)) return t->messages.at(x);
    return std::to_string(x);
  }

  /// Number of evaluation-table cells, |K| * |X|.
  std::uint64_t table_cells() const { return saturating_mul(key_count(), message_count()); }

 private:
  explicit HashFamily(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

inline FieldElem hash_eval(const HashFamily& fam, KeyIndex key, MessageId x) { return fam.eval(key, x); }

/// g_{k1,k2}(x) = h_{k1}(x) ^ k2 over the key space K x T.
inline HashFamily lift_to_asu2(const HashFamily& fam) { return HashFamily::lifted(fam); }

/// Materialized |K| x |X| evaluation table, for repeated lookups during
/// enumeration.
class EvalTable {
 public:
  EvalTable(const HashFamily& fam, const Budget& budget = {})
      : keys_(fam.key_count()), messages_(fam.message_count()), bits_(fam.tag_bits()) {
    budget.require(fam.table_cells(), "evaluation table of " + fam.descriptor());
    tags_.resize(keys_ * messages_);
    for (KeyIndex k = 0; k < keys_; ++k)
      for (MessageId x = 0; x < messages_; ++x)
        tags_[k * messages_ + x] = static_cast<std::uint16_t>(fam.eval_unchecked(k, x).value);
  }

  std::uint64_t keys() const noexcept { return keys_; }
  std::uint64_t messages() const noexcept { return messages_; }
  std::uint64_t tags() const noexcept { return std::uint64_t{1} << bits_; }
  unsigned tag_bits() const noexcept { return bits_; }

  std::uint32_t operator()(KeyIndex k, MessageId x) const noexcept { return tags_[k * messages_ + x]; }

 private:
  std::uint64_t keys_;
  std::uint64_t messages_;
  unsigned bits_;
  std::vector<std::uint16_t> tags_;
};

}  // namespace wcr
