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

// Real/ideal execution of one authentication round against an environment
// that picks the message and (after seeing y) the substitute y'. The dummy
// adversary forwards everything, so the environment is the adversary.
//
// Real world:  keys uniform, y = encode(key, x), y' = subst(y), the receiver
//              outputs decode(key, y') and, when recycling, the real k1.
// Ideal world: the simulator encodes with its own uniform key, accepts iff
//              y' == y (output x, else ⊥) and the functionality hands out a
//              fresh uniform key independent of everything.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wcr/auth.hpp"
#include "wcr/dist.hpp"
#include "wcr/errors.hpp"
#include "wcr/protocol.hpp"
#include "wcr/rational.hpp"

namespace wcr {

/// Deterministic y -> y' over the encoding space X x T. Identity by default.
class SubstitutionMap {
 public:
  SubstitutionMap() = default;
  SubstitutionMap(std::uint64_t messages, std::uint64_t tags) : messages_(messages), tags_(tags) {
    image_.reserve(messages * tags);
    for (MessageId x = 0; x < messages; ++x)
      for (std::uint64_t t = 0; t < tags; ++t) image_.push_back(TaggedMessage{x, FieldElem(static_cast<std::uint32_t>(t))});
  }

  static SubstitutionMap identity(std::uint64_t messages, std::uint64_t tags) { return {messages, tags}; }

  TaggedMessage operator()(const TaggedMessage& y) const { return image_.at(index(y)); }

  void set(const TaggedMessage& y, const TaggedMessage& y_prime) {
    if (y_prime.x >= messages_ || y_prime.t.value >= tags_) throw DomainError("substitute outside the encoding space");
    image_.at(index(y)) = y_prime;
  }

  /// Entries that differ from the identity, in y order.
  std::vector<std::pair<TaggedMessage, TaggedMessage>> changes() const {
    std::vector<std::pair<TaggedMessage, TaggedMessage>> out;
    for (std::size_t i = 0; i < image_.size(); ++i) {
      const TaggedMessage y{i / tags_, FieldElem(static_cast<std::uint32_t>(i % tags_))};
      if (image_[i] != y) out.emplace_back(y, image_[i]);
    }
    return out;
  }

  std::uint64_t messages() const noexcept { return messages_; }
  std::uint64_t tags() const noexcept { return tags_; }

  auto operator<=>(const SubstitutionMap&) const = default;

 private:
  std::size_t index(const TaggedMessage& y) const {
    if (y.x >= messages_ || y.t.value >= tags_) throw DomainError("encoding outside the substitution map domain");
    return static_cast<std::size_t>(y.x * tags_ + y.t.value);
  }

  std::uint64_t messages_ = 0;
  std::uint64_t tags_ = 0;
  std::vector<TaggedMessage> image_;
};

/// The environment's choices for one round.
struct EnvStrategy {
  enum class Mode { substitution, impersonation };

  Mode mode = Mode::substitution;
  Dist<MessageId> messages;   // substitution only
  SubstitutionMap subst;      // substitution only
  TaggedMessage forged;       // impersonation only

  static EnvStrategy substitution(Dist<MessageId> messages, SubstitutionMap subst) {
    if (!messages.normalized()) throw std::invalid_argument("message distribution must sum to 1");
    return EnvStrategy{Mode::substitution, std::move(messages), std::move(subst), {}};
  }

  static EnvStrategy impersonation(TaggedMessage y_prime) {
    return EnvStrategy{Mode::impersonation, {}, {}, y_prime};
  }

  /// Point-mass message x with the substitution x -> (x', t ^ delta).
  static EnvStrategy fixed_substitution(std::uint64_t messages, std::uint64_t tags, MessageId x, MessageId x_prime,
                                        FieldElem delta) {
    auto map = SubstitutionMap::identity(messages, tags);
    for (std::uint64_t t = 0; t < tags; ++t) {
      const FieldElem tag(static_cast<std::uint32_t>(t));
      map.set(TaggedMessage{x, tag}, TaggedMessage{x_prime, tag ^ delta});
    }
    return substitution(Dist<MessageId>::point(x), std::move(map));
  }

  static EnvStrategy identity(std::uint64_t messages, std::uint64_t tags, Dist<MessageId> msgs) {
    return substitution(std::move(msgs), SubstitutionMap::identity(messages, tags));
  }
};

/// Everything the environment sees in one execution. Absent fields are not
/// part of the run (x and y in impersonation runs, the key when nothing is
/// recycled). `output` is nullopt for ⊥.
struct WorldOutcome {
  std::optional<MessageId> x;
  std::optional<TaggedMessage> y;
  TaggedMessage y_prime;
  std::optional<MessageId> output;
  std::optional<KeyIndex> key;

  auto operator<=>(const WorldOutcome&) const = default;
};

using OutcomeDist = Dist<WorldOutcome>;

class SchemaMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Schema {
  bool has_x, has_y, has_key;
  bool operator==(const Schema&) const = default;
};

inline Schema schema_of(const WorldOutcome& o) { return {o.x.has_value(), o.y.has_value(), o.key.has_value()}; }

inline std::optional<Schema> common_schema(const OutcomeDist& d) {
  std::optional<Schema> s;
  for (const auto& [o, _] : d) {
    if (!s) s = schema_of(o);
    else if (*s != schema_of(o)) throw SchemaMismatch("distribution mixes outcome schemas");
  }
  return s;
}

template <AuthProtocol P>
void require_run_budget(const P& p, const EnvStrategy& env, bool ideal, const Budget& budget) {
  const std::uint64_t support = env.mode == EnvStrategy::Mode::substitution ? env.messages.size() : 1;
  std::uint64_t cells = saturating_mul(support, p.key_count());
  if (ideal) cells = saturating_mul(cells, p.recycled_key_count());
  budget.require(cells, std::string(ideal ? "ideal" : "real") + " run of " + p.name());
}

template <AuthProtocol P>
void check_env(const P& p, const EnvStrategy& env) {
  if (env.mode == EnvStrategy::Mode::substitution) {
    if (env.subst.messages() != p.message_count() || env.subst.tags() != p.tag_count())
      throw DomainError("substitution map does not cover the protocol's encoding space");
    for (const auto& [x, _] : env.messages)
      if (x >= p.message_count()) throw DomainError("message distribution outside the message space");
  }
}

}  // namespace detail

/// Exact joint distribution of the real execution.
template <AuthProtocol P>
OutcomeDist run_real(const P& p, const EnvStrategy& env, const Budget& budget = {}) {
  detail::check_env(p, env);
  detail::require_run_budget(p, env, false, budget);
  const std::uint64_t keys = p.key_count();
  std::map<WorldOutcome, std::uint64_t> counts;
  OutcomeDist out;
  if (env.mode == EnvStrategy::Mode::impersonation) {
    for (KeyIndex key = 0; key < keys; ++key) {
      ++counts[WorldOutcome{std::nullopt, std::nullopt, env.forged, p.decode(key, env.forged), p.recycled_key(key)}];
    }
    for (const auto& [o, c] : counts) out.add(o, Rational(BigInt(c), BigInt(keys)));
    return out;
  }
  for (const auto& [x, w] : env.messages) {
    counts.clear();
    for (KeyIndex key = 0; key < keys; ++key) {
      const TaggedMessage y = p.encode(key, x);
      const TaggedMessage y_prime = env.subst(y);
      ++counts[WorldOutcome{x, y, y_prime, p.decode(key, y_prime), p.recycled_key(key)}];
    }
    for (const auto& [o, c] : counts) out.add(o, w * Rational(BigInt(c), BigInt(keys)));
  }
  return out;
}

/// Exact joint distribution of the ideal execution.
template <AuthProtocol P>
OutcomeDist run_ideal(const P& p, const EnvStrategy& env, const Budget& budget = {}) {
  detail::check_env(p, env);
  detail::require_run_budget(p, env, true, budget);
  const std::uint64_t keys = p.key_count();
  const std::uint64_t fresh = p.recycled_key_count();
  const bool recycles = p.recycled_key(0).has_value();
  auto fresh_key = [&](std::uint64_t k) { return recycles ? std::optional<KeyIndex>(k) : std::nullopt; };
  OutcomeDist out;
  if (env.mode == EnvStrategy::Mode::impersonation) {
    for (std::uint64_t k = 0; k < fresh; ++k)
      out.add(WorldOutcome{std::nullopt, std::nullopt, env.forged, std::nullopt, fresh_key(k)},
              Rational(BigInt(1), BigInt(fresh)));
    return out;
  }
  for (const auto& [x, w] : env.messages) {
    std::map<std::pair<TaggedMessage, TaggedMessage>, std::uint64_t> sim;
    for (KeyIndex key = 0; key < keys; ++key) {
      const TaggedMessage y = p.encode(key, x);
      ++sim[{y, env.subst(y)}];
    }
    const BigInt denom = BigInt(keys) * fresh;
    for (const auto& [yy, c] : sim) {
      const auto& [y, y_prime] = yy;
      const std::optional<MessageId> output = y_prime == y ? std::optional<MessageId>(x) : std::nullopt;
      for (std::uint64_t k = 0; k < fresh; ++k)
        out.add(WorldOutcome{x, y, y_prime, output, fresh_key(k)}, w * Rational(BigInt(c), denom));
    }
  }
  return out;
}

/// Recycling flag on a family: recycling runs WC with a padded tag and a
/// recycled k1; without it the scheme is standard authentication.
inline OutcomeDist run_real(const HashFamily& fam, const EnvStrategy& env, bool recycle, const Budget& budget = {}) {
  return recycle ? run_real(RecyclingAuth(fam), env, budget) : run_real(StandardAuth(fam), env, budget);
}

inline OutcomeDist run_ideal(const HashFamily& fam, const EnvStrategy& env, bool recycle, const Budget& budget = {}) {
  return recycle ? run_ideal(RecyclingAuth(fam), env, budget) : run_ideal(StandardAuth(fam), env, budget);
}

/// (1/2) sum |p - q|. Both sides must carry the same outcome fields.
inline Rational statistical_distance(const OutcomeDist& p, const OutcomeDist& q) {
  const auto sp = detail::common_schema(p);
  const auto sq = detail::common_schema(q);
  if (sp && sq && *sp != *sq) throw SchemaMismatch("real and ideal outcomes carry different fields");
  return total_variation(p, q);
}

/// Drops the recycled key from every outcome.
inline OutcomeDist marginalize_key(const OutcomeDist& d) {
  return d.map([](const WorldOutcome& o) {
    WorldOutcome r = o;
    r.key.reset();
    return r;
  });
}

/// True when P(key | x, y) = 1 / key_count for every (x, y) of positive
/// probability.
inline bool key_independent_of_xy(const OutcomeDist& d, std::uint64_t key_count) {
  std::map<std::pair<std::optional<MessageId>, std::optional<TaggedMessage>>, std::map<KeyIndex, Rational>> by_xy;
  for (const auto& [o, w] : d) {
    if (!o.key) return false;
    by_xy[{o.x, o.y}][*o.key] += w;
  }
  for (const auto& [xy, per_key] : by_xy) {
    Rational total(0);
    for (const auto& [_, w] : per_key) total += w;
    if (per_key.size() != key_count) return false;
    for (const auto& [_, w] : per_key)
      if (w / total != Rational(BigInt(1), BigInt(key_count))) return false;
  }
  return true;
}

template <AuthProtocol P>
Rational run_distance(const P& p, const EnvStrategy& env, const Budget& budget = {}) {
  return statistical_distance(run_real(p, env, budget), run_ideal(p, env, budget));
}

/// Distance of the impersonation strategy that injects `forged`.
template <AuthProtocol P>
Rational impersonation_distance(const P& p, const TaggedMessage& forged, const Budget& budget = {}) {
  return run_distance(p, EnvStrategy::impersonation(forged), budget);
}

inline Rational impersonation_distance(const HashFamily& fam, const TaggedMessage& forged, bool recycle,
                                       const Budget& budget = {}) {
  return recycle ? impersonation_distance(RecyclingAuth(fam), forged, budget)
                 : impersonation_distance(StandardAuth(fam), forged, budget);
}

struct WorstCase {
  Rational distance;
  EnvStrategy witness;
  Rational substitution_distance;
  EnvStrategy substitution_witness;
  Rational impersonation_distance;
  TaggedMessage impersonation_witness;
};

/// Work of the worst-case search: substitution candidates plus impersonation
/// targets, counted in key evaluations.
template <AuthProtocol P>
std::uint64_t worst_case_cells(const P& p) {
  const std::uint64_t ys = saturating_mul(p.message_count(), p.tag_count());
  const std::uint64_t per_x = saturating_mul(p.key_count(), ys);
  return saturating_mul(per_x, p.message_count() + 1);
}

namespace detail {

// Real and ideal weights of one y-slice share the denominator keys * fresh:
// a real key contributes `fresh`, an ideal (key, fresh key) pair contributes 1.
// ideal_code is the ideal output + 1, or 0 for ⊥. Returns sum |real - ideal|
// over (output, key) in that unit.
template <AuthProtocol P>
BigInt slice_contribution(const P& p, const std::vector<KeyIndex>& group, const TaggedMessage& y_prime,
                          std::uint64_t ideal_code, std::uint64_t fresh_count, std::uint64_t ideal_weight,
                          std::vector<std::pair<std::uint64_t, std::uint64_t>>& scratch) {
  scratch.clear();
  for (KeyIndex key : group) {
    const auto out = p.decode(key, y_prime);
    scratch.emplace_back(out ? *out + 1 : 0, p.recycled_key(key).value_or(0));
  }
  std::sort(scratch.begin(), scratch.end());
  BigInt acc = 0;
  std::uint64_t ideal_keys_hit = 0;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    const BigInt real = BigInt(j - i) * fresh_count;
    if (scratch[i].first == ideal_code) {
      ++ideal_keys_hit;
      const BigInt ideal(ideal_weight);
      acc += real > ideal ? real - ideal : ideal - real;
    } else {
      acc += real;
    }
    i = j;
  }
  acc += BigInt(fresh_count - ideal_keys_hit) * ideal_weight;
  return acc;
}

}  // namespace detail

/// Largest impersonation distance over all injected encodings, with the
/// first maximizing encoding.
template <AuthProtocol P>
std::pair<Rational, TaggedMessage> max_impersonation_distance(const P& p, const Budget& budget = {}) {
  const std::uint64_t keys = p.key_count();
  const std::uint64_t tags = p.tag_count();
  const std::uint64_t fresh = p.recycled_key_count();
  budget.require(saturating_mul(keys, saturating_mul(p.message_count(), tags)),
                 "impersonation search for " + p.name());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> scratch;
  std::vector<KeyIndex> all_keys(keys);
  for (KeyIndex key = 0; key < keys; ++key) all_keys[key] = key;
  std::optional<BigInt> best;
  TaggedMessage best_forged;
  for (std::uint64_t ci = 0; ci < p.message_count() * tags; ++ci) {
    const TaggedMessage forged{ci / tags, FieldElem(static_cast<std::uint32_t>(ci % tags))};
    // Ideal side: (⊥, k) with probability 1/fresh = keys in the common unit.
    BigInt c = detail::slice_contribution(p, all_keys, forged, 0, fresh, keys, scratch);
    if (!best || c > *best) {
      best = std::move(c);
      best_forged = forged;
    }
  }
  return {Rational(*best, BigInt(2) * keys * fresh), best_forged};
}

/// Exact maximum of the real/ideal distance over every environment: each
/// point-mass message with every deterministic substitution map, and every
/// impersonation target. The distance is affine in P_X, so point masses
/// suffice; and because y is part of the outcome, the distance of a map is a
/// sum of independent per-y terms, so each y can take its best y' on its own.
/// Ties go to the lexicographically first (x, map), substitution before
/// impersonation.
template <AuthProtocol P>
WorstCase worst_case_distance(const P& p, const Budget& budget = {}) {
  budget.require(worst_case_cells(p), "worst-case strategy search for " + p.name());
  const std::uint64_t keys = p.key_count();
  const std::uint64_t tags = p.tag_count();
  const std::uint64_t messages = p.message_count();
  const std::uint64_t fresh = p.recycled_key_count();
  const BigInt denom = BigInt(2) * keys * fresh;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> scratch;

  std::optional<BigInt> best_sub;
  EnvStrategy best_sub_env;
  std::vector<std::vector<KeyIndex>> groups(messages * tags);
  for (MessageId x = 0; x < messages; ++x) {
    for (auto& g : groups) g.clear();
    for (KeyIndex key = 0; key < keys; ++key) {
      const TaggedMessage y = p.encode(key, x);
      groups[y.x * tags + y.t.value].push_back(key);
    }
    auto map = SubstitutionMap::identity(messages, tags);
    BigInt total = 0;
    for (std::uint64_t yi = 0; yi < groups.size(); ++yi) {
      const auto& group = groups[yi];
      if (group.empty()) continue;
      const TaggedMessage y{yi / tags, FieldElem(static_cast<std::uint32_t>(yi % tags))};
      std::optional<BigInt> best;
      TaggedMessage best_y;
      for (std::uint64_t ci = 0; ci < messages * tags; ++ci) {
        const TaggedMessage cand{ci / tags, FieldElem(static_cast<std::uint32_t>(ci % tags))};
        const std::uint64_t ideal_code = cand == y ? x + 1 : 0;
        BigInt c = detail::slice_contribution(p, group, cand, ideal_code, fresh, group.size(), scratch);
        if (!best || c > *best) {
          best = std::move(c);
          best_y = cand;
        }
      }
      total += *best;
      map.set(y, best_y);
    }
    if (!best_sub || total > *best_sub) {
      best_sub = total;
      best_sub_env = EnvStrategy::substitution(Dist<MessageId>::point(x), std::move(map));
    }
  }

  const auto [imp_distance, forged] = max_impersonation_distance(p, Budget{UINT64_MAX});

  WorstCase out{Rational(0), {}, Rational(*best_sub, denom), best_sub_env, imp_distance, forged};
  if (out.impersonation_distance > out.substitution_distance) {
    out.distance = out.impersonation_distance;
    out.witness = EnvStrategy::impersonation(forged);
  } else {
    out.distance = out.substitution_distance;
    out.witness = best_sub_env;
  }
  return out;
}

inline WorstCase worst_case_distance(const HashFamily& fam, bool recycle, const Budget& budget = {}) {
  return recycle ? worst_case_distance(RecyclingAuth(fam), budget) : worst_case_distance(StandardAuth(fam), budget);
}

}  // namespace wcr
