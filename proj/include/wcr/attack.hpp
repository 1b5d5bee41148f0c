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

// List-elimination attack on WC authentication with a recycled k1.
//
// The environment always sends x and always substitutes x' != x. A forgery
// (x', t ^ c) is accepted iff c = h_{k1}(x) ^ h_{k1}(x'), which does not
// depend on the pad. The attacker walks the candidate list c = 0, 1, ...
// crossing off one value per rejected round, and stops substituting after
// its first acceptance.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wcr/auth.hpp"
#include "wcr/entropy.hpp"
#include "wcr/errors.hpp"
#include "wcr/measure.hpp"
#include "wcr/rational.hpp"

namespace wcr {

/// One authentication round as the environment sees it.
struct RoundRecord {
  MessageId x = 0;
  FieldElem t;
  TaggedMessage forwarded;          // y' handed to the receiver
  std::optional<MessageId> output;  // nullopt = ⊥

  bool substituted() const { return forwarded.x != x || forwarded.t != t; }
  auto operator<=>(const RoundRecord&) const = default;
};

struct Transcript {
  std::vector<RoundRecord> rounds;
  std::vector<FieldElem> guesses_eliminated;

  /// Accepted substitutions; at most one under the list-elimination attack.
  std::size_t forgeries() const {
    std::size_t n = 0;
    for (const auto& r : rounds)
      if (r.substituted() && r.output) ++n;
    return n;
  }
};

/// Stateful environment strategy for the attack; copyable so exhaustive
/// enumeration can branch on it.
class ListEliminationAttacker {
 public:
  ListEliminationAttacker(MessageId x, MessageId x_prime, std::uint64_t tag_count)
      : x_(x), x_prime_(x_prime), tags_(tag_count) {}

  MessageId message() const noexcept { return x_; }

  TaggedMessage respond(const TaggedMessage& y) const {
    if (succeeded_ || next_ >= tags_) return y;
    return TaggedMessage{x_prime_, y.t ^ FieldElem(static_cast<std::uint32_t>(next_))};
  }

  /// Feed back what the receiver output for the last y'.
  void observe(const TaggedMessage& y, const TaggedMessage& y_prime, const std::optional<MessageId>& output) {
    if (y_prime == y) return;
    if (output) {
      succeeded_ = true;
      learned_ = FieldElem(static_cast<std::uint32_t>(next_));
    } else {
      eliminated_.push_back(FieldElem(static_cast<std::uint32_t>(next_)));
      ++next_;
    }
  }

  bool succeeded() const noexcept { return succeeded_; }
  std::optional<FieldElem> learned_difference() const { return succeeded_ ? std::optional(learned_) : std::nullopt; }
  const std::vector<FieldElem>& eliminated() const noexcept { return eliminated_; }

  auto operator<=>(const ListEliminationAttacker&) const = default;

 private:
  MessageId x_;
  MessageId x_prime_;
  std::uint64_t tags_;
  std::uint64_t next_ = 0;
  bool succeeded_ = false;
  FieldElem learned_;
  std::vector<FieldElem> eliminated_;
};

/// Plays `rounds` rounds of the real protocol (authenticate / verify) with
/// keys from `stream` against the attacker.
inline Transcript play_attack(const HashFamily& fam, KeyStream& stream, std::size_t rounds,
                              ListEliminationAttacker& attacker) {
  Transcript tr;
  for (std::size_t i = 0; i < rounds; ++i) {
    const AuthKey key = stream.next();
    const TaggedMessage y = authenticate(fam, key, attacker.message());
    const TaggedMessage y_prime = attacker.respond(y);
    const auto out = verify(fam, key, y_prime);
    attacker.observe(y, y_prime, out);
    tr.rounds.push_back(RoundRecord{y.x, y.t, y_prime, out});
  }
  tr.guesses_eliminated = attacker.eliminated();
  return tr;
}

struct AttackReport {
  std::uint64_t rounds = 0;
  std::uint64_t key_count = 0;
  std::uint64_t tag_count = 0;
  MessageId x = 0;
  MessageId x_prime = 1;
  Rational success_prob;
  std::vector<Rational> per_round_conditional;  // P(success in round i | none before), i = 1..rounds
  Log2Sum entropy_bits;                         // H(K1 | Z) from the exact posteriors
  Log2Sum entropy_formula_bits;                 // log(|K|/|T|) + (1 - l/|T|) log(|T| - l)
  bool regular_classes = false;                 // every c-class has exactly |K|/|T| keys
};

/// log2(|K|/|T|) + (1 - l/|T|) * log2(|T| - l); the second term vanishes at l = |T|.
inline Log2Sum entropy_formula(std::uint64_t keys, std::uint64_t tags, std::uint64_t rounds) {
  Log2Sum s = Log2Sum::term(Rational(1), Rational(BigInt(keys), BigInt(tags)));
  if (rounds < tags)
    s.add_log2(Rational(1) - Rational(BigInt(rounds), BigInt(tags)), Rational(BigInt(tags - rounds)));
  return s;
}

/// Throws HypothesisError unless the family is exactly 1/|T|-AXU_2 with at
/// least two messages.
inline void require_optimal_axu2(const HashFamily& fam, const Budget& budget = {}) {
  if (fam.message_count() < 2) throw HypothesisError("attack needs two distinct messages");
  const auto eps = measure_axu2(fam, budget).epsilon;
  const Rational target(BigInt(1), BigInt(fam.tag_count()));
  if (eps != target)
    throw HypothesisError("family " + fam.descriptor() + " is " + to_string(eps) + "-AXU_2, the attack needs " +
                          to_string(target) + "-AXU_2");
}

namespace detail {

// Round (1-based) in which the attacker is accepted for each k1, or 0. The
// pads cancel: acceptance in round i only asks whether c_i equals the true
// difference.
inline std::vector<std::uint64_t> success_rounds(const HashFamily& fam, MessageId x, MessageId x_prime,
                                                 std::uint64_t rounds) {
  std::vector<std::uint64_t> out(fam.key_count());
  for (KeyIndex k = 0; k < fam.key_count(); ++k) {
    const std::uint64_t c = (fam.eval_unchecked(k, x) ^ fam.eval_unchecked(k, x_prime)).value;
    out[k] = c < rounds ? c + 1 : 0;
  }
  return out;
}

}  // namespace detail

/// Exact attack statistics over uniform k1 (pads integrated out).
inline AttackReport run_attack_exact(const HashFamily& fam, std::uint64_t rounds, const Budget& budget = {}) {
  const std::uint64_t tags = fam.tag_count();
  if (rounds > tags)
    throw DomainError("round count " + std::to_string(rounds) + " exceeds |T| = " + std::to_string(tags));
  budget.require(fam.key_count(), "attack enumeration over k1");
  require_optimal_axu2(fam, budget);

  AttackReport rep;
  rep.rounds = rounds;
  rep.key_count = fam.key_count();
  rep.tag_count = tags;
  const auto when = detail::success_rounds(fam, rep.x, rep.x_prime, rounds);

  // Transcript classes: accepted in round j (j = 1..rounds) or never (0).
  std::map<std::uint64_t, std::uint64_t> class_size;
  for (auto j : when) ++class_size[j];
  const BigInt keys(rep.key_count);

  std::uint64_t before = 0;  // keys already accepted in an earlier round
  for (std::uint64_t j = 1; j <= rounds; ++j) {
    const std::uint64_t now = class_size.count(j) ? class_size[j] : 0;
    const std::uint64_t left = rep.key_count - before;
    rep.per_round_conditional.push_back(left == 0 ? Rational(0) : Rational(BigInt(now), BigInt(left)));
    before += now;
  }
  rep.success_prob = Rational(BigInt(before), keys);

  // H(K1 | Z) = sum_z P(z) log2 |class z|; the posterior is uniform on each
  // class because every key explains the observed tags equally well.
  for (const auto& [j, n] : class_size) rep.entropy_bits.add_log2(Rational(BigInt(n), keys), Rational(BigInt(n)));
  rep.entropy_formula_bits = entropy_formula(rep.key_count, tags, rounds);

  std::map<std::uint64_t, std::uint64_t> by_difference;
  for (KeyIndex k = 0; k < fam.key_count(); ++k)
    ++by_difference[(fam.eval_unchecked(k, rep.x) ^ fam.eval_unchecked(k, rep.x_prime)).value];
  rep.regular_classes = by_difference.size() == tags;
  for (const auto& [_, n] : by_difference) rep.regular_classes = rep.regular_classes && n * tags == rep.key_count;
  return rep;
}

/// H(K1 | Z_l) under the attack, computed and closed-form.
inline std::pair<Log2Sum, Log2Sum> posterior_entropy(const HashFamily& fam, std::uint64_t rounds,
                                                     const Budget& budget = {}) {
  auto rep = run_attack_exact(fam, rounds, budget);
  return {rep.entropy_bits, rep.entropy_formula_bits};
}

/// P(F_{l+1} = 1 | F_l = 0) for l = 0..max_rounds, measured by the exact engine.
inline std::vector<Rational> success_recurrence_check(const HashFamily& fam, std::uint64_t max_rounds,
                                                      const Budget& budget = {}) {
  if (max_rounds + 1 > fam.tag_count())
    throw DomainError("recurrence needs l_max <= 1/eps - 1 = " + std::to_string(fam.tag_count() - 1));
  const auto rep = run_attack_exact(fam, max_rounds + 1, budget);
  // Cumulative success S(l) from the per-round conditionals, then
  // P(F_{l+1} = 1 | F_l = 0) = (S(l+1) - S(l)) / (1 - S(l)).
  std::vector<Rational> cumulative{Rational(0)};
  for (const auto& p : rep.per_round_conditional) cumulative.push_back(cumulative.back() + p * (1 - cumulative.back()));
  std::vector<Rational> out;
  for (std::uint64_t l = 0; l <= max_rounds; ++l)
    out.push_back((cumulative[l + 1] - cumulative[l]) / (1 - cumulative[l]));
  return out;
}

/// eps / (1 - l * eps).
inline Rational recurrence_formula(const Rational& eps, std::uint64_t l) { return eps / (1 - eps * l); }

/// Whether P(k1 | the legitimate (x_i, t_i) pairs) is uniform for every
/// observed tag sequence, enumerating k1 and all pad sequences.
inline bool pair_only_posterior_uniform(const HashFamily& fam, std::uint64_t rounds, const Budget& budget = {}) {
  const std::uint64_t tags = fam.tag_count();
  std::uint64_t pad_sequences = 1;
  for (std::uint64_t i = 0; i < rounds; ++i) pad_sequences = saturating_mul(pad_sequences, tags);
  budget.require(saturating_mul(fam.key_count(), pad_sequences), "pad-sequence enumeration");
  std::map<std::vector<std::uint32_t>, std::map<KeyIndex, std::uint64_t>> seen;
  for (KeyIndex k1 = 0; k1 < fam.key_count(); ++k1) {
    for (std::uint64_t s = 0; s < pad_sequences; ++s) {
      std::vector<FieldElem> pads;
      for (std::uint64_t i = 0, v = s; i < rounds; ++i, v /= tags) pads.push_back(FieldElem(static_cast<std::uint32_t>(v % tags)));
      KeyStream stream(fam, k1, pads);
      ListEliminationAttacker attacker(0, 1, tags);
      const auto tr = play_attack(fam, stream, rounds, attacker);
      std::vector<std::uint32_t> pairs;
      for (const auto& r : tr.rounds) pairs.push_back(r.t.value);
      ++seen[pairs][k1];
    }
  }
  for (const auto& [_, per_key] : seen) {
    if (per_key.size() != fam.key_count()) return false;
    const auto first = per_key.begin()->second;
    for (const auto& [__, n] : per_key)
      if (n != first) return false;
  }
  return true;
}

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  Rational expected;
  double sigma = 0.0;  // binomial standard deviation of the rate under `expected`
  double lower = 0.0;  // expected - 3 sigma
  double upper = 0.0;  // expected + 3 sigma

  bool within_three_sigma() const { return rate >= lower && rate <= upper; }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Monte Carlo estimate of the attack success rate. Each trial derives its
/// own generator from (seed, trial index), so the result does not depend on
/// trial order.
inline MonteCarloResult run_attack_montecarlo(const HashFamily& fam, std::uint64_t rounds, std::uint64_t trials,
                                              std::uint64_t seed) {
  if (trials == 0) throw DomainError("Monte Carlo needs at least one trial");
  if (fam.message_count() < 2) throw HypothesisError("attack needs two distinct messages");
  const std::uint64_t tags = fam.tag_count();
  if (rounds > tags) throw DomainError("round count exceeds |T|");
  MonteCarloResult res;
  res.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(i)));
    std::uniform_int_distribution<KeyIndex> key_dist(0, fam.key_count() - 1);
    std::uniform_int_distribution<std::uint32_t> pad_dist(0, static_cast<std::uint32_t>(tags - 1));
    const KeyIndex k1 = key_dist(rng);
    std::vector<FieldElem> pads(rounds);
    for (auto& p : pads) p = FieldElem(pad_dist(rng));
    KeyStream stream(fam, k1, std::move(pads));
    ListEliminationAttacker attacker(0, 1, tags);
    play_attack(fam, stream, rounds, attacker);
    if (attacker.succeeded()) ++res.successes;
  }
  res.rate = static_cast<double>(res.successes) / static_cast<double>(trials);
  res.expected = Rational(BigInt(rounds), BigInt(tags));
  const double p = to_double(res.expected);
  res.sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  res.lower = p - 3.0 * res.sigma;
  res.upper = p + 3.0 * res.sigma;
  return res;
}

}  // namespace wcr
