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

// Layered key-distribution / authentication experiment. A key-distribution
// stand-in with declared error eps' is run r times; each run authenticates
// l messages with the same recycled k1 and fresh pads. The error budget is
// the sum of per-component errors, r * (l * eps + eps').

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wcr/attack.hpp"
#include "wcr/auth.hpp"
#include "wcr/dist.hpp"
#include "wcr/errors.hpp"
#include "wcr/measure.hpp"
#include "wcr/rational.hpp"

namespace wcr {

/// Key-distribution stand-in: an ideal functionality with a declared UC
/// error, not a protocol.
struct ToyQkdFunctionality {
  unsigned out_bits = 0;
  Rational eps_prime;

  ToyQkdFunctionality(unsigned bits, Rational eps) : out_bits(bits), eps_prime(std::move(eps)) {
    if (eps_prime < 0 || eps_prime > 1) throw DomainError("declared error eps' must lie in [0, 1]");
  }
};

struct LedgerEntry {
  std::uint64_t round = 0;   // 1-based key-distribution round
  std::string component;     // "auth" or "qkd"
  std::string label;
  Rational epsilon;
  Rational cumulative;
};

class ErrorLedger {
 public:
  void add(std::uint64_t round, std::string component, std::string label, const Rational& eps) {
    if (eps < 0) throw std::invalid_argument("ledger entries must be non-negative");
    total_ += eps;
    entries_.push_back(LedgerEntry{round, std::move(component), std::move(label), eps, total_});
  }

  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
  const Rational& total() const noexcept { return total_; }

 private:
  std::vector<LedgerEntry> entries_;
  Rational total_{0};
};

struct ComposeResult {
  ErrorLedger ledger;
  Rational auth_epsilon;
  Rational bound;
};

inline ComposeResult compose_run(const Rational& auth_eps, std::uint64_t r, std::uint64_t l,
                                 const ToyQkdFunctionality& qkd) {
  if (r < 1 || l < 1) throw DomainError("composition needs r >= 1 and l >= 1");
  if (auth_eps < 0) throw DomainError("authentication error must be non-negative");
  ComposeResult res;
  res.auth_epsilon = auth_eps;
  for (std::uint64_t round = 1; round <= r; ++round) {
    for (std::uint64_t j = 1; j <= l; ++j)
      res.ledger.add(round, "auth", "auth " + std::to_string(round) + "." + std::to_string(j), auth_eps);
    res.ledger.add(round, "qkd", "qkd " + std::to_string(round), qkd.eps_prime);
  }
  res.bound = res.ledger.total();
  return res;
}

/// Uses the family's measured AXU_2 error as the per-authentication error.
inline ComposeResult compose_run(const HashFamily& fam, std::uint64_t r, std::uint64_t l,
                                 const ToyQkdFunctionality& qkd, const Budget& budget = {}) {
  return compose_run(measure_axu2(fam, budget).epsilon, r, l, qkd);
}

/// What the environment sees over all rounds, plus the recycled key.
struct MultiRoundOutcome {
  std::vector<RoundRecord> rounds;
  KeyIndex key = 0;
  auto operator<=>(const MultiRoundOutcome&) const = default;
};

/// Forwards every y unmodified.
class IdentityEnvironment {
 public:
  MessageId message() const noexcept { return 0; }
  TaggedMessage respond(const TaggedMessage& y) const { return y; }
  void observe(const TaggedMessage&, const TaggedMessage&, const std::optional<MessageId>&) {}
};

enum class ComposeEnv { list_elimination, identity };

struct ComposeSimulation {
  Rational distance;
  Rational forgery_probability;  // real world: some substituted y' accepted
  std::uint64_t rounds = 0;      // r * l authentication rounds
  Dist<MultiRoundOutcome> real;
  Dist<MultiRoundOutcome> ideal;
};

namespace detail {

template <class Env>
void enumerate_real(const HashFamily& fam, KeyIndex k1, std::uint64_t left, Env env,
                    std::vector<RoundRecord>& records, std::map<MultiRoundOutcome, std::uint64_t>& counts) {
  if (left == 0) {
    ++counts[MultiRoundOutcome{records, k1}];
    return;
  }
  for (std::uint64_t pad = 0; pad < fam.tag_count(); ++pad) {
    const AuthKey key{k1, FieldElem(static_cast<std::uint32_t>(pad))};
    const TaggedMessage y = authenticate(fam, key, env.message());
    const TaggedMessage y_prime = env.respond(y);
    const auto out = verify(fam, key, y_prime);
    Env next = env;
    next.observe(y, y_prime, out);
    records.push_back(RoundRecord{y.x, y.t, y_prime, out});
    enumerate_real(fam, k1, left - 1, std::move(next), records, counts);
    records.pop_back();
  }
}

// The simulator's tag is uniform (its own pad), and it accepts iff y' == y.
template <class Env>
void enumerate_ideal(std::uint64_t tags, std::uint64_t left, Env env, std::vector<RoundRecord>& records,
                     std::map<std::vector<RoundRecord>, std::uint64_t>& counts) {
  if (left == 0) {
    ++counts[records];
    return;
  }
  for (std::uint64_t t = 0; t < tags; ++t) {
    const TaggedMessage y{env.message(), FieldElem(static_cast<std::uint32_t>(t))};
    const TaggedMessage y_prime = env.respond(y);
    const auto out = y_prime == y ? std::optional<MessageId>(y.x) : std::nullopt;
    Env next = env;
    next.observe(y, y_prime, out);
    records.push_back(RoundRecord{y.x, y.t, y_prime, out});
    enumerate_ideal(tags, left - 1, std::move(next), records, counts);
    records.pop_back();
  }
}

template <class Env>
ComposeSimulation simulate(const HashFamily& fam, std::uint64_t n, const Env& env) {
  const std::uint64_t keys = fam.key_count();
  const std::uint64_t tags = fam.tag_count();
  BigInt paths = 1;
  for (std::uint64_t i = 0; i < n; ++i) paths *= tags;

  ComposeSimulation sim;
  sim.rounds = n;
  std::vector<RoundRecord> records;

  std::map<MultiRoundOutcome, std::uint64_t> real_counts;
  for (KeyIndex k1 = 0; k1 < keys; ++k1) enumerate_real(fam, k1, n, env, records, real_counts);
  const BigInt real_denom = paths * keys;
  for (const auto& [o, c] : real_counts) sim.real.add(o, Rational(BigInt(c), real_denom));

  std::map<std::vector<RoundRecord>, std::uint64_t> ideal_counts;
  enumerate_ideal(tags, n, env, records, ideal_counts);
  for (const auto& [rs, c] : ideal_counts)
    for (KeyIndex k = 0; k < keys; ++k) sim.ideal.add(MultiRoundOutcome{rs, k}, Rational(BigInt(c), real_denom));

  sim.forgery_probability = sim.real.probability([](const MultiRoundOutcome& o) {
    for (const auto& r : o.rounds)
      if (r.substituted() && r.output) return true;
    return false;
  });
  sim.distance = total_variation(sim.real, sim.ideal);
  return sim;
}

}  // namespace detail

/// Exact distance between r*l real rounds sharing one k1 and the fully ideal
/// execution, against an adaptive environment whose state crosses
/// key-distribution boundaries.
inline ComposeSimulation compose_simulate_exact(const HashFamily& fam, std::uint64_t r, std::uint64_t l,
                                                ComposeEnv env, const Budget& budget = {}) {
  if (r < 1 || l < 1) throw DomainError("composition needs r >= 1 and l >= 1");
  const std::uint64_t n = r * l;
  std::uint64_t paths = fam.key_count();
  for (std::uint64_t i = 0; i < n; ++i) paths = saturating_mul(paths, fam.tag_count());
  budget.require(paths, "multi-round enumeration of " + fam.descriptor());
  if (env == ComposeEnv::identity) return detail::simulate(fam, n, IdentityEnvironment{});
  if (fam.message_count() < 2) throw HypothesisError("list elimination needs two distinct messages");
  return detail::simulate(fam, n, ListEliminationAttacker(0, 1, fam.tag_count()));
}

}  // namespace wcr
