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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wcr/attack.hpp"
#include "wcr/descriptor.hpp"

using namespace wcr;
using oracle::frac;

namespace {
std::string data(const char* name) { return std::string(WCR_TEST_DATA) + "/" + name; }
}  // namespace

TEST(Attack, SuccessIsLOverT) {
  const auto f = HashFamily::mul(2);
  for (std::uint64_t l = 0; l <= 4; ++l) EXPECT_EQ(run_attack_exact(f, l).success_prob, frac(l, 4));
  for (const char* d : {"mul:m=3", "toeplitz:n=3,m=2", "toeplitz:n=4,m=3"}) {
    const auto g = parse_family(d);
    for (std::uint64_t l = 0; l <= g.tag_count(); ++l)
      EXPECT_EQ(run_attack_exact(g, l).success_prob, frac(l, g.tag_count())) << d;
  }
}

TEST(Attack, MatchesFullPadEnumeration) {
  for (const char* d : {"mul:m=2", "mul:m=1", "toeplitz:n=2,m=2"}) {
    const auto f = parse_family(d);
    for (std::uint64_t l = 0; l <= std::min<std::uint64_t>(f.tag_count(), 3); ++l) {
      const auto rep = run_attack_exact(f, l);
      const auto o = oracle::attack(f, l);
      EXPECT_EQ(rep.success_prob, o.success) << d << " l=" << l;
      EXPECT_EQ(rep.entropy_bits, o.entropy) << d << " l=" << l;
    }
  }
  const auto table = parse_family("table:@" + data("inner_product_k16_t4.json"));
  for (std::uint64_t l = 0; l <= 2; ++l) EXPECT_EQ(run_attack_exact(table, l).entropy_bits, oracle::attack(table, l).entropy);
}

TEST(Attack, PerRoundConditionals) {
  const auto rep = run_attack_exact(HashFamily::mul(2), 4);
  ASSERT_EQ(rep.per_round_conditional.size(), 4u);
  EXPECT_EQ(rep.per_round_conditional[0], frac(1, 4));
  EXPECT_EQ(rep.per_round_conditional[1], frac(1, 3));
  EXPECT_EQ(rep.per_round_conditional[2], frac(1, 2));
  EXPECT_EQ(rep.per_round_conditional[3], 1);
}

TEST(Attack, RecurrenceMatchesFormula) {
  const auto f = HashFamily::mul(2);
  const auto got = success_recurrence_check(f, 2);
  ASSERT_EQ(got.size(), 3u);
  EXPECT_EQ(got[0], frac(1, 4));
  EXPECT_EQ(got[1], frac(1, 3));
  EXPECT_EQ(got[2], frac(1, 2));
  for (const char* d : {"mul:m=2", "mul:m=3", "toeplitz:n=4,m=3"}) {
    const auto g = parse_family(d);
    const auto eps = frac(1, g.tag_count());
    const auto r = success_recurrence_check(g, g.tag_count() - 1);
    for (std::uint64_t l = 0; l < r.size(); ++l) EXPECT_EQ(r[l], recurrence_formula(eps, l)) << d;
  }
  EXPECT_EQ(recurrence_formula(frac(1, 4), 0), frac(1, 4));
  EXPECT_EQ(recurrence_formula(frac(1, 4), 2), frac(1, 2));
  EXPECT_EQ(recurrence_formula(frac(1, 4), 3), 1);
  EXPECT_THROW(success_recurrence_check(f, 4), DomainError);
}

TEST(Attack, EntropyMatchesClosedForm) {
  const auto f = HashFamily::mul(2);
  const auto [h2, formula2] = posterior_entropy(f, 2);
  EXPECT_EQ(h2, formula2);
  EXPECT_EQ(h2, Log2Sum::term(frac(1, 2), Rational(2)));  // 0.5 bits
  for (const char* d : {"mul:m=2", "mul:m=3", "toeplitz:n=3,m=2", "toeplitz:n=4,m=3"}) {
    const auto g = parse_family(d);
    for (std::uint64_t l = 0; l <= g.tag_count(); ++l) {
      const auto rep = run_attack_exact(g, l);
      EXPECT_TRUE(rep.regular_classes);
      EXPECT_EQ(rep.entropy_bits, rep.entropy_formula_bits) << d << " l=" << l;
    }
  }
  const auto table = parse_family("table:@" + data("inner_product_k16_t4.json"));
  const auto [ht, ft] = posterior_entropy(table, 2);
  EXPECT_EQ(ht, ft);
  EXPECT_EQ(ht, Log2Sum::term(frac(5, 2), Rational(2)));  // 2.5 bits
  EXPECT_DOUBLE_EQ(ht.value(), 2.5);
}

TEST(Attack, EntropyStartsAtLogKAndNeverIncreases) {
  for (const char* d : {"mul:m=3", "toeplitz:n=4,m=3"}) {
    const auto g = parse_family(d);
    EXPECT_EQ(run_attack_exact(g, 0).entropy_bits, Log2Sum::term(Rational(1), Rational(BigInt(g.key_count()))));
    double prev = INFINITY;
    for (std::uint64_t l = 0; l <= g.tag_count(); ++l) {
      const double h = run_attack_exact(g, l).entropy_bits.value();
      EXPECT_LE(h, prev + 1e-12);
      prev = h;
    }
  }
}

TEST(Attack, HypothesisAndDomainChecks) {
  EXPECT_THROW(run_attack_exact(HashFamily::poly(2, 2), 1), HypothesisError);
  EXPECT_THROW(run_attack_exact(HashFamily::counterexample(2), 1), HypothesisError);
  EXPECT_THROW(run_attack_exact(HashFamily::mul(2), 5), DomainError);
  EXPECT_THROW(run_attack_exact(HashFamily::table(1, 2, {"a"}, {0, 1}), 1), HypothesisError);
}

TEST(Attack, PairsAloneLeaveKeyUniform) {
  EXPECT_TRUE(pair_only_posterior_uniform(HashFamily::mul(2), 3));
  EXPECT_TRUE(pair_only_posterior_uniform(HashFamily::toeplitz(2, 2), 2));
}

TEST(Attack, PlayedTranscriptEliminatesInOrder) {
  const auto f = HashFamily::mul(2);
  // k1 = 3: c = h(0) ^ h(1) = 3, so guesses 0, 1, 2 fail and 3 succeeds.
  KeyStream ks(f, 3, {FieldElem(0), FieldElem(1), FieldElem(2), FieldElem(3)});
  ListEliminationAttacker a(0, 1, 4);
  const auto tr = play_attack(f, ks, 4, a);
  EXPECT_TRUE(a.succeeded());
  EXPECT_EQ(a.learned_difference(), FieldElem(3));
  EXPECT_EQ(tr.guesses_eliminated, (std::vector<FieldElem>{FieldElem(0), FieldElem(1), FieldElem(2)}));
  EXPECT_EQ(tr.forgeries(), 1u);
  EXPECT_TRUE(tr.rounds[3].substituted());
}

TEST(MonteCarlo, ExpectedRateAndDeterminism) {
  const auto f = HashFamily::mul(8);
  const auto r = run_attack_montecarlo(f, 16, 100000, 42);
  EXPECT_EQ(r.expected, frac(16, 256));
  EXPECT_TRUE(r.within_three_sigma()) << r.rate;
  const auto again = run_attack_montecarlo(f, 16, 100000, 42);
  EXPECT_EQ(r.successes, again.successes);
  const auto full = run_attack_montecarlo(HashFamily::mul(2), 4, 500, 9);
  EXPECT_EQ(full.successes, 500u);
  EXPECT_DOUBLE_EQ(full.rate, 1.0);
}
