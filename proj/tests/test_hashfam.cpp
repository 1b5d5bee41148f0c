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

#include <fstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wcr/descriptor.hpp"
#include "wcr/measure.hpp"

using namespace wcr;
using oracle::frac;

namespace {

oracle::TagFn eval_of(const HashFamily& f) {
  return [f](std::uint64_t k, std::uint64_t x) { return f.eval(k, x).value; };
}

HashFamily single_key_table() {
  return HashFamily::table(2, 1, {"a", "b", "c"}, {0, 1, 3});
}

std::string data(const char* name) { return std::string(WCR_TEST_DATA) + "/" + name; }

}  // namespace

TEST(HashFamily, MulMatchesFieldOracle) {
  for (unsigned m = 1; m <= 4; ++m) {
    const auto f = HashFamily::mul(m);
    const auto mod = wcr::detail::kDefaultModuli[m];
    for (std::uint64_t k = 0; k < f.key_count(); ++k)
      for (std::uint64_t x = 0; x < f.message_count(); ++x)
        ASSERT_EQ(f.eval(k, x).value, oracle::gf_mul(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(x), m, mod));
  }
  EXPECT_EQ(hash_eval(HashFamily::mul(2), 0b11, 0b10).value, 0b01u);
}

TEST(HashFamily, ToeplitzMatchesMatrixOracle) {
  const unsigned n = 4, m = 3;
  const auto f = HashFamily::toeplitz(n, m);
  ASSERT_EQ(f.key_count(), 64u);
  for (std::uint64_t k = 0; k < f.key_count(); ++k)
    for (std::uint64_t x = 0; x < f.message_count(); ++x) {
      std::uint32_t out = 0;
      for (unsigned i = 0; i < m; ++i) {
        unsigned bit = 0;
        for (unsigned j = 0; j < n; ++j) bit ^= ((k >> (i - j + n - 1)) & 1u) & ((x >> j) & 1u);
        out |= bit << i;
      }
      ASSERT_EQ(f.eval(k, x).value, out) << "k=" << k << " x=" << x;
    }
  for (std::uint64_t x = 0; x < f.message_count(); ++x) EXPECT_EQ(f.eval(0, x).value, 0u);
}

TEST(HashFamily, CounterexampleDefinitionAndMarginal) {
  for (unsigned m = 1; m <= 4; ++m) {
    const auto f = HashFamily::counterexample(m);
    ASSERT_EQ(f.key_count(), (1u << m) - 1);
    std::vector<int> seen(1u << m, 0);
    for (std::uint64_t k = 0; k < f.key_count(); ++k) {
      EXPECT_EQ(f.eval(k, 0).value, 0u);
      ++seen[f.eval(k, 1).value];
    }
    EXPECT_EQ(seen[0], 0);
    for (std::size_t t = 1; t < seen.size(); ++t) EXPECT_EQ(seen[t], 1);
    EXPECT_EQ(measure_axu2(f).epsilon, frac(1, (1u << m) - 1));
  }
}

TEST(HashFamily, LiftedDefinition) {
  const auto base = HashFamily::mul(2);
  const auto g = lift_to_asu2(base);
  ASSERT_EQ(g.key_count(), 16u);
  for (std::uint64_t k = 0; k < 16; ++k)
    for (std::uint64_t x = 0; x < 4; ++x) EXPECT_EQ(g.eval(k, x), base.eval(k / 4, x) ^ FieldElem(k % 4));
}

TEST(HashFamily, EvalRejectsOutOfRange) {
  const auto f = HashFamily::mul(2);
  EXPECT_THROW(f.eval(4, 0), DomainError);
  EXPECT_THROW(f.eval(0, 4), DomainError);
  EXPECT_THROW(HashFamily::poly(16, 3), DomainError);
  EXPECT_THROW(HashFamily::toeplitz(33, 2), DomainError);
  EXPECT_THROW(HashFamily::table(2, 2, {"a"}, {0}), DomainError);
  EXPECT_THROW(HashFamily::table(1, 1, {"a"}, {2}), DomainError);
}

TEST(Measure, MulIsExactlyTwoToMinusM) {
  for (unsigned m = 1; m <= 8; ++m) {
    const auto f = HashFamily::mul(m);
    const auto got = measure_axu2(f);
    EXPECT_EQ(got.epsilon, frac(1, 1u << m)) << "m=" << m;
    if (m <= 4) {
      EXPECT_EQ(got.epsilon, oracle::axu2(eval_of(f), f.key_count(), f.message_count(), f.tag_count()));
    }
  }
}

TEST(Measure, PolyWithinBlockBound) {
  const auto p2 = HashFamily::poly(4, 2);
  const auto e2 = measure_axu2(p2).epsilon;
  EXPECT_EQ(e2, frac(2, 16));
  EXPECT_EQ(e2, oracle::axu2(eval_of(p2), p2.key_count(), p2.message_count(), p2.tag_count()));
  const auto p3 = HashFamily::poly(4, 3);
  const auto e3 = measure_axu2(p3, Budget{1ull << 29}).epsilon;
  EXPECT_LE(e3, frac(3, 16));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned L = 1; L <= 3; ++L) {
      const auto p = HashFamily::poly(m, L);
      const auto e = measure_axu2(p).epsilon;
      EXPECT_LE(e, frac(L, 1u << m)) << "m=" << m << " L=" << L;
      EXPECT_EQ(e, oracle::axu2(eval_of(p), p.key_count(), p.message_count(), p.tag_count()));
    }
}

TEST(Measure, ToeplitzIsTwoToMinusM) {
  for (auto [n, m] : {std::pair{4u, 3u}, std::pair{3u, 2u}, std::pair{2u, 2u}, std::pair{5u, 1u}}) {
    const auto f = HashFamily::toeplitz(n, m);
    const auto e = measure_axu2(f).epsilon;
    EXPECT_EQ(e, frac(1, 1u << m)) << n << "x" << m;
    EXPECT_EQ(e, oracle::axu2(eval_of(f), f.key_count(), f.message_count(), f.tag_count()));
  }
}

TEST(Measure, WitnessAttainsEpsilonAndIsLexicographicallyFirst) {
  const auto f = HashFamily::mul(2);
  const auto got = measure_axu2(f);
  ASSERT_TRUE(got.witness);
  EXPECT_EQ(got.witness->x1, 0u);
  EXPECT_EQ(got.witness->x2, 1u);
  EXPECT_EQ(got.witness->t, FieldElem(0));
  const auto constant = HashFamily::table(2, 3, {"a", "b"}, {1, 1, 2, 2, 0, 0});
  const auto c = measure_axu2(constant);
  EXPECT_EQ(c.epsilon, 1);
  EXPECT_EQ(c.witness->t, FieldElem(0));
}

TEST(Measure, AsuOfLiftMatchesAxu) {
  for (const auto& f : {HashFamily::mul(1), HashFamily::mul(2), HashFamily::mul(3), HashFamily::toeplitz(3, 2),
                        HashFamily::poly(2, 2), HashFamily::counterexample(2)}) {
    const auto g = lift_to_asu2(f);
    const auto asu = measure_asu2(g).epsilon;
    const auto axu = measure_axu2(f).epsilon;
    EXPECT_LE(asu, axu) << f.descriptor();
    EXPECT_EQ(asu, oracle::asu2(eval_of(g), g.key_count(), g.message_count(), g.tag_count())) << f.descriptor();
    if (f.descriptor().rfind("mul", 0) == 0 || f.descriptor().rfind("toeplitz", 0) == 0) {
      EXPECT_EQ(asu, axu);
    }
  }
  EXPECT_EQ(measure_asu2(lift_to_asu2(HashFamily::mul(2))).epsilon, frac(1, 4));
}

TEST(Measure, DegenerateFamilies) {
  const auto single = single_key_table();
  EXPECT_EQ(measure_asu2(single).epsilon, 4);
  EXPECT_EQ(measure_axu2(single).epsilon, 1);
  const auto one_message = HashFamily::table(2, 2, {"only"}, {1, 2});
  EXPECT_EQ(measure_axu2(one_message).epsilon, 0);
  EXPECT_FALSE(measure_axu2(one_message).witness);
  EXPECT_EQ(measure_asu2(lift_to_asu2(one_message)).epsilon, 0);
}

TEST(Measure, AsuTableFixture) {
  const auto f = parse_family("table:@" + data("affine_asu_k16_x4.json"));
  EXPECT_EQ(measure_asu2(f).epsilon, frac(1, 4));
  EXPECT_EQ(measure_asu2(f).epsilon, oracle::asu2(eval_of(f), 16, 4, 4));
  EXPECT_TRUE(measure_tag_marginal(f).uniform);
}

TEST(Measure, TagMarginalReportsNonUniformity) {
  const auto m = measure_tag_marginal(HashFamily::mul(2));
  EXPECT_FALSE(m.uniform);  // x = 0 always hashes to 0
  EXPECT_EQ(m.max_probability, 1);
  EXPECT_EQ(m.min_probability, 0);
}

TEST(Measure, BudgetRefusalAndSampling) {
  const auto f = HashFamily::mul(16);
  EXPECT_THROW(measure_axu2(f), BudgetExceeded);
  const auto s = sample_axu2(f, 4096, 7);
  EXPECT_GT(s.pairs_tested, 0u);
  EXPECT_LE(s.lower, s.upper);
  const auto again = sample_axu2(f, 4096, 7);
  EXPECT_EQ(s.estimate, again.estimate);
  const auto small = sample_axu2(HashFamily::mul(3), 20000, 1);
  EXPECT_LE(small.lower, 0.125 + 1e-12);
  EXPECT_GE(small.upper, 0.125 - 1e-12);
}

TEST(Descriptor, CanonicalRoundTrip) {
  for (const char* d : {"mul:m=2", "poly:m=4,L=2", "toeplitz:n=4,m=3", "counterexample:m=3", "lift:mul:m=2",
                        "lift:lift:toeplitz:n=2,m=1"}) {
    const auto f = parse_family(d);
    EXPECT_EQ(f.descriptor(), d);
    EXPECT_EQ(parse_family(f.descriptor()).descriptor(), d);
  }
  const auto path = data("inner_product_k16_t4.json");
  EXPECT_EQ(parse_family("table:@" + path).descriptor(), "table:@" + path);
}

TEST(Descriptor, TableJsonRoundTrip) {
  const auto f = HashFamily::toeplitz(3, 2);
  const auto back = table_from_json(table_to_json(f));
  ASSERT_EQ(back.key_count(), f.key_count());
  ASSERT_EQ(back.message_count(), f.message_count());
  ASSERT_EQ(back.tag_bits(), f.tag_bits());
  for (std::uint64_t k = 0; k < f.key_count(); ++k)
    for (std::uint64_t x = 0; x < f.message_count(); ++x) EXPECT_EQ(back.eval(k, x), f.eval(k, x));
  EXPECT_EQ(measure_axu2(back).epsilon, measure_axu2(f).epsilon);
}

TEST(Descriptor, Errors) {
  for (const char* bad : {"mul", "mul:m=", "mul:m=0", "mul:m=17", "mul:m=2,m=3", "mul:q=2", "poly:m=4", "poly:m=16,L=3",
                          "toeplitz:n=4", "frob:m=2", "table:nofile", "table:@/nonexistent.json", "lift:", "mul:m=x"})
    EXPECT_THROW(parse_family(bad), DescriptorError) << bad;
  EXPECT_THROW(table_from_json(nlohmann::json::parse(R"({"keys":2,"messages":["a"],"table":[[0]]})")), DescriptorError);
  EXPECT_THROW(table_from_json(nlohmann::json::parse(R"({"keys":1,"messages":["a"],"table":[[-1]]})")), DescriptorError);
  EXPECT_THROW(table_from_json(nlohmann::json::parse(R"({"keys":1,"messages":["a"]})")), DescriptorError);
  EXPECT_THROW(table_from_json(nlohmann::json::parse(R"([1,2])")), DescriptorError);
}
