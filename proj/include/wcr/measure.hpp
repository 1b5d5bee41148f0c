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
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wcr/errors.hpp"
#include "wcr/hash_family.hpp"
#include "wcr/rational.hpp"

namespace wcr {

struct AxuWitness {
  MessageId x1 = 0;
  MessageId x2 = 0;
  FieldElem t;
  bool operator==(const AxuWitness&) const = default;
};

struct AsuWitness {
  MessageId x1 = 0;
  MessageId x2 = 0;
  FieldElem t1;
  FieldElem t2;
  bool operator==(const AsuWitness&) const = default;
};

/// Exact ε with the lexicographically first (x1 < x2, t...) attaining it.
/// No witness when |X| = 1; ε is then 0 (the universal_2 condition is vacuous).
template <class Witness>
struct Measurement {
  Rational epsilon;
  std::optional<Witness> witness;
};

using AxuMeasurement = Measurement<AxuWitness>;
using AsuMeasurement = Measurement<AsuWitness>;

/// Work of an exact ε measurement: |K| * |X|^2 key-pair cells.
inline std::uint64_t measurement_cells(const HashFamily& fam) {
  return saturating_mul(fam.key_count(), saturating_mul(fam.message_count(), fam.message_count()));
}

/// max over x1 != x2, t of Pr_k[h_k(x1) ^ h_k(x2) = t].
inline AxuMeasurement measure_axu2(const HashFamily& fam, const Budget& budget = {}) {
  budget.require(measurement_cells(fam), "exact AXU_2 measurement of " + fam.descriptor());
  const EvalTable table(fam, budget);
  const std::uint64_t keys = table.keys();
  AxuMeasurement out{Rational(0), std::nullopt};
  std::uint64_t best = 0;
  std::vector<std::uint64_t> hist(table.tags(), 0);
  for (MessageId x1 = 0; x1 < table.messages(); ++x1) {
    for (MessageId x2 = x1 + 1; x2 < table.messages(); ++x2) {
      std::fill(hist.begin(), hist.end(), 0);
      for (KeyIndex k = 0; k < keys; ++k) ++hist[table(k, x1) ^ table(k, x2)];
      for (std::uint32_t t = 0; t < hist.size(); ++t) {
        if (!out.witness || hist[t] > best) {
          best = hist[t];
          out.witness = AxuWitness{x1, x2, FieldElem(t)};
        }
      }
    }
  }
  if (out.witness) out.epsilon = Rational(BigInt(best), BigInt(keys));
  return out;
}

/// max over x1 != x2, t1, t2 of |T| * Pr_k[h_k(x1) = t1 and h_k(x2) = t2].
inline AsuMeasurement measure_asu2(const HashFamily& fam, const Budget& budget = {}) {
  budget.require(measurement_cells(fam), "exact ASU_2 measurement of " + fam.descriptor());
  const EvalTable table(fam, budget);
  const std::uint64_t keys = table.keys();
  const std::uint64_t tags = table.tags();
  AsuMeasurement out{Rational(0), std::nullopt};
  std::uint64_t best = 0;
  // Sparse joint histogram: only touched cells are scanned and reset.
  std::vector<std::uint64_t> joint(tags * tags, 0);
  std::vector<std::uint64_t> touched;
  for (MessageId x1 = 0; x1 < table.messages(); ++x1) {
    for (MessageId x2 = x1 + 1; x2 < table.messages(); ++x2) {
      touched.clear();
      for (KeyIndex k = 0; k < keys; ++k) {
        const std::uint64_t cell = std::uint64_t{table(k, x1)} * tags + table(k, x2);
        if (joint[cell]++ == 0) touched.push_back(cell);
      }
      std::sort(touched.begin(), touched.end());
      if (!out.witness) {
        // Every (t1, t2) is a candidate, including zero-probability ones.
        best = 0;
        out.witness = AsuWitness{x1, x2, FieldElem(0), FieldElem(0)};
      }
      for (auto cell : touched) {
        if (joint[cell] > best) {
          best = joint[cell];
          out.witness = AsuWitness{x1, x2, FieldElem(static_cast<std::uint32_t>(cell / tags)),
                                   FieldElem(static_cast<std::uint32_t>(cell % tags))};
        }
        joint[cell] = 0;
      }
    }
  }
  if (out.witness) out.epsilon = Rational(BigInt(best) * tags, BigInt(keys));
  return out;
}

/// Extremes of the per-message tag marginal Pr_k[h_k(x) = t]. The
/// authentication proofs never require it to be uniform; it is reported only.
struct TagMarginal {
  Rational max_probability;
  Rational min_probability;
  bool uniform = false;
};

inline TagMarginal measure_tag_marginal(const HashFamily& fam, const Budget& budget = {}) {
  budget.require(saturating_mul(fam.table_cells(), fam.tag_count()), "tag marginal of " + fam.descriptor());
  const EvalTable table(fam, budget);
  std::uint64_t hi = 0;
  std::uint64_t lo = UINT64_MAX;
  std::vector<std::uint64_t> hist(table.tags());
  for (MessageId x = 0; x < table.messages(); ++x) {
    std::fill(hist.begin(), hist.end(), 0);
    for (KeyIndex k = 0; k < table.keys(); ++k) ++hist[table(k, x)];
    for (auto c : hist) {
      hi = std::max(hi, c);
      lo = std::min(lo, c);
    }
  }
  const BigInt keys(table.keys());
  TagMarginal out{Rational(BigInt(hi), keys), Rational(BigInt(lo), keys), hi == lo};
  return out;
}

/// Sampling-mode AXU_2 estimate for families beyond the exact budget. The
/// estimate is the largest empirical difference frequency over the tested
/// pairs; the interval is that frequency +- 3 binomial standard deviations.
struct SampledEpsilon {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t key_samples = 0;
  std::uint64_t pairs_tested = 0;
};

inline SampledEpsilon sample_axu2(const HashFamily& fam, std::uint64_t key_samples, std::uint64_t seed,
                                  std::uint64_t max_pairs = 64) {
  if (key_samples == 0) throw DomainError("sampling mode needs at least one key sample");
  SampledEpsilon out;
  out.key_samples = key_samples;
  const std::uint64_t n = fam.message_count();
  if (n < 2) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_key(0, fam.key_count() - 1);
  std::uniform_int_distribution<std::uint64_t> pick_msg(0, n - 1);
  std::vector<KeyIndex> keys(key_samples);
  for (auto& k : keys) k = pick_key(rng);

  std::vector<std::pair<MessageId, MessageId>> pairs;
  const bool enumerate_all = n <= 12;  // 66 pairs or fewer
  if (enumerate_all) {
    for (MessageId a = 0; a < n; ++a)
      for (MessageId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  } else {
    while (pairs.size() < max_pairs) {
      const auto a = pick_msg(rng);
      const auto b = pick_msg(rng);
      if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::vector<std::uint64_t> hist(fam.tag_count());
  std::uint64_t best = 0;
  for (auto [a, b] : pairs) {
    std::fill(hist.begin(), hist.end(), 0);
    for (auto k : keys) ++hist[(fam.eval_unchecked(k, a) ^ fam.eval_unchecked(k, b)).value];
    best = std::max(best, *std::max_element(hist.begin(), hist.end()));
  }
  out.pairs_tested = pairs.size();
  const double p = static_cast<double>(best) / static_cast<double>(key_samples);
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(key_samples));
  out.estimate = p;
  out.lower = std::max(0.0, p - 3.0 * sigma);
  out.upper = std::min(1.0, p + 3.0 * sigma);
  return out;
}

}  // namespace wcr
