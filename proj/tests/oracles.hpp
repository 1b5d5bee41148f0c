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

// Slow, independent reference implementations. Nothing here calls the
// library's measurement, simulation or attack code; only HashFamily::eval is
// used where a family's definition is the thing under test elsewhere.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "wcr/entropy.hpp"
#include "wcr/hash_family.hpp"
#include "wcr/rational.hpp"

namespace oracle {

using wcr::BigInt;
using wcr::Rational;

inline Rational frac(std::uint64_t n, std::uint64_t d) { return Rational(BigInt(n), BigInt(d)); }

// Schoolbook GF(2)[x] product followed by long division.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t modulus) {
  std::uint64_t prod = 0;
  for (unsigned i = 0; i < m; ++i)
    if ((b >> i) & 1u) prod ^= static_cast<std::uint64_t>(a) << i;
  for (int deg = 2 * static_cast<int>(m) - 2; deg >= static_cast<int>(m); --deg)
    if ((prod >> deg) & 1u) prod ^= static_cast<std::uint64_t>(modulus) << (deg - static_cast<int>(m));
  return static_cast<std::uint32_t>(prod);
}

// Log / antilog tables from a primitive element found by search.
struct LogTables {
  std::vector<std::uint32_t> exp;
  std::vector<int> log;
  unsigned m;

  LogTables(unsigned bits, std::uint32_t modulus) : m(bits) {
    const std::uint32_t n = (1u << m) - 1;
    for (std::uint32_t g = 2; g <= n + 1; ++g) {
      exp.assign(n, 0);
      log.assign(n + 1, -1);
      std::uint32_t v = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (log[v] != -1) {
          primitive = false;
          break;
        }
        exp[i] = v;
        log[v] = static_cast<int>(i);
        v = gf_mul(v, g, m, modulus);
      }
      if (primitive) return;
    }
    if (m == 1) {  // GF(2): the only nonzero element is 1
      exp = {1};
      log = {-1, 0};
    }
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    const std::size_t n = exp.size();
    return exp[(static_cast<std::size_t>(log[a]) + static_cast<std::size_t>(log[b])) % n];
  }
};

using TagFn = std::function<std::uint32_t(std::uint64_t key, std::uint64_t x)>;

// max over x1 != x2, t of Pr_k[h(x1) ^ h(x2) = t], counting keys per t.
inline Rational axu2(const TagFn& h, std::uint64_t keys, std::uint64_t messages, std::uint64_t tags) {
  std::uint64_t best = 0;
  for (std::uint64_t a = 0; a < messages; ++a)
    for (std::uint64_t b = 0; b < messages; ++b) {
      if (a == b) continue;
      for (std::uint64_t t = 0; t < tags; ++t) {
        std::uint64_t n = 0;
        for (std::uint64_t k = 0; k < keys; ++k) n += (h(k, a) ^ h(k, b)) == t;
        best = std::max(best, n);
      }
    }
  return messages < 2 ? Rational(0) : frac(best, keys);
}

// |T| * max over x1 != x2, t1, t2 of Pr_k[h(x1) = t1, h(x2) = t2].
inline Rational asu2(const TagFn& h, std::uint64_t keys, std::uint64_t messages, std::uint64_t tags) {
  std::uint64_t best = 0;
  for (std::uint64_t a = 0; a < messages; ++a)
    for (std::uint64_t b = 0; b < messages; ++b) {
      if (a == b) continue;
      for (std::uint64_t t1 = 0; t1 < tags; ++t1)
        for (std::uint64_t t2 = 0; t2 < tags; ++t2) {
          std::uint64_t n = 0;
          for (std::uint64_t k = 0; k < keys; ++k) n += h(k, a) == t1 && h(k, b) == t2;
          best = std::max(best, n);
        }
    }
  return messages < 2 ? Rational(0) : frac(best * tags, keys);
}

// A one-round scheme as plain callbacks; enc returns (u, t), dec returns
// the decoded message or nothing, key_out the recycled key when there is one.
struct Scheme {
  std::uint64_t keys;
  std::uint64_t messages;
  std::uint64_t tags;
  std::uint64_t fresh;  // size of the recycled key space (1 if none)
  bool recycles;
  std::function<std::pair<std::uint64_t, std::uint32_t>(std::uint64_t, std::uint64_t)> enc;
  std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t, std::uint32_t)> dec;
  std::function<std::uint64_t(std::uint64_t)> key_out;
};

inline Scheme wegman_carter(const wcr::HashFamily& fam) {
  const std::uint64_t T = fam.tag_count();
  Scheme s{fam.key_count() * T, fam.message_count(), T, fam.key_count(), true, {}, {}, {}};
  s.enc = [fam, T](std::uint64_t key, std::uint64_t x) {
    return std::pair{x, fam.eval(key / T, x).value ^ static_cast<std::uint32_t>(key % T)};
  };
  s.dec = [fam, T](std::uint64_t key, std::uint64_t u, std::uint32_t t) -> std::optional<std::uint64_t> {
    if (u >= fam.message_count()) return std::nullopt;
    if ((fam.eval(key / T, u).value ^ static_cast<std::uint32_t>(key % T)) != t) return std::nullopt;
    return u;
  };
  s.key_out = [T](std::uint64_t key) { return key / T; };
  return s;
}

inline Scheme standard(const wcr::HashFamily& fam) {
  Scheme s{fam.key_count(), fam.message_count(), fam.tag_count(), 1, false, {}, {}, {}};
  s.enc = [fam](std::uint64_t key, std::uint64_t x) { return std::pair{x, fam.eval(key, x).value}; };
  s.dec = [fam](std::uint64_t key, std::uint64_t u, std::uint32_t t) -> std::optional<std::uint64_t> {
    if (u >= fam.message_count() || fam.eval(key, u).value != t) return std::nullopt;
    return u;
  };
  s.key_out = [](std::uint64_t) { return 0; };
  return s;
}

// (x, u, t) -> (u', t')
using Substitution = std::function<std::pair<std::uint64_t, std::uint32_t>(std::uint64_t, std::uint64_t, std::uint32_t)>;

// Label: x, u, t, u', t', output (-1 = reject), key (-1 = none).
using Label = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t>;
using Distribution = std::map<Label, Rational>;

inline Rational tv(const Distribution& p, const Distribution& q) {
  Distribution all = p;
  for (const auto& [l, _] : q) all.emplace(l, Rational(0));
  Rational s(0);
  for (const auto& [l, _] : all) {
    const Rational a = p.count(l) ? p.at(l) : Rational(0);
    const Rational b = q.count(l) ? q.at(l) : Rational(0);
    s += a > b ? a - b : b - a;
  }
  return s / 2;
}

// Substitution-mode distance for message distribution px.
inline Rational substitution_distance(const Scheme& s, const std::vector<Rational>& px, const Substitution& sub) {
  Distribution real, ideal;
  for (std::uint64_t x = 0; x < px.size(); ++x) {
    if (px[x] == 0) continue;
    for (std::uint64_t k = 0; k < s.keys; ++k) {
      const auto [u, t] = s.enc(k, x);
      const auto [u2, t2] = sub(x, u, t);
      const auto out = s.dec(k, u2, t2);
      const std::int64_t key = s.recycles ? static_cast<std::int64_t>(s.key_out(k)) : -1;
      real[Label(x, u, t, u2, t2, out ? static_cast<std::int64_t>(*out) : -1, key)] += px[x] * frac(1, s.keys);
      // Ideal: same (u, t) law, accept iff untouched, independent fresh key.
      const std::int64_t ideal_out = (u2 == u && t2 == t) ? static_cast<std::int64_t>(x) : -1;
      for (std::uint64_t f = 0; f < s.fresh; ++f)
        ideal[Label(x, u, t, u2, t2, ideal_out, s.recycles ? static_cast<std::int64_t>(f) : -1)] +=
            px[x] * frac(1, s.keys * s.fresh);
    }
  }
  return tv(real, ideal);
}

inline Rational impersonation_distance(const Scheme& s, std::uint64_t u, std::uint32_t t) {
  Distribution real, ideal;
  for (std::uint64_t k = 0; k < s.keys; ++k) {
    const auto out = s.dec(k, u, t);
    real[Label(-1, -1, -1, u, t, out ? static_cast<std::int64_t>(*out) : -1,
               s.recycles ? static_cast<std::int64_t>(s.key_out(k)) : -1)] += frac(1, s.keys);
  }
  for (std::uint64_t f = 0; f < s.fresh; ++f)
    ideal[Label(-1, -1, -1, u, t, -1, s.recycles ? static_cast<std::int64_t>(f) : -1)] += frac(1, s.fresh);
  return tv(real, ideal);
}

// Max over point-mass x and every map from the reachable encodings of x to
// arbitrary encodings. Exponential; only for tiny schemes.
inline Rational brute_force_substitution(const Scheme& s) {
  Rational best(0);
  const std::uint64_t space = s.messages * s.tags;
  for (std::uint64_t x = 0; x < s.messages; ++x) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> reach;
    for (std::uint64_t k = 0; k < s.keys; ++k) {
      const auto y = s.enc(k, x);
      if (std::find(reach.begin(), reach.end(), y) == reach.end()) reach.push_back(y);
    }
    std::vector<std::uint64_t> choice(reach.size(), 0);
    std::vector<Rational> px(s.messages, Rational(0));
    px[x] = 1;
    while (true) {
      const Substitution sub = [&](std::uint64_t, std::uint64_t u, std::uint32_t t) {
        for (std::size_t i = 0; i < reach.size(); ++i)
          if (reach[i] == std::pair{u, t}) return std::pair{choice[i] / s.tags, static_cast<std::uint32_t>(choice[i] % s.tags)};
        return std::pair{u, t};
      };
      best = std::max(best, substitution_distance(s, px, sub));
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == space) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  }
  return best;
}

inline Rational brute_force_impersonation(const Scheme& s) {
  Rational best(0);
  for (std::uint64_t u = 0; u < s.messages; ++u)
    for (std::uint32_t t = 0; t < s.tags; ++t) best = std::max(best, impersonation_distance(s, u, t));
  return best;
}

// List-elimination attack played over every (k1, pad sequence): the success
// probability and H(K1 | full transcript) built from joint counts.
struct AttackOracle {
  Rational success;
  wcr::Log2Sum entropy;
};

inline AttackOracle attack(const wcr::HashFamily& fam, std::uint64_t rounds) {
  const std::uint64_t K = fam.key_count(), T = fam.tag_count();
  std::uint64_t seqs = 1;
  for (std::uint64_t i = 0; i < rounds; ++i) seqs *= T;
  std::map<std::vector<std::int64_t>, std::map<std::uint64_t, std::uint64_t>> joint;
  std::uint64_t wins = 0;
  for (std::uint64_t k1 = 0; k1 < K; ++k1)
    for (std::uint64_t s = 0; s < seqs; ++s) {
      std::vector<std::int64_t> z;
      std::uint32_t guess = 0;
      bool done = false;
      std::uint64_t v = s;
      for (std::uint64_t i = 0; i < rounds; ++i, v /= T) {
        const auto pad = static_cast<std::uint32_t>(v % T);
        const std::uint32_t t = fam.eval(k1, 0).value ^ pad;
        z.push_back(t);
        if (done) {
          z.push_back(-1);
          continue;
        }
        const std::uint32_t forged = t ^ guess;
        const bool ok = (fam.eval(k1, 1).value ^ pad) == forged;
        z.push_back(ok);
        if (ok) done = true;
        else ++guess;
      }
      wins += done;
      ++joint[z][k1];
    }
  AttackOracle o;
  const Rational total = frac(K, 1) * seqs;
  o.success = Rational(BigInt(wins)) / total;
  // H(K|Z) = sum_{z,k} P(z,k) log2(P(z) / P(z,k)).
  for (const auto& [z, per_key] : joint) {
    std::uint64_t nz = 0;
    for (const auto& [_, n] : per_key) nz += n;
    for (const auto& [_, n] : per_key) o.entropy.add_log2(Rational(BigInt(n)) / total, frac(nz, n));
  }
  return o;
}

}  // namespace oracle
