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
#include <functional>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "wcr/rational.hpp"

namespace wcr {

/// Finite distribution over ordered labels with exact weights. Zero-weight
/// entries are never stored.
template <std::totally_ordered Label>
class Dist {
 public:
  using container = std::map<Label, Rational>;

  Dist() = default;

  static Dist point(Label l) {
    Dist d;
    d.add(std::move(l), Rational(1));
    return d;
  }

  void add(const Label& l, const Rational& w) {
    if (w < 0) throw std::invalid_argument("negative probability weight");
    if (w == 0) return;
    weights_[l] += w;
  }

  Rational operator[](const Label& l) const {
    auto it = weights_.find(l);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  Rational total() const {
    Rational s(0);
    for (const auto& [_, w] : weights_) s += w;
    return s;
  }

  bool normalized() const { return total() == 1; }

  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  /// Pushforward along `f`.
  template <class F>
  auto map(F&& f) const {
    using Out = std::decay_t<std::invoke_result_t<F&, const Label&>>;
    Dist<Out> out;
    for (const auto& [l, w] : weights_) out.add(f(l), w);
    return out;
  }

  /// Probability of the labels satisfying `pred`.
  template <class Pred>
  Rational probability(Pred&& pred) const {
    Rational s(0);
    for (const auto& [l, w] : weights_)
      if (pred(l)) s += w;
    return s;
  }

  bool operator==(const Dist&) const = default;

 private:
  container weights_;
};

/// (1/2) sum |p - q| over the union of supports.
template <class Label>
Rational total_variation(const Dist<Label>& p, const Dist<Label>& q) {
  Rational acc(0);
  auto a = p.begin();
  auto b = q.begin();
  while (a != p.end() || b != q.end()) {
    if (b == q.end() || (a != p.end() && a->first < b->first)) {
      acc += a->second;
      ++a;
    } else if (a == p.end() || b->first < a->first) {
      acc += b->second;
      ++b;
    } else {
      acc += a->second > b->second ? a->second - b->second : b->second - a->second;
      ++a;
      ++b;
    }
  }
  return acc / 2;
}

}  // namespace wcr
