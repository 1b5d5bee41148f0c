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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wcr {

/// Out-of-range key, message or tag.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact enumeration would exceed the configured cell budget. Callers
/// must ask for sampling mode explicitly.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + ": needs " + std::to_string(required) +
                           " cells, budget is " + std::to_string(budget) +
                           " (request sampling mode instead)"),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A family does not satisfy the hypothesis an experiment needs.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact-mode work limit, counted in enumeration cells.
struct Budget {
  static constexpr std::uint64_t kDefaultCells = std::uint64_t{1} << 24;
  std::uint64_t cells = kDefaultCells;

  void require(std::uint64_t needed, const std::string& what) const {
    if (needed > cells) throw BudgetExceeded(what, needed, cells);
  }
};

/// Saturating product used for budget arithmetic.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace wcr
