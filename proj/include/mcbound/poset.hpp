// Copyright 2026 The mcbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace mcbound {

/// A partial order on a finite, labelled ground set.
///
/// The relation is stored densely; `leq(i, j)` means state i sits below (or
/// equals) state j. The graph of the order is the set of pairs (i, j) with
/// `leq(i, j)`. Construction checks reflexivity, antisymmetry and
/// transitivity and throws DomainError on the first violation found.
class FinitePoset {
 public:
  FinitePoset(std::vector<std::string> labels,
              const std::vector<std::vector<bool>>& relation);

  /// Labels default to "0", "1", ...
  explicit FinitePoset(const std::vector<std::vector<bool>>& relation);

  static FinitePoset chain(std::size_t n);
  static FinitePoset identity(std::size_t n);
  /// Total order induced by the real values (ties are rejected).
  static FinitePoset from_reals(std::span<const double> values);

  std::size_t size() const noexcept { return n_; }
  bool leq(std::size_t i, std::size_t j) const { return rel_[i * n_ + j] != 0; }
  bool leq(std::string_view a, std::string_view b) const;

  std::size_t index_of(std::string_view label) const;
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// States strictly above i.
  const std::vector<std::size_t>& strictly_above(std::size_t i) const {
    return above_[i];
  }
  /// A linear extension, maximal elements first.
  const std::vector<std::size_t>& top_down_order() const noexcept {
    return top_down_;
  }

  /// Dense relation matrix (row-major booleans), as accepted by the constructor.
  std::vector<std::vector<bool>> relation() const;

 private:
  void validate_and_index();

  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> rel_;
  std::vector<std::vector<std::size_t>> above_;
  std::vector<std::size_t> top_down_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Membership vector over the states of a poset.
using StateSet = std::vector<bool>;

/// Bitmask form of a state subset; usable when the poset has at most 20 states.
using UpSetMask = std::uint32_t;

inline constexpr std::size_t kMaxEnumerableStates = 20;

bool is_up_set(const FinitePoset& poset, const StateSet& members);

/// Every up-set of the poset, including the empty set and the full set.
/// Throws CapacityError above kMaxEnumerableStates; callers with larger
/// posets should go through the min-cut routines in finite_core.
std::vector<UpSetMask> enumerate_up_sets(const FinitePoset& poset);

StateSet mask_to_set(UpSetMask mask, std::size_t n);

// Orders on the real line and on real vectors.
struct IdentityOrder {};
struct TotalRealOrder {};
struct ProductRealOrder {
  std::size_t dim = 1;
};
using OrderKind = std::variant<IdentityOrder, TotalRealOrder, ProductRealOrder>;

/// x <= y under the given order. Throws DomainError when the dimensions do
/// not fit the order (a total order needs scalars).
bool leq(const OrderKind& order, std::span<const double> x,
         std::span<const double> y);

inline bool leq(const OrderKind& order, double x, double y) {
  return leq(order, std::span<const double>(&x, 1),
             std::span<const double>(&y, 1));
}

bool leq(const FinitePoset& poset, std::string_view x, std::string_view y);

std::string order_name(const OrderKind& order);

}  // namespace mcbound
