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

#include "mcbound/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels,
                         const std::vector<std::vector<bool>>& relation)
    : n_(labels.size()), labels_(std::move(labels)), rel_(n_ * n_, 0) {
  if (relation.size() != n_) {
    throw DomainError("relation matrix has " + std::to_string(relation.size()) +
                      " rows for " + std::to_string(n_) + " states");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (relation[i].size() != n_) {
      throw DomainError("relation row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n_; ++j) rel_[i * n_ + j] = relation[i][j] ? 1 : 0;
  }
  validate_and_index();
}

FinitePoset::FinitePoset(const std::vector<std::vector<bool>>& relation)
    : FinitePoset(default_labels(relation.size()), relation) {}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) rel[i][j] = true;
  return FinitePoset(rel);
}

FinitePoset FinitePoset::identity(std::size_t n) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  return FinitePoset(rel);
}

FinitePoset FinitePoset::from_reals(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream os;
    os.precision(17);
    os << values[i];
    labels[i] = os.str();
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = values[i] <= values[j];
  }
  return FinitePoset(std::move(labels), rel);
}

void FinitePoset::validate_and_index() {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!leq(i, i)) {
      throw DomainError("relation is not reflexive at state " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (leq(i, j) && leq(j, i)) {
        throw DomainError("relation is not antisymmetric at states " +
                          std::to_string(i) + ", " + std::to_string(j));
      }
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        if (leq(j, k) && !leq(i, k)) {
          throw DomainError("relation is not transitive at states " +
                            std::to_string(i) + ", " + std::to_string(j) + ", " +
                            std::to_string(k));
        }
      }
    }
  }

  above_.assign(n_, {});
  std::vector<std::size_t> up_count(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && leq(i, j)) above_[i].push_back(j);
    }
    up_count[i] = above_[i].size();
  }
  // A state with fewer strict successors can never sit below one with more,
  // so sorting by that count gives a linear extension read from the top.
  top_down_.resize(n_);
  std::iota(top_down_.begin(), top_down_.end(), std::size_t{0});
  std::stable_sort(top_down_.begin(), top_down_.end(),
                   [&](std::size_t a, std::size_t b) { return up_count[a] < up_count[b]; });

  index_.clear();
  for (std::size_t i = 0; i < n_; ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw DomainError("duplicate state label '" + labels_[i] + "'");
    }
  }
}

bool FinitePoset::leq(std::string_view a, std::string_view b) const {
  return leq(index_of(a), index_of(b));
}

std::size_t FinitePoset::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw DomainError("unknown state label '" + std::string(label) + "'");
  }
  return it->second;
}

std::vector<std::vector<bool>> FinitePoset::relation() const {
  std::vector<std::vector<bool>> rel(n_, std::vector<bool>(n_, false));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rel[i][j] = leq(i, j);
  return rel;
}

bool is_up_set(const FinitePoset& poset, const StateSet& members) {
  if (members.size() != poset.size()) {
    throw DomainError("state subset has wrong dimension");
  }
  for (std::size_t i = 0; i < poset.size(); ++i) {
    if (!members[i]) continue;
    for (std::size_t j : poset.strictly_above(i)) {
      if (!members[j]) return false;
    }
  }
  return true;
}

std::vector<UpSetMask> enumerate_up_sets(const FinitePoset& poset) {
  const std::size_t n = poset.size();
  if (n > kMaxEnumerableStates) {
    throw CapacityError("up-set enumeration is limited to " +
                        std::to_string(kMaxEnumerableStates) + " states (got " +
                        std::to_string(n) + "); use the min-cut routines instead");
  }
  const auto& order = poset.top_down_order();
  std::vector<UpSetMask> above_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : poset.strictly_above(i)) above_mask[i] |= UpSetMask{1} << j;

  // Decide states top-down; a state may join only once everything above it has.
  std::vector<UpSetMask> out;
  std::vector<std::pair<std::size_t, UpSetMask>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [depth, mask] = stack.back();
    stack.pop_back();
    if (depth == n) {
      out.push_back(mask);
      continue;
    }
    const std::size_t s = order[depth];
    stack.emplace_back(depth + 1, mask);
    if ((mask & above_mask[s]) == above_mask[s]) {
      stack.emplace_back(depth + 1, mask | (UpSetMask{1} << s));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StateSet mask_to_set(UpSetMask mask, std::size_t n) {
  StateSet set(n, false);
  for (std::size_t i = 0; i < n; ++i) set[i] = ((mask >> i) & 1U) != 0;
  return set;
}

bool leq(const OrderKind& order, std::span<const double> x,
         std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("order comparison of mismatched dimensions");
  return std::visit(
      [&](const auto& o) -> bool {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IdentityOrder>) {
          return std::equal(x.begin(), x.end(), y.begin());
        } else if constexpr (std::is_same_v<T, TotalRealOrder>) {
          if (x.size() != 1) throw DomainError("total_real order compares scalars only");
          return x[0] <= y[0];
        } else {
          if (x.size() != o.dim) {
            throw DomainError("product_real(" + std::to_string(o.dim) +
                              ") order given vectors of dimension " +
                              std::to_string(x.size()));
          }
          for (std::size_t k = 0; k < x.size(); ++k)
            if (!(x[k] <= y[k])) return false;
          return true;
        }
      },
      order);
}

bool leq(const FinitePoset& poset, std::string_view x, std::string_view y) {
  return poset.leq(x, y);
}

std::string order_name(const OrderKind& order) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, IdentityOrder>) return "identity";
        else if constexpr (std::is_same_v<T, TotalRealOrder>) return "total_real";
        else return "product_real(" + std::to_string(o.dim) + ")";
      },
      order);
}

}  // namespace mcbound
