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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "mcbound/errors.hpp"
#include "mcbound/poset.hpp"
#include "mcbound/random_instances.hpp"
#include "oracles.hpp"

using namespace mcbound;

namespace {

using Relation = std::vector<std::vector<bool>>;

bool brute_is_partial_order(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!r[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && r[i][j] && r[j][i]) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (r[i][j] && r[j][k] && !r[i][k]) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Poset, RejectsNonReflexive) {
  EXPECT_THROW(FinitePoset(Relation{{true, false}, {false, false}}), DomainError);
}

TEST(Poset, RejectsNonAntisymmetric) {
  EXPECT_THROW(FinitePoset(Relation{{true, true}, {true, true}}), DomainError);
}

TEST(Poset, RejectsNonTransitive) {
  Relation r{{true, true, false}, {false, true, true}, {false, false, true}};
  EXPECT_THROW(FinitePoset{r}, DomainError);
  r[0][2] = true;
  EXPECT_NO_THROW(FinitePoset{r});
}

TEST(Poset, RejectsDuplicateLabelsAndUnknownLabels) {
  EXPECT_THROW(FinitePoset({"a", "a"}, Relation{{true, false}, {false, true}}), DomainError);
  const FinitePoset p({"a", "b"}, Relation{{true, true}, {false, true}});
  EXPECT_TRUE(p.leq("a", "b"));
  EXPECT_FALSE(p.leq("b", "a"));
  EXPECT_THROW(p.index_of("c"), DomainError);
  EXPECT_THROW(leq(p, "a", "zz"), DomainError);
}

TEST(Poset, ConstructorAcceptsExactlyPartialOrders) {
  Rng rng(11);
  int accepted = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + trial % 4;
    Relation r(n, std::vector<bool>(n));
    for (auto& row : r)
      for (std::size_t j = 0; j < n; ++j) row[j] = rng.bernoulli(0.6);
    bool threw = false;
    try {
      FinitePoset p{r};
    } catch (const DomainError&) {
      threw = true;
    }
    EXPECT_EQ(!threw, brute_is_partial_order(r));
    accepted += threw ? 0 : 1;
  }
  EXPECT_GT(accepted, 50);
}

TEST(Poset, FactoriesAndRealOrders) {
  const FinitePoset c = FinitePoset::chain(3);
  EXPECT_TRUE(c.leq(0, 2));
  EXPECT_FALSE(c.leq(2, 0));
  const FinitePoset id = FinitePoset::identity(3);
  EXPECT_FALSE(id.leq(0, 1));
  const std::array<double, 3> xs{2.0, -1.0, 0.5};
  const FinitePoset r = FinitePoset::from_reals(xs);
  EXPECT_TRUE(r.leq(1, 2));
  EXPECT_TRUE(r.leq(2, 0));
  EXPECT_FALSE(r.leq(0, 1));
  const std::array<double, 2> tie{1.0, 1.0};
  EXPECT_THROW(FinitePoset::from_reals(tie), DomainError);
}

TEST(Poset, LeqOnTheRealLine) {
  EXPECT_TRUE(leq(IdentityOrder{}, 3.0, 3.0));
  EXPECT_FALSE(leq(IdentityOrder{}, 3.0, 4.0));
  EXPECT_TRUE(leq(TotalRealOrder{}, 3.0, 4.0));
  const std::array<double, 2> a{1, 2}, b{2, 3}, c{1, 5};
  EXPECT_TRUE(leq(ProductRealOrder{2}, a, b));
  EXPECT_FALSE(leq(ProductRealOrder{2}, c, b));
  EXPECT_THROW(leq(TotalRealOrder{}, a, b), DomainError);
  EXPECT_THROW(leq(ProductRealOrder{3}, a, b), DomainError);
}

TEST(UpSets, BasicMembership) {
  const FinitePoset c = FinitePoset::chain(3);
  EXPECT_TRUE(is_up_set(c, {false, false, false}));
  EXPECT_TRUE(is_up_set(c, {true, true, true}));
  EXPECT_TRUE(is_up_set(c, {false, true, true}));
  EXPECT_FALSE(is_up_set(c, {false, true, false}));
}

TEST(UpSets, ChainAntichainAndPair) {
  for (std::size_t n = 1; n <= 8; ++n) {
    EXPECT_EQ(enumerate_up_sets(FinitePoset::chain(n)).size(), n + 1);
    EXPECT_EQ(enumerate_up_sets(FinitePoset::identity(n)).size(), std::size_t{1} << n);
  }
  const auto two = enumerate_up_sets(FinitePoset::chain(2));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two, (std::vector<UpSetMask>{0b00, 0b10, 0b11}));
}

TEST(UpSets, IdentityOrderMakesEverySubsetAnUpSet) {
  const FinitePoset id = FinitePoset::identity(5);
  for (UpSetMask m = 0; m < 32; ++m) EXPECT_TRUE(is_up_set(id, mask_to_set(m, 5)));
}

TEST(UpSets, MatchBruteForceAndFormALattice) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const FinitePoset p = random_poset(1 + seed % 10, rng.uniform(), rng);
    auto got = enumerate_up_sets(p);
    auto want = oracle::brute_up_sets(p);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, want) << "seed " << seed;
    for (UpSetMask a : got) {
      EXPECT_TRUE(is_up_set(p, mask_to_set(a, p.size())));
      for (UpSetMask b : got) {
        EXPECT_TRUE(std::binary_search(got.begin(), got.end(), a | b));
        EXPECT_TRUE(std::binary_search(got.begin(), got.end(), a & b));
      }
    }
  }
}

TEST(UpSets, CapacityGuard) {
  EXPECT_THROW(enumerate_up_sets(FinitePoset::chain(21)), CapacityError);
  EXPECT_NO_THROW(enumerate_up_sets(FinitePoset::chain(20)));
}

TEST(Poset, TopDownOrderIsALinearExtension) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const FinitePoset p = random_poset(8, 0.4, rng);
    const auto& order = p.top_down_order();
    std::vector<std::size_t> pos(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j : p.strictly_above(i)) EXPECT_LT(pos[j], pos[i]);
  }
}
