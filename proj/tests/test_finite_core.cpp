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

#include <cmath>

#include "mcbound/errors.hpp"
#include "mcbound/finite_core.hpp"
#include "mcbound/random_instances.hpp"
#include "oracles.hpp"

using namespace mcbound;

namespace {

FiniteDist dist(std::vector<double> p) { return FiniteDist(std::move(p)); }

const FinitePoset kChain2 = FinitePoset::chain(2);

}  // namespace

TEST(FiniteDist, Validation) {
  EXPECT_THROW(dist({0.5, 0.6}), DomainError);
  EXPECT_THROW(dist({-0.1, 1.1}), DomainError);
  EXPECT_NO_THROW(dist({0.5, 0.5 + 1e-13}));
  EXPECT_THROW(FiniteKernel(std::vector<std::vector<double>>{{1.0, 0.0}, {0.3}}), DomainError);
}

TEST(FiniteKernel, ApplyAndPushForward) {
  const FiniteKernel q(std::vector<std::vector<double>>{{0.5, 0.5}, {0.2, 0.8}});
  const std::vector<double> f{1.0, 3.0};
  const auto qf = q.apply(f);
  EXPECT_DOUBLE_EQ(qf[0], 2.0);
  EXPECT_DOUBLE_EQ(qf[1], 2.6);
  const std::vector<double> mu{1.0, 0.0};
  EXPECT_EQ(q.push_forward(mu), (std::vector<double>{0.5, 0.5}));
}

TEST(StochDominates, Examples) {
  const FiniteDist d0 = FiniteDist::point_mass(2, 0), d1 = FiniteDist::point_mass(2, 1);
  EXPECT_TRUE(stoch_dominates(d0, d0, kChain2));
  EXPECT_FALSE(stoch_dominates(d1, d0, kChain2));
  EXPECT_TRUE(stoch_dominates(d0, d1, kChain2));
  EXPECT_FALSE(stoch_dominates(dist({0.7, 0.3}), dist({0.4, 0.6}), FinitePoset::identity(2)));
  EXPECT_THROW(stoch_dominates(d0, FiniteDist::point_mass(3, 0), kChain2), DomainError);
}

TEST(Alpha, Examples) {
  const FiniteDist d0 = FiniteDist::point_mass(2, 0), d1 = FiniteDist::point_mass(2, 1);
  EXPECT_EQ(alpha(d1, d1, kChain2), 1.0);
  EXPECT_EQ(alpha(d1, d0, kChain2), 0.0);
  EXPECT_NEAR(alpha(dist({0.7, 0.3}), dist({0.4, 0.6}), FinitePoset::identity(2)), 0.7, 1e-12);
  EXPECT_THROW(alpha(d0, FiniteDist::point_mass(3, 0), kChain2), DomainError);
}

TEST(Alpha, MatchesLinearProgramOnSmallInstances) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const std::size_t n = 1 + seed % 4;
    const FinitePoset p = random_poset(n, rng.uniform(), rng);
    const FiniteDist mu = random_dist(n, rng, seed % 3 == 0);
    const FiniteDist nu = random_dist(n, rng, seed % 5 == 0);
    ASSERT_NEAR(alpha(mu, nu, p), oracle::lp_alpha(mu, nu, p), 1e-9) << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(Kappa, Examples) {
  const FiniteDist d0 = FiniteDist::point_mass(2, 0), d1 = FiniteDist::point_mass(2, 1);
  EXPECT_EQ(kappa(d0, d0, kChain2), 0.0);
  EXPECT_EQ(kappa(d0, d1, kChain2), 1.0);
  EXPECT_NEAR(kappa(dist({0.7, 0.3}), dist({0.4, 0.6}), kChain2), 0.3, 1e-15);
}

TEST(Kappa, EnumerationMinCutAndBruteForceAgree) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed + 1000);
    const std::size_t n = 1 + seed % 12;
    const FinitePoset p = random_poset(n, rng.uniform(), rng);
    const FiniteDist mu = random_dist(n, rng, seed % 2 == 0);
    const FiniteDist nu = random_dist(n, rng);
    const double brute = oracle::brute_kappa(mu, nu, p);
    EXPECT_NEAR(kappa(mu, nu, p, UpSetMethod::enumeration), brute, 1e-12);
    EXPECT_NEAR(kappa(mu, nu, p, UpSetMethod::min_cut), brute, 1e-9);
    EXPECT_NEAR(strassen_gap(mu, nu, p, UpSetMethod::min_cut),
                strassen_gap(mu, nu, p, UpSetMethod::enumeration), 1e-9);
  }
}

TEST(Kappa, DominatesEveryRandomIncreasingTestFunction) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed + 77);
    const std::size_t n = 2 + seed % 7;
    const FinitePoset p = random_poset(n, 0.5, rng);
    const FiniteDist mu = random_dist(n, rng);
    const FiniteDist nu = random_dist(n, rng);
    const double k = kappa(mu, nu, p);
    double best = 0.0;
    for (int draw = 0; draw < 2000; ++draw) {
      const auto h = oracle::random_increasing_h(p, rng);
      best = std::max(best, std::abs(mu.expect(h) - nu.expect(h)));
    }
    EXPECT_LE(best, k + 1e-12);
    // The attaining up-set indicator is itself an increasing test function.
    const UpSetExtremum up = max_up_set_difference(mu, nu, p);
    const UpSetExtremum down = max_up_set_difference(nu, mu, p);
    const StateSet& u = up.value >= down.value ? up.up_set : down.up_set;
    EXPECT_TRUE(is_up_set(p, u));
    EXPECT_NEAR(std::abs(mu.mass(u) - nu.mass(u)), k, 1e-12);
  }
}

TEST(Kappa, IsAMetric) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed + 5);
    const std::size_t n = 2 + seed % 6;
    const FinitePoset p = random_poset(n, 0.5, rng);
    const FiniteDist a = random_dist(n, rng), b = random_dist(n, rng), c = random_dist(n, rng);
    EXPECT_NEAR(kappa(a, b, p), kappa(b, a, p), 1e-12);
    EXPECT_LE(kappa(a, c, p), kappa(a, b, p) + kappa(b, c, p) + 1e-12);
    EXPECT_NEAR(kappa(a, a, p), 0.0, 1e-12);
    EXPECT_GT(kappa(a, b, p), 0.0);  // distinct continuous draws
  }
}

TEST(StrassenGap, ExamplesAndDuality) {
  const FiniteDist d0 = FiniteDist::point_mass(2, 0), d1 = FiniteDist::point_mass(2, 1);
  EXPECT_EQ(strassen_gap(d0, d1, kChain2), 0.0);
  EXPECT_EQ(strassen_gap(d1, d0, kChain2), 1.0);
  EXPECT_NEAR(strassen_gap(dist({0.3, 0.7}), dist({0.6, 0.4}), kChain2), 0.3, 1e-15);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed + 31);
    const std::size_t n = 1 + seed % 8;
    const FinitePoset p = random_poset(n, rng.uniform(), rng);
    const FiniteDist mu = random_dist(n, rng, seed % 2 == 1);
    const FiniteDist nu = random_dist(n, rng, seed % 3 == 1);
    const double a = alpha(mu, nu, p);
    EXPECT_NEAR(a + strassen_gap(mu, nu, p), 1.0, 1e-9);
    // Strassen: full mass on the graph exactly when dominated.
    EXPECT_EQ(stoch_dominates(mu, nu, p), a >= 1.0 - 1e-9) << "seed " << seed;
  }
}

TEST(IdentityOrder, CollapsesToTotalVariation) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 999);
    const std::size_t n = 1 + seed % 9;
    const FinitePoset id = FinitePoset::identity(n);
    const FiniteDist mu = random_dist(n, rng, seed % 2 == 0);
    const FiniteDist nu = random_dist(n, rng);
    const double tv = total_variation(mu, nu);
    double half_l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) half_l1 += 0.5 * std::abs(mu[i] - nu[i]);
    EXPECT_NEAR(tv, half_l1, 1e-15);
    EXPECT_NEAR(kappa(mu, nu, id), tv, 1e-12);
    EXPECT_NEAR(alpha(mu, nu, id), 1.0 - tv, 1e-12);
  }
}

TEST(KernelIsIncreasing, Examples) {
  const FiniteKernel swap(std::vector<std::vector<double>>{{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_TRUE(kernel_is_increasing(swap, FinitePoset::identity(2)).increasing);
  const IncreasingCheck bad = kernel_is_increasing(swap, kChain2);
  ASSERT_FALSE(bad.increasing);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->lower, 0u);
  EXPECT_EQ(bad.witness->upper, 1u);
  EXPECT_TRUE(is_up_set(kChain2, bad.witness->up_set));
  EXPECT_GT(bad.witness->excess, 0.0);
  Rng rng(3);
  const FinitePoset p = random_poset(6, 0.5, rng);
  EXPECT_TRUE(kernel_is_increasing(FiniteKernel::constant(random_dist(6, rng)), p).increasing);
}

TEST(MaximalCoupling, RowsAreOptimalCouplings) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed + 400);
    const std::size_t n = 2 + seed % 5;
    const FinitePoset p = random_poset(n, 0.5, rng);
    std::vector<FiniteDist> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_dist(n, rng, seed % 2 == 0));
    const FiniteKernel q(rows);
    const CoupledKernel qhat = maximal_coupling_kernel(q, p);
    EXPECT_LE(qhat.coupling_defect(q), 1e-10);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double target = n <= 4 ? oracle::lp_alpha(q.row(i), q.row(j), p)
                                     : alpha(q.row(i), q.row(j), p);
        EXPECT_NEAR(qhat.graph_mass(qhat.pair_index(i, j), p), target, 1e-10);
      }
    }
  }
}

TEST(MaximalCoupling, TwoStateExampleAndIdenticalRows) {
  const FiniteKernel q(std::vector<std::vector<double>>{{0.5, 0.5}, {0.2, 0.8}});
  const CoupledKernel qhat = maximal_coupling_kernel(q, kChain2);
  EXPECT_NEAR(qhat.graph_mass(qhat.pair_index(1, 0), kChain2),
              oracle::lp_alpha(q.row(1), q.row(0), kChain2), 1e-12);
  EXPECT_NEAR(qhat.graph_mass(qhat.pair_index(1, 0), kChain2), 0.7, 1e-12);

  const FiniteKernel same = FiniteKernel::constant(dist({0.2, 0.3, 0.5}));
  const CoupledKernel diag = maximal_coupling_kernel(same, FinitePoset::identity(3));
  for (std::size_t pr = 0; pr < diag.pairs(); ++pr) {
    for (std::size_t to = 0; to < diag.pairs(); ++to) {
      if (diag.first(to) != diag.second(to)) {
        EXPECT_EQ(diag(pr, to), 0.0);
      }
    }
  }
}

TEST(MaximalCoupling, OrderGraphIsAbsorbingForIncreasingKernels) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed + 9000);
    const FinitePoset p = random_poset(5, 0.5, rng);
    const FiniteKernel q = random_increasing_kernel(p, rng);
    const CoupledKernel qhat = maximal_coupling_kernel(q, p);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        if (p.leq(i, j)) {
          EXPECT_NEAR(qhat.graph_mass(qhat.pair_index(i, j), p), 1.0, 1e-12);
        }
  }
}

TEST(IndependentCoupling, IsACoupling) {
  Rng rng(8);
  std::vector<FiniteDist> rows;
  for (int i = 0; i < 4; ++i) rows.push_back(random_dist(4, rng));
  const FiniteKernel q(rows);
  EXPECT_LE(independent_coupling_kernel(q).coupling_defect(q), 1e-12);
}

TEST(IterateDist, Examples) {
  const FiniteDist mu = dist({0.3, 0.7});
  const FiniteKernel q(std::vector<std::vector<double>>{{0.5, 0.5}, {0.2, 0.8}});
  EXPECT_EQ(iterate_dist(mu, q, 0).weights(), mu.weights());
  EXPECT_EQ(iterate_dist(mu, FiniteKernel::identity(2), 7).weights(), mu.weights());
  const FiniteDist one = iterate_dist(FiniteDist::point_mass(2, 0), q, 1);
  EXPECT_DOUBLE_EQ(one[0], 0.5);
  EXPECT_DOUBLE_EQ(one[1], 0.5);
  const FiniteDist two = iterate_dist(mu, q, 2);
  const FiniteDist step = iterate_dist(iterate_dist(mu, q, 1), q, 1);
  EXPECT_NEAR(two[0], step[0], 1e-15);
}
