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

#include "mcbound/random_instances.hpp"

#include <algorithm>
#include <numeric>

#include "mcbound/bounds.hpp"
#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

// States ordered so that x comes before y whenever x < y.
std::vector<std::size_t> bottom_up(const FinitePoset& poset) {
  std::vector<std::size_t> order(poset.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> above(poset.size());
  for (std::size_t i = 0; i < poset.size(); ++i) above[i] = poset.strictly_above(i).size();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return above[a] > above[b]; });
  return order;
}

std::size_t pick(std::size_t n, Rng& rng) {
  return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
}

// A random order-preserving self-map; falls back to a constant map when the
// images chosen so far have no common upper bound.
std::vector<std::size_t> random_monotone_map(const FinitePoset& poset,
                                             const std::vector<std::size_t>& order, Rng& rng) {
  const std::size_t n = poset.size();
  std::vector<std::size_t> f(n, n);
  for (std::size_t x : order) {
    std::vector<std::size_t> candidates;
    for (std::size_t z = 0; z < n; ++z) {
      bool ok = true;
      for (std::size_t w = 0; w < n && ok; ++w) {
        if (f[w] != n && w != x && poset.leq(w, x)) ok = poset.leq(f[w], z);
      }
      if (ok) candidates.push_back(z);
    }
    if (candidates.empty()) {
      std::fill(f.begin(), f.end(), pick(n, rng));
      return f;
    }
    f[x] = candidates[pick(candidates.size(), rng)];
  }
  return f;
}

}  // namespace

FinitePoset random_poset(std::size_t n, double density, Rng& rng) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    rel[i][i] = true;
    for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = rng.bernoulli(density);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  return FinitePoset(rel);
}

FiniteDist random_dist(std::size_t n, Rng& rng, bool sparse) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.exponential();
  if (sparse) {
    for (double& x : w)
      if (rng.bernoulli(0.4)) x = 0.0;
    if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[pick(n, rng)] = 1.0;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return FiniteDist(std::move(w));
}

FiniteKernel random_increasing_kernel(const FinitePoset& poset, Rng& rng, int max_tries) {
  const std::size_t n = poset.size();
  const auto order = bottom_up(poset);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    const int maps = 1 + static_cast<int>(pick(3, rng));
    std::vector<double> weights(static_cast<std::size_t>(maps) + 1);
    for (double& w : weights) w = rng.exponential();
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (int m = 0; m < maps; ++m) {
      const auto f = random_monotone_map(poset, order, rng);
      for (std::size_t x = 0; x < n; ++x) rows[x][f[x]] += weights[static_cast<std::size_t>(m)] / total;
    }
    const FiniteDist base = random_dist(n, rng);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) rows[x][y] += weights.back() / total * base[y];
    for (auto& row : rows) {
      const double s = std::accumulate(row.begin(), row.end(), 0.0);
      for (double& p : row) p /= s;
    }
    FiniteKernel q(rows);
    if (kernel_is_increasing(q, poset)) return q;
  }
  throw ModelError("no increasing kernel found within the retry budget");
}

TheoremInstance random_theorem_instance(std::uint64_t seed, std::size_t n, std::size_t n_pairs) {
  Rng rng(substream_seed(seed, 0x7e0));
  const FinitePoset poset = random_poset(n, 0.2 + 0.6 * rng.uniform(), rng);
  FiniteKernel q = random_increasing_kernel(poset, rng);
  std::vector<double> v(n);
  for (double& x : v) x = 1.0 + 10.0 * rng.uniform();

  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  double d = 1.0;
  switch (seed % 4) {
    case 0: d = sorted.front(); break;
    case 1: d = sorted[n / 2]; break;
    case 2: d = sorted.back(); break;
    default: d = 2.0 * sorted.back(); break;
  }
  std::vector<double> lambda_grid;
  for (int k = 0; k < 20; ++k) lambda_grid.push_back(0.05 * k);
  DriftCertificate cert = fit_drift(q, v, lambda_grid, d);
  const double eps = epsilon_exact(q, poset, cert.small_set.members);

  std::vector<std::pair<FiniteDist, FiniteDist>> pairs;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    if (k == 0) {
      pairs.emplace_back(FiniteDist::point_mass(n, pick(n, rng)),
                         FiniteDist::point_mass(n, pick(n, rng)));
    } else {
      pairs.emplace_back(random_dist(n, rng, k % 2 == 1), random_dist(n, rng, k % 2 == 1));
    }
  }
  return TheoremInstance{poset, std::move(q), std::move(v), std::move(cert), eps,
                         std::move(pairs)};
}

}  // namespace mcbound
