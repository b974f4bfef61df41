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

// Independent reference computations for the test suites. Nothing here calls
// the library's solvers: alpha comes from a dense two-phase simplex, kappa
// from bitmask enumeration, coupling-time laws from explicit path sums.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mcbound/finite_core.hpp"
#include "mcbound/poset.hpp"
#include "mcbound/rng.hpp"

namespace oracle {

/// max c.x subject to A x = b, x >= 0, b >= 0. Two-phase tableau simplex with
/// Bland's rule. Throws if infeasible or unbounded.
inline double lp_max(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                     const std::vector<double>& b) {
  constexpr double kEps = 1e-12;
  const std::size_t m = a.size();
  const std::size_t nv = c.size();
  const std::size_t cols = nv + m;  // real + artificial
  std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nv; ++j) t[i][j] = a[i][j];
    t[i][nv + i] = 1.0;
    t[i][cols] = b[i];
    basis[i] = nv + i;
  }
  auto pivot = [&](std::size_t r, std::size_t col) {
    const double p = t[r][col];
    for (double& x : t[r]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][col] == 0.0) continue;
      const double f = t[i][col];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = col;
  };
  auto run = [&](const std::vector<double>& obj, std::size_t allowed) {
    for (int iter = 0; iter < 10000; ++iter) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < allowed; ++j) {
        double r = obj[j];
        for (std::size_t i = 0; i < m; ++i) r -= obj[basis[i]] * t[i][j];
        if (r > kEps) {
          enter = j;
          break;
        }
      }
      if (enter == cols) return;
      std::size_t leave = m;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][enter] <= kEps) continue;
        const double ratio = t[i][cols] / t[i][enter];
        if (ratio < best - kEps || (ratio <= best + kEps && leave < m && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m) throw std::runtime_error("lp unbounded");
      pivot(leave, enter);
    }
    throw std::runtime_error("lp iteration limit");
  };

  std::vector<double> phase1(cols, 0.0);
  for (std::size_t j = nv; j < cols; ++j) phase1[j] = -1.0;
  run(phase1, cols);
  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= nv) infeas += t[i][cols];
  if (infeas > 1e-9) throw std::runtime_error("lp infeasible");
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < nv) continue;
    for (std::size_t j = 0; j < nv; ++j) {
      if (std::abs(t[i][j]) > kEps) {
        pivot(i, j);
        break;
      }
    }
  }
  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < nv; ++j) phase2[j] = c[j];
  run(phase2, nv);
  double value = 0.0;
  for (std::size_t i = 0; i < m; ++i) value += phase2[basis[i]] * t[i][cols];
  return value;
}

/// alpha(mu, nu) as the transportation LP over the coupling polytope.
inline double lp_alpha(const mcbound::FiniteDist& mu, const mcbound::FiniteDist& nu,
                       const mcbound::FinitePoset& poset) {
  const std::size_t n = mu.size();
  std::vector<double> c(n * n, 0.0);
  std::vector<std::vector<double>> a(2 * n, std::vector<double>(n * n, 0.0));
  std::vector<double> b(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c[i * n + j] = poset.leq(i, j) ? 1.0 : 0.0;
      a[i][i * n + j] = 1.0;
      a[n + j][i * n + j] = 1.0;
    }
    b[i] = mu[i];
    b[n + i] = nu[i];
  }
  return lp_max(c, a, b);
}

/// Up-sets by testing every bitmask.
inline std::vector<std::uint32_t> brute_up_sets(const mcbound::FinitePoset& poset) {
  const std::size_t n = poset.size();
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (std::size_t j = 0; j < n && ok; ++j) ok = !poset.leq(i, j) || (mask >> j & 1u);
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

inline double mass(const mcbound::FiniteDist& mu, std::uint32_t mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mask >> i & 1u) s += mu[i];
  return s;
}

inline double brute_kappa(const mcbound::FiniteDist& mu, const mcbound::FiniteDist& nu,
                          const mcbound::FinitePoset& poset) {
  double best = 0.0;
  for (std::uint32_t u : brute_up_sets(poset)) best = std::max(best, std::abs(mass(mu, u) - mass(nu, u)));
  return best;
}

/// Random increasing h with values in [0, 1]: raw values, then h(x) = max of
/// raw over everything below x.
inline std::vector<double> random_increasing_h(const mcbound::FinitePoset& poset,
                                               mcbound::Rng& rng) {
  const std::size_t n = poset.size();
  std::vector<double> raw(n), h(n, 0.0);
  for (double& r : raw) r = rng.uniform();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (poset.leq(y, x)) h[x] = std::max(h[x], raw[y]);
  return h;
}

/// Laws of tau and visit counts by summing over every coupled path.
struct PathTails {
  double tau_gt = 0.0;         // P{tau > t}
  double n_lt = 0.0;           // P{N_t < j}
  double tau_gt_n_lt = 0.0;    // P{tau > t, N_t < j}
  double tau_gt_n_ge = 0.0;    // P{tau > t, N_t >= j}
  double tau_gt_nprev_ge = 0.0;// P{tau > t, N_{t-1} >= j}
};

inline PathTails enumerate_paths(const mcbound::CoupledKernel& qhat,
                                 const mcbound::FinitePoset& poset,
                                 const mcbound::FiniteDist& mu, const mcbound::FiniteDist& mu2,
                                 const mcbound::StateSet& c, std::int64_t t, std::int64_t j) {
  const std::size_t n = qhat.states();
  PathTails out;
  std::function<void(std::size_t, std::size_t, std::int64_t, double, bool, std::int64_t)>
      walk = [&](std::size_t x, std::size_t y, std::int64_t s, double p, bool hit,
                 std::int64_t visits) {
        if (p == 0.0) return;
        const bool ordered = poset.leq(x, y);
        const bool in_c = c[x] && c[y];
        const std::int64_t nv = visits + (in_c ? 1 : 0);
        const bool h = hit || ordered;
        if (s == t) {
          if (nv < j) out.n_lt += p;
          if (!h) {
            out.tau_gt += p;
            (nv < j ? out.tau_gt_n_lt : out.tau_gt_n_ge) += p;
            if (visits >= j) out.tau_gt_nprev_ge += p;  // visits before s = t
          }
          return;
        }
        const std::size_t pair = qhat.pair_index(x, y);
        const auto row = qhat.row(pair);
        for (std::size_t q = 0; q < row.size(); ++q) {
          if (row[q] == 0.0) continue;
          walk(q / n, q % n, s + 1, p * row[q], h, nv);
        }
      };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) walk(x, y, 0, mu[x] * mu2[y], false, 0);
  return out;
}

}  // namespace oracle
