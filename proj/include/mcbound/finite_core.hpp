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
#include <optional>
#include <span>
#include <vector>

#include "mcbound/poset.hpp"

namespace mcbound {

/// Probability vector indexed by the states of a finite poset.
class FiniteDist {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Throws DomainError on negative entries or a total mass off 1 by more
  /// than kTolerance.
  explicit FiniteDist(std::vector<double> weights);

  static FiniteDist point_mass(std::size_t n, std::size_t state);
  static FiniteDist uniform(std::size_t n);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& weights() const noexcept { return p_; }

  double mass(const StateSet& set) const;
  /// Integral of f.
  double expect(std::span<const double> f) const;

 private:
  std::vector<double> p_;
};

/// Row-stochastic matrix; row i is Q(i, .).
class FiniteKernel {
 public:
  explicit FiniteKernel(std::vector<FiniteDist> rows);
  explicit FiniteKernel(const std::vector<std::vector<double>>& rows);

  static FiniteKernel identity(std::size_t n);
  /// Every row equal to `row`.
  static FiniteKernel constant(const FiniteDist& row);

  std::size_t size() const noexcept { return rows_.size(); }
  const FiniteDist& row(std::size_t i) const { return rows_[i]; }
  double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  /// Right action Qf.
  std::vector<double> apply(std::span<const double> f) const;
  /// Left action mu Q.
  std::vector<double> push_forward(std::span<const double> mu) const;

 private:
  std::vector<FiniteDist> rows_;
};

/// Markov kernel on ordered pairs of states. Pair (i, j) has index i * n + j.
class CoupledKernel {
 public:
  CoupledKernel(std::size_t n, std::vector<double> dense);

  std::size_t states() const noexcept { return n_; }
  std::size_t pairs() const noexcept { return n_ * n_; }
  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::size_t first(std::size_t pair) const { return pair / n_; }
  std::size_t second(std::size_t pair) const { return pair % n_; }

  std::span<const double> row(std::size_t pair) const {
    return {probs_.data() + pair * pairs(), pairs()};
  }
  double operator()(std::size_t from, std::size_t to) const {
    return probs_[from * pairs() + to];
  }

  /// Mass that row `pair` places on the graph of the order.
  double graph_mass(std::size_t pair, const FinitePoset& poset) const;

  /// Largest marginal deviation from Q over all rows (0 for an exact
  /// Markov coupling of Q).
  double coupling_defect(const FiniteKernel& q) const;

 private:
  std::size_t n_;
  std::vector<double> probs_;
};

// Which route to use for sup/inf over up-sets.
enum class UpSetMethod { automatic, enumeration, min_cut };

struct UpSetExtremum {
  double value = 0.0;  // max over up-sets U of mu(U) - nu(U), never below 0
  StateSet up_set;     // an up-set attaining it
};

/// max over up-sets U of mu(U) - nu(U). The empty up-set makes this >= 0.
UpSetExtremum max_up_set_difference(const FiniteDist& mu, const FiniteDist& nu,
                                    const FinitePoset& poset,
                                    UpSetMethod method = UpSetMethod::automatic);

bool stoch_dominates(const FiniteDist& mu, const FiniteDist& nu,
                     const FinitePoset& poset,
                     UpSetMethod method = UpSetMethod::automatic);

/// Largest mass a coupling of (mu, nu) can put on {(x, y) : x <= y}.
double alpha(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset);

/// A coupling of (mu, nu) attaining alpha; entry [i * n + j] is the mass on
/// the pair (i, j). Residual mass off the order graph is spread as the
/// product of the unmatched marginals.
std::vector<double> optimal_plan(const FiniteDist& mu, const FiniteDist& nu,
                                 const FinitePoset& poset);

/// Kolmogorov distance under the order: max over up-sets of |mu(U) - nu(U)|.
double kappa(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset,
             UpSetMethod method = UpSetMethod::automatic);

double strassen_gap(const FiniteDist& mu, const FiniteDist& nu,
                    const FinitePoset& poset,
                    UpSetMethod method = UpSetMethod::automatic);

struct MonotonicityWitness {
  std::size_t lower = 0;
  std::size_t upper = 0;
  StateSet up_set;
  double excess = 0.0;  // Q_lower(U) - Q_upper(U)
};

struct IncreasingCheck {
  bool increasing = true;
  std::optional<MonotonicityWitness> witness;
  explicit operator bool() const noexcept { return increasing; }
};

IncreasingCheck kernel_is_increasing(const FiniteKernel& q, const FinitePoset& poset);

/// Row (i, j) is an optimal plan for (Q_i, Q_j).
CoupledKernel maximal_coupling_kernel(const FiniteKernel& q, const FinitePoset& poset);

/// Row (i, j) is Q_i x Q_j.
CoupledKernel independent_coupling_kernel(const FiniteKernel& q);

FiniteDist iterate_dist(const FiniteDist& mu, const FiniteKernel& q, std::size_t t);

double total_variation(const FiniteDist& mu, const FiniteDist& nu);

}  // namespace mcbound
