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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcbound/drift.hpp"
#include "mcbound/finite_core.hpp"

namespace mcbound {

/// min over ordered pairs (x, x2) in C x C of alpha(Q_x, Q_x2).
/// Throws DomainError when C is empty.
double epsilon_exact(const FiniteKernel& q, const FinitePoset& poset, const StateSet& c);

/// Largest eps_hat with eps_hat * nu <= Q(x, .) for all x in C, over all
/// probability measures nu: sum_y min_{x in C} Q(x, y).
double optimal_minorization(const FiniteKernel& q, const StateSet& c);

/// gamma^t d^(j-1) H. Requires 1 <= j <= t and d >= 1.
double lemma_ggc_bound(double gamma, double d, double h_val, std::int64_t j, std::int64_t t);

/// (1 - eps)^j + gamma^t d^(j-1) H, unclipped.
double theorem_bound(double eps, double gamma, double d, double h_val, std::int64_t j,
                     std::int64_t t);

struct OptimizedBound {
  std::int64_t j_star = 1;
  double value = 0.0;
  double coupling_term = 0.0;  // (1 - eps)^j_star
  double tail_term = 0.0;      // gamma^t d^(j_star-1) H
};

/// Exhaustive minimum over j in [1, t]; ties go to the smaller j.
OptimizedBound optimize_bound(double eps, double gamma, double d, double h_val, std::int64_t t);

/// Where the coupling constant came from.
struct EpsilonSource {
  enum class Kind { exact, closed_form, monte_carlo };
  Kind kind = Kind::exact;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  std::string provenance() const;
};

struct BoundRow {
  std::int64_t t = 0;
  std::int64_t j_star = 1;
  double bound_value = 0.0;
  double tail_term = 0.0;
  double coupling_term = 0.0;
  bool vacuous = false;   // bound_value >= 1
  bool underflow = false; // bound_value < 1e-300, reported as 0
};

struct BoundReport {
  std::string model_id;
  DriftCertificate cert;
  EpsilonSource eps;
  double h_val = 1.0;
  std::vector<BoundRow> rows;
  std::vector<std::uint64_t> seeds;

  bool vacuous_only() const;
  /// min over s <= t of the bound, per row.
  std::vector<double> envelope() const;
};

inline constexpr double kUnderflowFloor = 1e-300;

BoundReport bound_table(const DriftCertificate& cert, const EpsilonSource& eps, double h_val,
                        std::int64_t t_max, std::string model_id = {});

}  // namespace mcbound
