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

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcbound/drift.hpp"
#include "mcbound/estimate.hpp"
#include "mcbound/poset.hpp"
#include "mcbound/rng.hpp"

namespace mcbound {

/// Up to two scalar shock components; models with one shock use w[0].
using Shock = std::array<double, 2>;

struct ShockAtom {
  Shock w{};
  double prob = 0.0;
};

struct ShockSampler {
  std::string method;                // how draws are produced
  std::function<Shock(Rng&)> draw;
  std::vector<ShockAtom> atoms;      // nonempty iff the shock law is finitely supported
};

/// X_{t+1} = F(X_t, W_{t+1}) on an interval of the real line.
struct SRSModel {
  std::string name;
  OrderKind order = TotalRealOrder{};
  Interval domain{0.0, std::numeric_limits<double>::infinity()};
  std::function<double(double, const Shock&)> map;
  ShockSampler shocks;

  std::string v_name = "x+1";
  std::function<double(double)> v = [](double x) { return x + 1.0; };
  /// Drift constants for V at a given d (d-dependent when fitted).
  std::function<DriftConstants(double)> drift_for_d;
  /// Closed-form e for C = [lo, hi], when the model has one.
  std::function<double(const Interval&)> closed_form_e;
};

/// F(x, w); throws ModelError if x or the result leaves the domain.
double step(const SRSModel& model, double x, const Shock& w);

/// States x_0..x_T; element t+1 = step(element t, shock t+1).
std::vector<double> simulate_path(const SRSModel& model, double x0, std::int64_t steps,
                                  std::uint64_t seed);

using PairSampler = std::function<std::pair<double, double>(Rng&)>;

/// Ordered pairs x <= x2 drawn uniformly from the interval.
PairSampler uniform_pair_sampler(Interval range);

struct MonotonicityCounterexample {
  double x = 0.0;
  double x2 = 0.0;
  Shock w{};
  double fx = 0.0;
  double fx2 = 0.0;
};

struct MonotonicityReport {
  bool passed = true;
  std::int64_t checked = 0;
  std::optional<MonotonicityCounterexample> counterexample;
};

/// Samples n triples (x <= x2, w) and checks F(x, w) <= F(x2, w).
MonotonicityReport monotonicity_test(const SRSModel& model, const PairSampler& pairs,
                                     std::int64_t n, std::uint64_t seed);

/// Where to take the infimum defining e.
struct SmallSetSpec {
  std::optional<Interval> extremes;  // (inf C, sup C)
  std::vector<double> grid;          // fallback grid over C
};

struct EReport {
  EstimateWithError estimate;
  bool used_extremes = false;
  double argmin_x = 0.0;   // lower-side point of the minimising cell
  double argmin_x2 = 0.0;  // upper-side point
};

/// Monte Carlo e: frequency of {F(x2, w') <= F(x, w)} for independent shocks,
/// minimised over (x, x2) in C x C. With a monotone map on the real line the
/// minimum sits at x = inf C, x2 = sup C; otherwise the grid is scanned.
EReport estimate_e(const SRSModel& model, const SmallSetSpec& c, std::int64_t n,
                   std::uint64_t seed);

/// e at the extremes of C by enumerating shock atoms; throws DomainError if
/// the shock law is not finitely supported.
double exact_e(const SRSModel& model, const Interval& c);

/// QV(x) = E V(F(x, W)) by enumeration of shock atoms.
double exact_qv(const SRSModel& model, double x);

struct GridDriftCheck {
  bool passed = true;
  double worst_excess = 0.0;  // max over grid of QV - lambda V - beta, net of allowances
  double worst_x = 0.0;
};

/// Drift inequality on a grid of states: exact when the shock law has atoms,
/// otherwise Monte Carlo QV with a 3 standard-error allowance.
GridDriftCheck verify_drift_on_grid(const SRSModel& model, DriftConstants k,
                                    const std::vector<double>& grid, std::int64_t n_mc,
                                    std::uint64_t seed);

SRSModel builtin_tcp(double a);
SRSModel builtin_half_bernoulli();

/// Wealth dynamics X' = eta G(X) + xi with V(x) = x + 1, lambda and
/// beta = xi_bar + 1. The premise E[eta G(x)] <= lambda x is spot-checked by
/// Monte Carlo on a logarithmic grid; ModelError if it fails.
SRSModel builtin_wealth(std::function<double(double)> g,
                        std::function<double(Rng&)> eta_sampler,
                        std::function<double(Rng&)> xi_sampler, double lambda, double xi_bar,
                        std::uint64_t check_seed = 1);

/// The pinned configuration: G(x) = x, eta = 0.9, xi ~ exponential(mean 1).
SRSModel builtin_wealth_default();

/// E sqrt(x^2 + 2E) for E ~ exponential(1), by quadrature.
double tcp_mean_root(double x);

}  // namespace mcbound
