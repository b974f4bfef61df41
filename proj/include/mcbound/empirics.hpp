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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mcbound/bounds.hpp"
#include "mcbound/drift.hpp"
#include "mcbound/finite_core.hpp"
#include "mcbound/srs.hpp"

namespace mcbound {

/// sup_x |F_a(x) - F_b(x)| between two empirical CDFs, by a merge scan over
/// the pooled sorted samples.
double empirical_kolmogorov(std::span<const double> samples_a,
                            std::span<const double> samples_b);

/// Coupled trajectories (X_t, X2_t) with X_0 ~ mu, X2_0 ~ mu2.
///
/// tau is the first t with X_t <= X2_t (kCensored if that never happens by
/// T); visits is N_T = #{s <= T : (X_s, X2_s) in C x C}.
struct CoupledPathStats {
  static constexpr std::int64_t kCensored = -1;

  std::vector<std::int64_t> tau;
  std::vector<std::int64_t> visits;
  std::int64_t n_paths = 0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;

  /// Paths that were ordered at some t and unordered later. Zero under a
  /// maximal coupling of an increasing kernel.
  std::int64_t left_graph_after_tau = 0;
  /// Visits to C x C at times s < T, and how many were followed by an
  /// ordered pair at s + 1.
  std::int64_t trials = 0;
  std::int64_t trial_successes = 0;

  /// Fraction of paths with tau > t; censored paths count as tau > t.
  double tau_tail(std::int64_t t) const;
};

CoupledPathStats coupled_simulate_finite(const CoupledKernel& qhat, const FinitePoset& poset,
                                         const FiniteDist& mu, const FiniteDist& mu2,
                                         const StateSet& c, std::int64_t horizon,
                                         std::int64_t n_paths, std::uint64_t seed);

using StateSampler = std::function<double(Rng&)>;

StateSampler point_mass_sampler(double x);

/// Independent-shock coupling of an SRS: X and X2 take independent draws.
/// This coupling does not absorb, so tau is the first ordering time only.
CoupledPathStats coupled_simulate_srs(const SRSModel& model, const StateSampler& mu,
                                      const StateSampler& mu2, const Interval& c,
                                      std::int64_t horizon, std::int64_t n_paths,
                                      std::uint64_t seed);

/// Exact laws of the coupling time and visit counts, by forward iteration of
/// the chain on (pair, min(N, cap), ordered-yet flag).
///
/// Indices run t = 0..t_max and j = 0..j_cap.
struct ExactCouplingTails {
  std::int64_t t_max = 0;
  std::int64_t j_cap = 0;
  std::vector<double> tau_gt;                         // P{tau > t}
  std::vector<std::vector<double>> n_lt;              // P{N_t < j}
  std::vector<std::vector<double>> tau_gt_n_lt;       // P{tau > t, N_t < j}
  std::vector<std::vector<double>> tau_gt_n_ge;       // P{tau > t, N_t >= j}
  std::vector<std::vector<double>> tau_gt_nprev_ge;   // P{tau > t, N_{t-1} >= j}
};

/// `poset` may be null when only visit counts are needed.
ExactCouplingTails exact_coupling_tails(const CoupledKernel& qhat, const FinitePoset* poset,
                                        const FiniteDist& mu, const FiniteDist& mu2,
                                        const StateSet& c, std::int64_t t_max,
                                        std::int64_t j_cap);

/// P{N_t < j}. Capacity-guarded: at most 30 states and j <= 10.
double exact_Nt_tail(const CoupledKernel& qhat, const FiniteDist& mu, const FiniteDist& mu2,
                     const StateSet& c, std::int64_t j, std::int64_t t);

/// Pointwise conditions behind the supermartingale argument, with
/// W(x, x2) = (V(x) + V(x2)) / 2:
///   on C x C:  (Qhat W) <= gamma d
///   elsewhere: (Qhat W) <= gamma W
struct SupermartingaleReport {
  bool holds = true;
  double worst_in_c = 0.0;   // max over C x C of Qhat W - gamma d
  std::size_t witness_in_c = 0;
  double worst_off_c = 0.0;  // max off C x C of Qhat W - gamma W
  std::size_t witness_off_c = 0;
  bool any_in_c = false;
  bool any_off_c = false;
};

inline constexpr double kSupermartingaleTolerance = 1e-9;

SupermartingaleReport supermartingale_check(const CoupledKernel& qhat,
                                            const DriftCertificate& cert);

/// One line of a distance-versus-bound comparison.
struct ComparisonRow {
  std::int64_t t = 0;
  double kappa = 0.0;
  double bound = 0.0;
  std::int64_t j_star = 1;
  double tail_term = 0.0;
  double coupling_term = 0.0;
  bool pass = false;
  double band = 0.0;  // allowance used for the pass flag
};

inline constexpr double kExactComparisonTolerance = 1e-9;

/// Exact kappa(mu Q^t, mu2 Q^t) against the optimised bound, t = 1..horizon.
std::vector<ComparisonRow> empirical_kappa_vs_bound(const FiniteKernel& q,
                                                    const FinitePoset& poset,
                                                    const FiniteDist& mu, const FiniteDist& mu2,
                                                    const DriftCertificate& cert, double eps,
                                                    std::int64_t horizon);

/// ECDF Kolmogorov distance between n_paths simulated draws of each law at
/// each t, against the optimised bound plus a 3 standard-error band.
std::vector<ComparisonRow> empirical_kappa_vs_bound(const SRSModel& model,
                                                    const StateSampler& mu,
                                                    const StateSampler& mu2,
                                                    const DriftCertificate& cert, double eps,
                                                    double h_val, std::int64_t horizon,
                                                    std::int64_t n_paths, std::uint64_t seed);

/// Simulated X_t for t = 0..horizon: result[t][path].
std::vector<std::vector<double>> simulate_marginals(const SRSModel& model,
                                                    const StateSampler& init,
                                                    std::int64_t horizon, std::int64_t n_paths,
                                                    std::uint64_t seed);

}  // namespace mcbound
