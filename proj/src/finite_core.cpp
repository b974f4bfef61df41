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

#include "mcbound/finite_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mcbound/errors.hpp"
#include "mcbound/maxflow.hpp"

namespace mcbound {

namespace {

void require_dims(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset) {
  if (mu.size() != poset.size() || nu.size() != poset.size()) {
    throw DomainError("distribution dimensions (" + std::to_string(mu.size()) + ", " +
                      std::to_string(nu.size()) + ") do not match poset of size " +
                      std::to_string(poset.size()));
  }
}

UpSetExtremum max_difference_by_enumeration(const FiniteDist& mu, const FiniteDist& nu,
                                            const FinitePoset& poset) {
  const std::size_t n = poset.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = mu[i] - nu[i];
  UpSetExtremum best{0.0, StateSet(n, false)};
  UpSetMask best_mask = 0;
  for (UpSetMask mask : enumerate_up_sets(poset)) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) s += w[i];
    if (s > best.value) {
      best.value = s;
      best_mask = mask;
    }
  }
  best.up_set = mask_to_set(best_mask, n);
  return best;
}

// Maximum-weight closure: a min cut separating positive-weight states
// (source side) from negative-weight ones, with infinite arcs forcing every
// state above a chosen one into the set.
UpSetExtremum max_difference_by_min_cut(const FiniteDist& mu, const FiniteDist& nu,
                                        const FinitePoset& poset) {
  const std::size_t n = poset.size();
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  MaxFlow flow(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = static_cast<MaxFlow::Capacity>(
        std::llround((mu[i] - nu[i]) * kProbabilityScale));
    if (w > 0) flow.add_edge(source, i, w);
    if (w < 0) flow.add_edge(i, sink, -w);
    for (std::size_t j : poset.strictly_above(i)) flow.add_edge(i, j, MaxFlow::kInfinite);
  }
  flow.solve(source, sink);
  const std::vector<bool> side = flow.source_side(source);
  UpSetExtremum out{0.0, StateSet(n, false)};
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.up_set[i] = side[i];
    if (side[i]) s += mu[i] - nu[i];
  }
  if (s > 0.0) {
    out.value = s;
  } else {
    std::fill(out.up_set.begin(), out.up_set.end(), false);
  }
  return out;
}

struct TransportNetwork {
  MaxFlow flow;
  std::vector<std::size_t> arc_id;  // n*n, SIZE_MAX where no arc
  std::vector<MaxFlow::Capacity> mu_units;
  std::vector<MaxFlow::Capacity> nu_units;
  MaxFlow::Capacity value = 0;
};

TransportNetwork solve_transport(const FiniteDist& mu, const FiniteDist& nu,
                                 const FinitePoset& poset) {
  const std::size_t n = poset.size();
  const std::size_t source = 2 * n;
  const std::size_t sink = 2 * n + 1;
  TransportNetwork net{MaxFlow(2 * n + 2), std::vector<std::size_t>(n * n, SIZE_MAX),
                       to_units(mu.weights()), to_units(nu.weights()), 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (net.mu_units[i] > 0) net.flow.add_edge(source, i, net.mu_units[i]);
    if (net.nu_units[i] > 0) net.flow.add_edge(n + i, sink, net.nu_units[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (net.mu_units[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (net.nu_units[j] > 0 && poset.leq(i, j)) {
        net.arc_id[i * n + j] = net.flow.add_edge(i, n + j, MaxFlow::kInfinite);
      }
    }
  }
  net.value = net.flow.solve(source, sink);
  return net;
}

}  // namespace

FiniteDist::FiniteDist(std::vector<double> weights) : p_(std::move(weights)) {
  double total = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0) || !std::isfinite(p_[i])) {
      throw DomainError("probability entry " + std::to_string(i) + " is negative or not finite");
    }
    total += p_[i];
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw DomainError("probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

FiniteDist FiniteDist::point_mass(std::size_t n, std::size_t state) {
  if (state >= n) throw DomainError("point mass outside the state space");
  std::vector<double> p(n, 0.0);
  p[state] = 1.0;
  return FiniteDist(std::move(p));
}

FiniteDist FiniteDist::uniform(std::size_t n) {
  if (n == 0) throw DomainError("uniform distribution on an empty set");
  return FiniteDist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double FiniteDist::mass(const StateSet& set) const {
  if (set.size() != p_.size()) throw DomainError("state subset has wrong dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i)
    if (set[i]) s += p_[i];
  return s;
}

double FiniteDist::expect(std::span<const double> f) const {
  if (f.size() != p_.size()) throw DomainError("function has wrong dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) s += p_[i] * f[i];
  return s;
}

FiniteKernel::FiniteKernel(std::vector<FiniteDist> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != rows_.size()) {
      throw DomainError("kernel row " + std::to_string(i) + " has length " +
                        std::to_string(rows_[i].size()) + ", expected " +
                        std::to_string(rows_.size()));
    }
  }
}

FiniteKernel::FiniteKernel(const std::vector<std::vector<double>>& rows)
    : FiniteKernel([&] {
        std::vector<FiniteDist> out;
        out.reserve(rows.size());
        for (const auto& r : rows) out.emplace_back(r);
        return out;
      }()) {}

FiniteKernel FiniteKernel::identity(std::size_t n) {
  std::vector<FiniteDist> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(FiniteDist::point_mass(n, i));
  return FiniteKernel(std::move(rows));
}

FiniteKernel FiniteKernel::constant(const FiniteDist& row) {
  return FiniteKernel(std::vector<FiniteDist>(row.size(), row));
}

std::vector<double> FiniteKernel::apply(std::span<const double> f) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = rows_[i].expect(f);
  return out;
}

std::vector<double> FiniteKernel::push_forward(std::span<const double> mu) const {
  if (mu.size() != size()) throw DomainError("distribution has wrong dimension");
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (mu[i] == 0.0) continue;
    const auto& w = rows_[i].weights();
    for (std::size_t j = 0; j < size(); ++j) out[j] += mu[i] * w[j];
  }
  return out;
}

CoupledKernel::CoupledKernel(std::size_t n, std::vector<double> dense)
    : n_(n), probs_(std::move(dense)) {
  if (probs_.size() != n_ * n_ * n_ * n_) {
    throw DomainError("coupled kernel needs n^4 entries");
  }
}

double CoupledKernel::graph_mass(std::size_t pair, const FinitePoset& poset) const {
  const auto r = row(pair);
  double s = 0.0;
  for (std::size_t to = 0; to < pairs(); ++to)
    if (poset.leq(first(to), second(to))) s += r[to];
  return s;
}

double CoupledKernel::coupling_defect(const FiniteKernel& q) const {
  if (q.size() != n_) throw DomainError("kernel size does not match coupling");
  double worst = 0.0;
  std::vector<double> m1(n_), m2(n_);
  for (std::size_t p = 0; p < pairs(); ++p) {
    std::fill(m1.begin(), m1.end(), 0.0);
    std::fill(m2.begin(), m2.end(), 0.0);
    const auto r = row(p);
    for (std::size_t to = 0; to < pairs(); ++to) {
      m1[first(to)] += r[to];
      m2[second(to)] += r[to];
    }
    for (std::size_t k = 0; k < n_; ++k) {
      worst = std::max(worst, std::abs(m1[k] - q(first(p), k)));
      worst = std::max(worst, std::abs(m2[k] - q(second(p), k)));
    }
  }
  return worst;
}

UpSetExtremum max_up_set_difference(const FiniteDist& mu, const FiniteDist& nu,
                                    const FinitePoset& poset, UpSetMethod method) {
  require_dims(mu, nu, poset);
  if (method == UpSetMethod::automatic) {
    method = poset.size() <= kMaxEnumerableStates ? UpSetMethod::enumeration
                                                  : UpSetMethod::min_cut;
  }
  return method == UpSetMethod::enumeration ? max_difference_by_enumeration(mu, nu, poset)
                                            : max_difference_by_min_cut(mu, nu, poset);
}

bool stoch_dominates(const FiniteDist& mu, const FiniteDist& nu,
                     const FinitePoset& poset, UpSetMethod method) {
  return max_up_set_difference(mu, nu, poset, method).value <= FiniteDist::kTolerance;
}

double alpha(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset) {
  require_dims(mu, nu, poset);
  const TransportNetwork net = solve_transport(mu, nu, poset);
  return std::clamp(static_cast<double>(net.value) / kProbabilityScale, 0.0, 1.0);
}

std::vector<double> optimal_plan(const FiniteDist& mu, const FiniteDist& nu,
                                 const FinitePoset& poset) {
  require_dims(mu, nu, poset);
  const std::size_t n = poset.size();
  TransportNetwork net = solve_transport(mu, nu, poset);

  std::vector<double> plan(n * n, 0.0);
  std::vector<MaxFlow::Capacity> row_left = net.mu_units;
  std::vector<MaxFlow::Capacity> col_left = net.nu_units;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t id = net.arc_id[i * n + j];
      if (id == SIZE_MAX) continue;
      const MaxFlow::Capacity f = net.flow.flow_on(id);
      plan[i * n + j] = static_cast<double>(f) / kProbabilityScale;
      row_left[i] -= f;
      col_left[j] -= f;
    }
  }
  const auto residual = static_cast<double>(
      std::accumulate(row_left.begin(), row_left.end(), MaxFlow::Capacity{0}));
  if (residual > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (row_left[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_left[j] == 0) continue;
        plan[i * n + j] += static_cast<double>(row_left[i]) *
                           (static_cast<double>(col_left[j]) / residual) / kProbabilityScale;
      }
    }
  }
  return plan;
}

double kappa(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset,
             UpSetMethod method) {
  return std::max(max_up_set_difference(mu, nu, poset, method).value,
                  max_up_set_difference(nu, mu, poset, method).value);
}

double strassen_gap(const FiniteDist& mu, const FiniteDist& nu, const FinitePoset& poset,
                    UpSetMethod method) {
  return max_up_set_difference(mu, nu, poset, method).value;
}

IncreasingCheck kernel_is_increasing(const FiniteKernel& q, const FinitePoset& poset) {
  if (q.size() != poset.size()) throw DomainError("kernel size does not match poset");
  IncreasingCheck check;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j : poset.strictly_above(i)) {
      UpSetExtremum e = max_up_set_difference(q.row(i), q.row(j), poset);
      if (e.value > FiniteDist::kTolerance) {
        check.increasing = false;
        check.witness = MonotonicityWitness{i, j, std::move(e.up_set), e.value};
        return check;
      }
    }
  }
  return check;
}

CoupledKernel maximal_coupling_kernel(const FiniteKernel& q, const FinitePoset& poset) {
  const std::size_t n = q.size();
  if (n != poset.size()) throw DomainError("kernel size does not match poset");
  const std::size_t pairs = n * n;
  std::vector<double> dense(pairs * pairs, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::vector<double> plan = optimal_plan(q.row(i), q.row(j), poset);
      std::copy(plan.begin(), plan.end(), dense.begin() + (i * n + j) * pairs);
    }
  }
  return CoupledKernel(n, std::move(dense));
}

CoupledKernel independent_coupling_kernel(const FiniteKernel& q) {
  const std::size_t n = q.size();
  const std::size_t pairs = n * n;
  std::vector<double> dense(pairs * pairs, 0.0);
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto& a = q.row(p / n);
    const auto& b = q.row(p % n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) dense[p * pairs + k * n + l] = a[k] * b[l];
  }
  return CoupledKernel(n, std::move(dense));
}

FiniteDist iterate_dist(const FiniteDist& mu, const FiniteKernel& q, std::size_t t) {
  if (mu.size() != q.size()) throw DomainError("distribution does not match kernel");
  if (t == 0) return mu;
  std::vector<double> cur = mu.weights();
  for (std::size_t s = 0; s < t; ++s) cur = q.push_forward(cur);
  // Renormalise away accumulated rounding so long horizons stay valid.
  const double total = std::accumulate(cur.begin(), cur.end(), 0.0);
  for (double& v : cur) v = std::max(0.0, v / total);
  return FiniteDist(std::move(cur));
}

double total_variation(const FiniteDist& mu, const FiniteDist& nu) {
  if (mu.size() != nu.size()) throw DomainError("distribution dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
  return 0.5 * s;
}

}  // namespace mcbound
