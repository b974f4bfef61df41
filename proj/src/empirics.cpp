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

#include "mcbound/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

struct SparseRow {
  std::vector<std::size_t> to;
  std::vector<double> prob;
};

std::vector<SparseRow> sparse_rows(const CoupledKernel& qhat) {
  std::vector<SparseRow> rows(qhat.pairs());
  for (std::size_t p = 0; p < qhat.pairs(); ++p) {
    const auto r = qhat.row(p);
    for (std::size_t q = 0; q < r.size(); ++q) {
      if (r[q] > 0.0) {
        rows[p].to.push_back(q);
        rows[p].prob.push_back(r[q]);
      }
    }
  }
  return rows;
}

void require_pair_inputs(const CoupledKernel& qhat, const FiniteDist& mu, const FiniteDist& mu2,
                         const StateSet& c) {
  const std::size_t n = qhat.states();
  if (mu.size() != n || mu2.size() != n || c.size() != n) {
    throw DomainError("initial laws and small set must match the coupled kernel's state count");
  }
}

}  // namespace

double empirical_kolmogorov(std::span<const double> samples_a,
                            std::span<const double> samples_b) {
  if (samples_a.empty() || samples_b.empty()) {
    throw DomainError("empirical Kolmogorov distance of an empty sample");
  }
  std::vector<double> a(samples_a.begin(), samples_a.end());
  std::vector<double> b(samples_b.begin(), samples_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t k = 0;
  double worst = 0.0;
  // Advance past every copy of the next threshold in both samples before
  // comparing, so ties are handled as right-continuous CDF jumps.
  while (i < a.size() || k < b.size()) {
    const double x = std::min(i < a.size() ? a[i] : std::numeric_limits<double>::infinity(),
                              k < b.size() ? b[k] : std::numeric_limits<double>::infinity());
    while (i < a.size() && a[i] <= x) ++i;
    while (k < b.size() && b[k] <= x) ++k;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(k) / nb));
  }
  return worst;
}

double CoupledPathStats::tau_tail(std::int64_t t) const {
  if (tau.empty()) return 0.0;
  std::int64_t count = 0;
  for (std::int64_t v : tau)
    if (v == kCensored || v > t) ++count;
  return static_cast<double>(count) / static_cast<double>(tau.size());
}

CoupledPathStats coupled_simulate_finite(const CoupledKernel& qhat, const FinitePoset& poset,
                                         const FiniteDist& mu, const FiniteDist& mu2,
                                         const StateSet& c, std::int64_t horizon,
                                         std::int64_t n_paths, std::uint64_t seed) {
  require_pair_inputs(qhat, mu, mu2, c);
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (poset.size() != qhat.states()) throw DomainError("poset does not match coupled kernel");

  struct Partial {
    std::vector<std::int64_t> tau;
    std::vector<std::int64_t> visits;
    std::int64_t left = 0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
  };
  const std::vector<double> row_probs_dummy;
  const auto parts = run_substreams<Partial>(
      static_cast<std::size_t>(n_paths), seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        Partial out;
        for (std::size_t path = begin; path < end; ++path) {
          std::size_t x = rng.categorical(mu.weights());
          std::size_t x2 = rng.categorical(mu2.weights());
          std::int64_t tau = CoupledPathStats::kCensored;
          std::int64_t visits = 0;
          bool left = false;
          for (std::int64_t t = 0;; ++t) {
            const bool ordered = poset.leq(x, x2);
            if (ordered && tau == CoupledPathStats::kCensored) tau = t;
            if (!ordered && tau != CoupledPathStats::kCensored) left = true;
            const bool in_c = c[x] && c[x2];
            if (in_c) ++visits;
            if (t == horizon) break;
            const std::size_t next = rng.categorical(qhat.row(qhat.pair_index(x, x2)));
            x = qhat.first(next);
            x2 = qhat.second(next);
            if (in_c) {
              ++out.trials;
              if (poset.leq(x, x2)) ++out.successes;
            }
          }
          out.tau.push_back(tau);
          out.visits.push_back(visits);
          if (left) ++out.left;
        }
        return out;
      });
  CoupledPathStats stats;
  stats.n_paths = n_paths;
  stats.horizon = horizon;
  stats.seed = seed;
  for (const Partial& p : parts) {
    stats.tau.insert(stats.tau.end(), p.tau.begin(), p.tau.end());
    stats.visits.insert(stats.visits.end(), p.visits.begin(), p.visits.end());
    stats.left_graph_after_tau += p.left;
    stats.trials += p.trials;
    stats.trial_successes += p.successes;
  }
  return stats;
}

StateSampler point_mass_sampler(double x) {
  return [x](Rng&) { return x; };
}

CoupledPathStats coupled_simulate_srs(const SRSModel& model, const StateSampler& mu,
                                      const StateSampler& mu2, const Interval& c,
                                      std::int64_t horizon, std::int64_t n_paths,
                                      std::uint64_t seed) {
  if (!std::holds_alternative<TotalRealOrder>(model.order)) {
    throw DomainError("coupled SRS simulation needs a totally ordered real state space");
  }
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  struct Partial {
    std::vector<std::int64_t> tau;
    std::vector<std::int64_t> visits;
    std::int64_t left = 0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
  };
  const auto parts = run_substreams<Partial>(
      static_cast<std::size_t>(n_paths), seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        Partial out;
        for (std::size_t path = begin; path < end; ++path) {
          double x = mu(rng);
          double x2 = mu2(rng);
          std::int64_t tau = CoupledPathStats::kCensored;
          std::int64_t visits = 0;
          bool left = false;
          for (std::int64_t t = 0;; ++t) {
            const bool ordered = x <= x2;
            if (ordered && tau == CoupledPathStats::kCensored) tau = t;
            if (!ordered && tau != CoupledPathStats::kCensored) left = true;
            const bool in_c = c.contains(x) && c.contains(x2);
            if (in_c) ++visits;
            if (t == horizon) break;
            const Shock w = model.shocks.draw(rng);
            const Shock w2 = model.shocks.draw(rng);
            x = step(model, x, w);
            x2 = step(model, x2, w2);
            if (in_c) {
              ++out.trials;
              if (x <= x2) ++out.successes;
            }
          }
          out.tau.push_back(tau);
          out.visits.push_back(visits);
          if (left) ++out.left;
        }
        return out;
      });
  CoupledPathStats stats;
  stats.n_paths = n_paths;
  stats.horizon = horizon;
  stats.seed = seed;
  for (const Partial& p : parts) {
    stats.tau.insert(stats.tau.end(), p.tau.begin(), p.tau.end());
    stats.visits.insert(stats.visits.end(), p.visits.begin(), p.visits.end());
    stats.left_graph_after_tau += p.left;
    stats.trials += p.trials;
    stats.trial_successes += p.successes;
  }
  return stats;
}

ExactCouplingTails exact_coupling_tails(const CoupledKernel& qhat, const FinitePoset* poset,
                                        const FiniteDist& mu, const FiniteDist& mu2,
                                        const StateSet& c, std::int64_t t_max,
                                        std::int64_t j_cap) {
  require_pair_inputs(qhat, mu, mu2, c);
  if (t_max < 0 || j_cap < 0) throw DomainError("t_max and j_cap must be nonnegative");
  if (poset && poset->size() != qhat.states()) {
    throw DomainError("poset does not match coupled kernel");
  }
  const std::size_t n = qhat.states();
  const std::size_t pairs = qhat.pairs();
  // Counts are tracked exactly up to j_cap + 1 so that N_{t-1} = N_t - 1{in C}
  // stays exact for every j <= j_cap.
  const auto cap = static_cast<std::size_t>(j_cap + 1);
  const std::size_t levels = cap + 1;
  if (static_cast<double>(pairs) * static_cast<double>(levels) * 2.0 > 2e7) {
    throw CapacityError("augmented coupled chain too large for exact iteration");
  }

  std::vector<bool> in_c(pairs), ordered(pairs, false);
  for (std::size_t p = 0; p < pairs; ++p) {
    in_c[p] = c[qhat.first(p)] && c[qhat.second(p)];
    if (poset) ordered[p] = poset->leq(qhat.first(p), qhat.second(p));
  }
  auto index = [&](std::size_t p, std::size_t count, std::size_t hit) {
    return (p * levels + count) * 2 + hit;
  };

  std::vector<double> dist(pairs * levels * 2, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t p = qhat.pair_index(i, k);
      dist[index(p, in_c[p] ? 1 : 0, ordered[p] ? 1 : 0)] += mu[i] * mu2[k];
    }
  }

  ExactCouplingTails out;
  out.t_max = t_max;
  out.j_cap = j_cap;
  const auto jn = static_cast<std::size_t>(j_cap + 1);
  auto record = [&](const std::vector<double>& d) {
    double tau_gt = 0.0;
    std::vector<double> n_lt(jn, 0.0), tau_n_lt(jn, 0.0), tau_n_ge(jn, 0.0), tau_prev_ge(jn, 0.0);
    for (std::size_t p = 0; p < pairs; ++p) {
      for (std::size_t count = 0; count < levels; ++count) {
        for (std::size_t hit = 0; hit < 2; ++hit) {
          const double m = d[index(p, count, hit)];
          if (m == 0.0) continue;
          const std::size_t prev = count - (in_c[p] ? 1 : 0);
          for (std::size_t j = 0; j < jn; ++j) {
            if (count < j) n_lt[j] += m;
            if (hit == 0) {
              (count < j ? tau_n_lt[j] : tau_n_ge[j]) += m;
              if (prev >= j) tau_prev_ge[j] += m;
            }
          }
          if (hit == 0) tau_gt += m;
        }
      }
    }
    out.tau_gt.push_back(tau_gt);
    out.n_lt.push_back(std::move(n_lt));
    out.tau_gt_n_lt.push_back(std::move(tau_n_lt));
    out.tau_gt_n_ge.push_back(std::move(tau_n_ge));
    out.tau_gt_nprev_ge.push_back(std::move(tau_prev_ge));
  };

  record(dist);
  const std::vector<SparseRow> rows = sparse_rows(qhat);
  std::vector<double> next(dist.size());
  for (std::int64_t t = 1; t <= t_max; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t p = 0; p < pairs; ++p) {
      const SparseRow& row = rows[p];
      for (std::size_t count = 0; count < levels; ++count) {
        for (std::size_t hit = 0; hit < 2; ++hit) {
          const double m = dist[index(p, count, hit)];
          if (m == 0.0) continue;
          for (std::size_t k = 0; k < row.to.size(); ++k) {
            const std::size_t q = row.to[k];
            const std::size_t nc = std::min(cap, count + (in_c[q] ? 1 : 0));
            const std::size_t nh = (hit == 1 || ordered[q]) ? 1 : 0;
            next[index(q, nc, nh)] += m * row.prob[k];
          }
        }
      }
    }
    dist.swap(next);
    record(dist);
  }
  return out;
}

double exact_Nt_tail(const CoupledKernel& qhat, const FiniteDist& mu, const FiniteDist& mu2,
                     const StateSet& c, std::int64_t j, std::int64_t t) {
  if (qhat.states() > 30 || j > 10) {
    throw CapacityError("exact N_t tail is limited to 30 states and j <= 10");
  }
  if (j < 0 || t < 0) throw DomainError("j and t must be nonnegative");
  return exact_coupling_tails(qhat, nullptr, mu, mu2, c, t, j).n_lt.back()[static_cast<std::size_t>(j)];
}

SupermartingaleReport supermartingale_check(const CoupledKernel& qhat,
                                            const DriftCertificate& cert) {
  const std::size_t n = qhat.states();
  if (cert.v_table.size() != n || cert.small_set.members.size() != n) {
    throw DomainError("certificate does not match the coupled kernel");
  }
  std::vector<double> w(qhat.pairs());
  for (std::size_t p = 0; p < qhat.pairs(); ++p) {
    w[p] = 0.5 * (cert.v_table[qhat.first(p)] + cert.v_table[qhat.second(p)]);
  }
  const double gamma = cert.gamma();
  SupermartingaleReport report;
  report.worst_in_c = -std::numeric_limits<double>::infinity();
  report.worst_off_c = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < qhat.pairs(); ++p) {
    const auto r = qhat.row(p);
    double qw = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) qw += r[q] * w[q];
    const bool in_c = cert.small_set.members[qhat.first(p)] &&
                      cert.small_set.members[qhat.second(p)];
    if (in_c) {
      report.any_in_c = true;
      const double slack = qw - gamma * cert.d;
      if (slack > report.worst_in_c) {
        report.worst_in_c = slack;
        report.witness_in_c = p;
      }
    } else {
      report.any_off_c = true;
      const double slack = qw - gamma * w[p];
      if (slack > report.worst_off_c) {
        report.worst_off_c = slack;
        report.witness_off_c = p;
      }
    }
  }
  report.holds = (!report.any_in_c || report.worst_in_c <= kSupermartingaleTolerance) &&
                 (!report.any_off_c || report.worst_off_c <= kSupermartingaleTolerance);
  return report;
}

std::vector<ComparisonRow> empirical_kappa_vs_bound(const FiniteKernel& q,
                                                    const FinitePoset& poset,
                                                    const FiniteDist& mu, const FiniteDist& mu2,
                                                    const DriftCertificate& cert, double eps,
                                                    std::int64_t horizon) {
  const double h_val = h_functional(mu, mu2, cert.v_table);
  std::vector<ComparisonRow> rows;
  FiniteDist a = mu;
  FiniteDist b = mu2;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    a = iterate_dist(a, q, 1);
    b = iterate_dist(b, q, 1);
    const OptimizedBound ob = optimize_bound(eps, cert.gamma(), cert.d, h_val, t);
    ComparisonRow row{t, kappa(a, b, poset), ob.value, ob.j_star, ob.tail_term,
                      ob.coupling_term, false, kExactComparisonTolerance};
    row.pass = row.kappa <= row.bound + row.band;
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<double>> simulate_marginals(const SRSModel& model,
                                                    const StateSampler& init,
                                                    std::int64_t horizon, std::int64_t n_paths,
                                                    std::uint64_t seed) {
  using Block = std::vector<std::vector<double>>;
  const auto parts = run_substreams<Block>(
      static_cast<std::size_t>(n_paths), seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        Block block(static_cast<std::size_t>(horizon) + 1);
        for (std::size_t path = begin; path < end; ++path) {
          double x = init(rng);
          block[0].push_back(x);
          for (std::int64_t t = 1; t <= horizon; ++t) {
            x = step(model, x, model.shocks.draw(rng));
            block[static_cast<std::size_t>(t)].push_back(x);
          }
        }
        return block;
      });
  Block out(static_cast<std::size_t>(horizon) + 1);
  for (const Block& b : parts)
    for (std::size_t t = 0; t < b.size(); ++t) out[t].insert(out[t].end(), b[t].begin(), b[t].end());
  return out;
}

std::vector<ComparisonRow> empirical_kappa_vs_bound(const SRSModel& model,
                                                    const StateSampler& mu,
                                                    const StateSampler& mu2,
                                                    const DriftCertificate& cert, double eps,
                                                    double h_val, std::int64_t horizon,
                                                    std::int64_t n_paths, std::uint64_t seed) {
  const auto xs = simulate_marginals(model, mu, horizon, n_paths, substream_seed(seed, 1));
  const auto ys = simulate_marginals(model, mu2, horizon, n_paths, substream_seed(seed, 2));
  // Largest standard deviation of a difference of two independent ECDF values.
  const double sigma = 0.5 * std::sqrt(2.0 / static_cast<double>(n_paths));
  std::vector<ComparisonRow> rows;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const OptimizedBound ob = optimize_bound(eps, cert.gamma(), cert.d, h_val, t);
    ComparisonRow row{t, empirical_kolmogorov(xs[ti], ys[ti]), ob.value, ob.j_star,
                      ob.tail_term, ob.coupling_term, false, 3.0 * sigma};
    row.pass = row.kappa <= row.bound + row.band;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mcbound
