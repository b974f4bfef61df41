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

#include "mcbound/srs.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool is_total_real(const OrderKind& order) {
  return std::holds_alternative<TotalRealOrder>(order);
}

struct HitCount {
  std::int64_t hits = 0;
  std::int64_t n = 0;
};

// Frequency of {F(x2, w') <= F(x, w)} over n independent shock pairs.
EstimateWithError ordering_frequency(const SRSModel& model, double x, double x2,
                                     std::int64_t n, std::uint64_t seed) {
  const auto partials = run_substreams<HitCount>(
      static_cast<std::size_t>(n), seed, [&](Rng& rng, std::size_t begin, std::size_t end) {
        HitCount h;
        for (std::size_t k = begin; k < end; ++k) {
          const Shock w = model.shocks.draw(rng);
          const Shock w2 = model.shocks.draw(rng);
          if (leq(model.order, step(model, x2, w2), step(model, x, w))) ++h.hits;
          ++h.n;
        }
        return h;
      });
  HitCount total;
  for (const HitCount& h : partials) {
    total.hits += h.hits;
    total.n += h.n;
  }
  return frequency_estimate(total.hits, total.n, seed);
}

}  // namespace

double step(const SRSModel& model, double x, const Shock& w) {
  if (!model.domain.contains(x)) {
    throw ModelError(model.name + ": state " + fmt(x) + " outside the state space");
  }
  const double y = model.map(x, w);
  if (!std::isfinite(y) || !model.domain.contains(y)) {
    throw ModelError(model.name + ": F(" + fmt(x) + ", w) = " + fmt(y) +
                     " leaves the state space");
  }
  return y;
}

std::vector<double> simulate_path(const SRSModel& model, double x0, std::int64_t steps,
                                  std::uint64_t seed) {
  if (steps < 0) throw DomainError("path length must be nonnegative");
  std::vector<double> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back(x0);
  Rng rng(seed);
  for (std::int64_t t = 0; t < steps; ++t) {
    try {
      path.push_back(step(model, path.back(), model.shocks.draw(rng)));
    } catch (const ModelError& e) {
      throw ModelError(std::string(e.what()) + " (at t = " + std::to_string(t + 1) + ")");
    }
  }
  return path;
}

PairSampler uniform_pair_sampler(Interval range) {
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi)) {
    throw DomainError("uniform pair sampler needs a bounded interval");
  }
  return [range](Rng& rng) {
    double a = rng.uniform(range.lo, range.hi);
    double b = rng.uniform(range.lo, range.hi);
    if (b < a) std::swap(a, b);
    return std::pair{a, b};
  };
}

MonotonicityReport monotonicity_test(const SRSModel& model, const PairSampler& pairs,
                                     std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("monotonicity test needs n >= 1");
  MonotonicityReport report;
  Rng rng(seed);
  for (std::int64_t k = 0; k < n; ++k) {
    const auto [x, x2] = pairs(rng);
    const Shock w = model.shocks.draw(rng);
    const double fx = model.map(x, w);
    const double fx2 = model.map(x2, w);
    ++report.checked;
    if (leq(model.order, x, x2) && !leq(model.order, fx, fx2)) {
      report.passed = false;
      report.counterexample = MonotonicityCounterexample{x, x2, w, fx, fx2};
      return report;
    }
  }
  return report;
}

EReport estimate_e(const SRSModel& model, const SmallSetSpec& c, std::int64_t n,
                   std::uint64_t seed) {
  if (n < 1) throw DomainError("estimate_e needs n >= 1");
  if (!c.extremes && c.grid.empty()) {
    throw ConfigError("small_set", "estimating e needs the extremes of C or a grid over C");
  }
  if (c.extremes && c.extremes->lo > c.extremes->hi) {
    throw DomainError("small set is empty");
  }

  if (c.extremes && is_total_real(model.order)) {
    const MonotonicityReport mono =
        monotonicity_test(model, uniform_pair_sampler(*c.extremes), 4096,
                          substream_seed(seed, 0xA11CE));
    if (mono.passed) {
      EReport r;
      r.used_extremes = true;
      r.argmin_x = c.extremes->lo;
      r.argmin_x2 = c.extremes->hi;
      r.estimate = ordering_frequency(model, r.argmin_x, r.argmin_x2, n, seed);
      return r;
    }
  }

  std::vector<double> grid = c.grid;
  if (grid.empty()) {
    constexpr int kDefaultCells = 9;
    for (int k = 0; k < kDefaultCells; ++k) {
      grid.push_back(c.extremes->lo +
                     (c.extremes->hi - c.extremes->lo) * k / (kDefaultCells - 1));
    }
  }
  EReport best;
  best.estimate.value = std::numeric_limits<double>::infinity();
  std::uint64_t cell = 0;
  for (double x : grid) {
    for (double x2 : grid) {
      const EstimateWithError e = ordering_frequency(model, x, x2, n, substream_seed(seed, ++cell));
      if (e.value < best.estimate.value) {
        best.estimate = e;
        best.argmin_x = x;
        best.argmin_x2 = x2;
      }
    }
  }
  best.estimate.seed = seed;
  return best;
}

double exact_e(const SRSModel& model, const Interval& c) {
  const auto& atoms = model.shocks.atoms;
  if (atoms.empty()) throw DomainError(model.name + ": shock law has no finite support");
  double e = 0.0;
  for (const ShockAtom& a : atoms) {
    for (const ShockAtom& b : atoms) {
      if (leq(model.order, step(model, c.hi, b.w), step(model, c.lo, a.w))) {
        e += a.prob * b.prob;
      }
    }
  }
  return e;
}

double exact_qv(const SRSModel& model, double x) {
  const auto& atoms = model.shocks.atoms;
  if (atoms.empty()) throw DomainError(model.name + ": shock law has no finite support");
  double s = 0.0;
  for (const ShockAtom& a : atoms) s += a.prob * model.v(step(model, x, a.w));
  return s;
}

GridDriftCheck verify_drift_on_grid(const SRSModel& model, DriftConstants k,
                                    const std::vector<double>& grid, std::int64_t n_mc,
                                    std::uint64_t seed) {
  GridDriftCheck check;
  check.worst_excess = -std::numeric_limits<double>::infinity();
  std::uint64_t point = 0;
  for (double x : grid) {
    const double rhs = k.lambda * model.v(x) + k.beta;
    double excess = 0.0;
    if (!model.shocks.atoms.empty()) {
      excess = exact_qv(model, x) - rhs;
    } else {
      struct Moments {
        double sum = 0.0;
        double sum_sq = 0.0;
        std::int64_t n = 0;
      };
      const auto parts = run_substreams<Moments>(
          static_cast<std::size_t>(n_mc), substream_seed(seed, ++point),
          [&](Rng& rng, std::size_t begin, std::size_t end) {
            Moments m;
            for (std::size_t i = begin; i < end; ++i) {
              const double val = model.v(step(model, x, model.shocks.draw(rng)));
              m.sum += val;
              m.sum_sq += val * val;
              ++m.n;
            }
            return m;
          });
      Moments tot;
      for (const Moments& m : parts) {
        tot.sum += m.sum;
        tot.sum_sq += m.sum_sq;
        tot.n += m.n;
      }
      const auto nn = static_cast<double>(tot.n);
      const double mean = tot.sum / nn;
      const double var = std::max(0.0, (tot.sum_sq - nn * mean * mean) / (nn - 1.0));
      excess = mean - 3.0 * std::sqrt(var / nn) - rhs;
    }
    excess -= kDriftTolerance * std::max(1.0, std::abs(rhs));
    if (excess > check.worst_excess) {
      check.worst_excess = excess;
      check.worst_x = x;
    }
  }
  check.passed = check.worst_excess <= 0.0;
  return check;
}

double tcp_mean_root(double x) {
  // s = u^2 turns the integrand into sqrt(x^2 + 2u^2) exp(-u^2) 2u, smooth at 0.
  constexpr int kIntervals = 4000;
  constexpr double kUpper = 9.0;
  const double h = kUpper / kIntervals;
  auto f = [x](double u) { return std::sqrt(x * x + 2.0 * u * u) * std::exp(-u * u) * 2.0 * u; };
  double s = f(0.0) + f(kUpper);
  for (int i = 1; i < kIntervals; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

SRSModel builtin_tcp(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("tcp: a must lie in (0, 1)");
  SRSModel m;
  m.name = "tcp(a=" + fmt(a) + ")";
  m.map = [a](double x, const Shock& w) { return a * std::sqrt(x * x + 2.0 * w[0]); };
  m.shocks.method = "E ~ exponential(1) by inverse CDF, -log(1 - U)";
  m.shocks.draw = [](Rng& rng) { return Shock{rng.exponential(1.0), 0.0}; };

  // Tabulate QV(x) = a E sqrt(x^2 + 2E) + 1 once; beta(lambda) is its
  // excess over lambda V on the grid. Only lambda >= a is admissible, since
  // QV grows like a x.
  auto qv = std::make_shared<std::vector<std::pair<double, double>>>();
  for (double x = 0.0; x <= 60.0; x += 0.05) qv->emplace_back(x, a * tcp_mean_root(x) + 1.0);
  m.drift_for_d = [a, qv](double d) {
    DriftConstants best{};
    double best_gamma = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 1000; ++k) {
      const double lambda = a + (0.999 - a) * k / 1000.0;
      double beta = 0.0;
      for (const auto& [x, q] : *qv) beta = std::max(beta, q - lambda * (x + 1.0));
      const double gamma = lambda + 2.0 * beta / d;
      if (gamma < best_gamma) {
        best_gamma = gamma;
        best = {lambda, beta};
      }
    }
    return best;
  };
  // P{hi^2 + 2E' <= lo^2 + 2E} = P{E - E' >= (hi^2 - lo^2)/2}.
  m.closed_form_e = [](const Interval& c) {
    return 0.5 * std::exp(-0.5 * (c.hi * c.hi - c.lo * c.lo));
  };
  return m;
}

SRSModel builtin_half_bernoulli() {
  SRSModel m;
  m.name = "half_bernoulli";
  // [0, 2] is invariant: x/2 + W <= 2 whenever x <= 2.
  m.domain = {0.0, 2.0};
  m.map = [](double x, const Shock& w) { return 0.5 * x + w[0]; };
  m.shocks.method = "W = 1 if U >= 1/2 else 0 (inverse CDF)";
  m.shocks.draw = [](Rng& rng) { return Shock{rng.uniform() >= 0.5 ? 1.0 : 0.0, 0.0}; };
  m.shocks.atoms = {{{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 0.5}};
  m.drift_for_d = [](double) { return DriftConstants{0.5, 1.0}; };
  m.closed_form_e = [m_copy = m](const Interval& c) { return exact_e(m_copy, c); };
  return m;
}

SRSModel builtin_wealth(std::function<double(double)> g,
                        std::function<double(Rng&)> eta_sampler,
                        std::function<double(Rng&)> xi_sampler, double lambda, double xi_bar,
                        std::uint64_t check_seed) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("wealth: lambda must lie in [0, 1)");
  if (!(xi_bar >= 0.0) || !std::isfinite(xi_bar)) {
    throw DomainError("wealth: xi_bar must be finite and nonnegative");
  }
  SRSModel m;
  m.name = "wealth";
  m.map = [g](double x, const Shock& w) { return w[0] * g(x) + w[1]; };
  m.shocks.method = "eta and xi from the supplied samplers, eta drawn first";
  m.shocks.draw = [eta_sampler, xi_sampler](Rng& rng) {
    const double eta = eta_sampler(rng);
    const double xi = xi_sampler(rng);
    return Shock{eta, xi};
  };
  m.drift_for_d = [lambda, xi_bar](double) { return DriftConstants{lambda, xi_bar + 1.0}; };

  // Spot-check E[eta G(x)] <= lambda x on a log grid with a 3 sd allowance
  // (plus 1e-9 relative, for rounding in the running mean).
  constexpr std::int64_t kSamples = 100000;
  std::uint64_t point = 0;
  for (double x = 1e-3; x <= 1e3 * 1.0000001; x *= std::sqrt(10.0)) {
    const double gx = g(x);
    std::vector<double> draws;
    draws.reserve(kSamples);
    Rng rng(substream_seed(check_seed, ++point));
    for (std::int64_t k = 0; k < kSamples; ++k) draws.push_back(eta_sampler(rng) * gx);
    const EstimateWithError est = mean_estimate(draws, check_seed);
    if (est.value - 3.0 * est.std_error > lambda * x * (1.0 + 1e-9)) {
      throw ModelError("wealth: E[eta G(x)] = " + fmt(est.value) + " exceeds lambda x = " +
                       fmt(lambda * x) + " at x = " + fmt(x));
    }
  }
  return m;
}

SRSModel builtin_wealth_default() {
  constexpr double kEta = 0.9;
  SRSModel m = builtin_wealth([](double x) { return x; }, [](Rng&) { return kEta; },
                              [](Rng& rng) { return rng.exponential(1.0); }, kEta, 1.0);
  m.name = "wealth(G=x, eta=0.9, xi~exp(1))";
  m.shocks.method = "eta = 0.9; xi ~ exponential(1) by inverse CDF, -log(1 - U)";
  // P{eta hi + xi' <= eta lo + xi} = P{xi - xi' >= eta (hi - lo)}.
  m.closed_form_e = [](const Interval& c) { return 0.5 * std::exp(-kEta * (c.hi - c.lo)); };
  return m;
}

}  // namespace mcbound
