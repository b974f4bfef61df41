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

#include "mcbound/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcbound/bounds.hpp"
#include "mcbound/errors.hpp"
#include "mcbound/random_instances.hpp"
#include "mcbound/srs.hpp"

namespace mcbound {

namespace {

// Substream tags, so that each Monte Carlo ingredient of a run gets its own
// generator regardless of which others are requested.
constexpr std::uint64_t kStreamE = 1;
constexpr std::uint64_t kStreamDrift = 2;
constexpr std::uint64_t kStreamCompare = 3;

constexpr std::uint64_t kDefaultSeed = 20261015;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string fmt_full(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<double> d_values(const ModelConfig& cfg, std::optional<double> from_c) {
  if (from_c) return {*from_c};
  if (cfg.drift.d_grid) return cfg.drift.d_grid->values();
  return {*cfg.drift.d};
}

// Keeps the table whose bound at t_max is smallest; ties go to the smaller d.
void keep_best(std::optional<BoundReport>& best, BoundReport candidate,
               std::vector<DScanEntry>& scan) {
  scan.push_back({candidate.cert.d, candidate.cert.gamma(), candidate.eps.value,
                  candidate.h_val, candidate.rows.back().bound_value,
                  candidate.vacuous_only()});
  if (!best || candidate.rows.back().bound_value < best->rows.back().bound_value) {
    best = std::move(candidate);
  }
}

AnalysisOutput analyze_finite(const ModelConfig& cfg, const FiniteModelSpec& spec) {
  const FiniteKernel& q = spec.kernel;
  const FinitePoset& poset = spec.poset;
  const IncreasingCheck inc = kernel_is_increasing(q, poset);
  if (!inc) {
    const auto& w = *inc.witness;
    throw ConfigError("model.finite.kernel",
                      "kernel is not increasing: state " + poset.label(w.lower) +
                          " precedes " + poset.label(w.upper) + " but puts " +
                          fmt(w.excess) + " more mass on an up-set");
  }
  const FiniteDist mu(cfg.initial.mu);
  const FiniteDist mu2(cfg.initial.mu2);
  const std::vector<double>& v = cfg.drift.v_table;
  const double h_val = h_functional(mu, mu2, v);

  AnalysisOutput out;
  std::optional<BoundReport> best;
  for (double d : d_values(cfg, std::nullopt)) {
    DriftCertificate cert;
    if (cfg.drift.fit()) {
      cert = fit_drift(q, v, cfg.drift.lambda_grid, d);
    } else {
      cert = make_certificate(v, *cfg.drift.lambda, *cfg.drift.beta, d);
      const DriftVerification check = verify_drift(q, cert);
      if (!check.verified) {
        throw ConfigError("drift", "QV <= lambda V + beta fails at state " +
                                       poset.label(check.worst_state) + " by " +
                                       fmt(check.worst_excess));
      }
    }
    EpsilonSource eps;
    eps.kind = EpsilonSource::Kind::exact;
    if (cert.small_set.empty) {
      out.notes.push_back("d = " + fmt(d) + ": " + cert.small_set.warning +
                          "; eps taken as 0");
    } else {
      eps.value = epsilon_exact(q, poset, cert.small_set.members);
    }
    keep_best(best, bound_table(cert, eps, h_val, cfg.t_max,
                                "finite(n=" + std::to_string(q.size()) + ")"),
              out.d_scan);
  }
  out.report = std::move(*best);
  if (out.d_scan.size() == 1) out.d_scan.clear();
  out.comparison = empirical_kappa_vs_bound(q, poset, mu, mu2, out.report.cert,
                                            out.report.eps.value, cfg.t_max);
  return out;
}

SRSModel make_builtin(const BuiltinModelSpec& spec) {
  if (spec.name == "tcp") return builtin_tcp(spec.params.at("a"));
  if (spec.name == "half_bernoulli") return builtin_half_bernoulli();
  return builtin_wealth_default();
}

std::vector<double> drift_grid(const SRSModel& model) {
  std::vector<double> grid;
  if (std::isfinite(model.domain.hi)) {
    for (int k = 0; k <= 64; ++k) {
      grid.push_back(model.domain.lo + (model.domain.hi - model.domain.lo) * k / 64.0);
    }
    return grid;
  }
  for (double x : {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, 1000.0}) {
    grid.push_back(model.domain.lo + x);
  }
  return grid;
}

AnalysisOutput analyze_builtin(const ModelConfig& cfg, const BuiltinModelSpec& spec) {
  const SRSModel model = make_builtin(spec);
  const double x0 = *cfg.initial.x0;
  const double x0p = *cfg.initial.x0_prime;
  const double h_val = 0.5 * (model.v(x0) + model.v(x0p));
  const std::optional<std::uint64_t> seed =
      cfg.monte_carlo ? cfg.monte_carlo->seed : std::nullopt;

  std::optional<double> from_c;
  if (spec.c) from_c = model.v(std::min(*spec.c, model.domain.hi));

  AnalysisOutput out;
  std::optional<BoundReport> best;
  for (double d : d_values(cfg, from_c)) {
    const DriftConstants k = cfg.drift.lambda
                                 ? DriftConstants{*cfg.drift.lambda, *cfg.drift.beta}
                                 : model.drift_for_d(d);
    DriftCertificate cert =
        make_certificate(model.v_name, model.v, model.domain, k.lambda, k.beta, d);
    if (!model.shocks.atoms.empty() || seed) {
      const std::int64_t n_mc = std::min<std::int64_t>(cfg.monte_carlo ? cfg.monte_carlo->n : 1,
                                                       200000);
      const GridDriftCheck check = verify_drift_on_grid(
          model, k, drift_grid(model), n_mc, substream_seed(seed.value_or(0), kStreamDrift));
      if (!check.passed) {
        throw ConfigError("drift", "QV <= lambda V + beta fails near x = " +
                                       fmt(check.worst_x) + " by " + fmt(check.worst_excess));
      }
      cert.verified = true;
    } else {
      out.notes.push_back("drift constants are the model's own; add a monte_carlo block to "
                          "re-verify them on a grid");
    }
    if (cert.small_set.empty) throw ConfigError("drift.d", "small set {V <= d} is empty");
    // d = V(c) was computed from c, so C = [lo, c]; bisection could only add
    // rounding noise to the upper end.
    if (from_c) cert.small_set.interval.hi = std::min(*spec.c, model.domain.hi);
    const Interval c = cert.small_set.interval;

    EpsilonSource eps;
    switch (cfg.epsilon) {
      case EpsilonMode::exact:
        eps.kind = EpsilonSource::Kind::exact;
        eps.value = exact_e(model, c);
        break;
      case EpsilonMode::monte_carlo: {
        const EReport r = estimate_e(model, SmallSetSpec{c, {}}, cfg.monte_carlo->n,
                                     substream_seed(*seed, kStreamE));
        eps.kind = EpsilonSource::Kind::monte_carlo;
        eps.value = std::clamp(r.estimate.value, 0.0, 1.0);
        eps.std_error = r.estimate.std_error;
        eps.n_samples = r.estimate.n_samples;
        eps.seed = *seed;
        break;
      }
      default:
        eps.kind = EpsilonSource::Kind::closed_form;
        eps.value = model.closed_form_e(c);
        break;
    }
    BoundReport rep = bound_table(cert, eps, h_val, cfg.t_max, model.name);
    if (seed) rep.seeds.push_back(*seed);
    keep_best(best, std::move(rep), out.d_scan);
  }
  out.report = std::move(*best);
  if (out.d_scan.size() == 1) out.d_scan.clear();

  if (cfg.monte_carlo && cfg.monte_carlo->paths > 0) {
    out.comparison = empirical_kappa_vs_bound(
        model, point_mass_sampler(x0), point_mass_sampler(x0p), out.report.cert,
        out.report.eps.value, h_val, cfg.t_max, cfg.monte_carlo->paths,
        substream_seed(*seed, kStreamCompare));
  }
  return out;
}

std::string check_line(const ReproduceCheck& c) {
  std::ostringstream os;
  os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": expected " << fmt(c.expected)
     << ", observed " << fmt_full(c.observed);
  if (c.band > 0.0) os << " (band " << fmt(c.band) << ")";
  os << '\n';
  return os.str();
}

ReproduceCheck band_check(std::string name, double expected, const EstimateWithError& e) {
  return {std::move(name), expected, e.value, 3.0 * e.std_error, e.within(expected)};
}

std::string summarize(const AnalysisOutput& out) {
  std::ostringstream os;
  const BoundReport& r = out.report;
  os << "  certificate: V = " << r.cert.v_name << ", lambda = " << fmt(r.cert.lambda)
     << ", beta = " << fmt(r.cert.beta) << ", d = " << fmt(r.cert.d)
     << ", gamma = " << fmt(r.cert.gamma()) << ", C = " << r.cert.small_set.describe()
     << (r.cert.verified ? " (verified)" : " (not re-verified)") << '\n';
  os << "  eps = " << fmt_full(r.eps.value) << " [" << r.eps.provenance() << "], H = "
     << fmt(r.h_val) << '\n';
  write_human_table(os, r);
  if (r.vacuous_only()) os << "  every bound row is vacuous (>= 1)\n";
  for (const std::string& n : out.notes) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace

AnalysisOutput analyze(const ModelConfig& cfg) {
  if (const auto* f = std::get_if<FiniteModelSpec>(&cfg.model)) return analyze_finite(cfg, *f);
  return analyze_builtin(cfg, std::get<BuiltinModelSpec>(cfg.model));
}

int exit_code_for(const AnalysisOutput& out) { return out.report.vacuous_only() ? 2 : 0; }

ReproduceResult reproduce_tcp(const ReproduceOptions& opts) {
  const double a = 0.5;
  const double c = opts.c.value_or(1.0);
  const std::uint64_t seed = opts.seed.value_or(kDefaultSeed);
  const std::int64_t n = opts.mc_samples.value_or(1000000);
  if (!(c > 0.0)) throw ConfigError("--c", "must be positive");
  const SRSModel model = builtin_tcp(a);

  ReproduceResult res;
  const EReport e = estimate_e(model, SmallSetSpec{Interval{0.0, c}, {}}, n,
                               substream_seed(seed, kStreamE));
  const double printed = 1.0 - 0.5 * std::exp(-0.5 * c * c);
  const double laplace = 0.5 * std::exp(-0.5 * c * c);
  res.checks.push_back(band_check("e vs printed closed form 1 - exp(-c^2/2)/2", printed,
                                  e.estimate));
  res.checks.push_back(band_check("e vs Laplace tail exp(-c^2/2)/2", laplace, e.estimate));

  // The Laplace identity itself, from independent exponential pairs.
  struct Count {
    std::int64_t hits = 0;
  };
  const auto parts = run_substreams<Count>(
      static_cast<std::size_t>(n), substream_seed(seed, 0x1A91),
      [&](Rng& rng, std::size_t begin, std::size_t end) {
        Count k;
        for (std::size_t i = begin; i < end; ++i) {
          const double e1 = rng.exponential();
          const double e2 = rng.exponential();
          if (e2 - e1 > 0.5 * c * c) ++k.hits;
        }
        return k;
      });
  std::int64_t hits = 0;
  for (const Count& k : parts) hits += k.hits;
  res.checks.push_back(
      band_check("P{E' - E > c^2/2} vs exp(-c^2/2)/2", laplace, frequency_estimate(hits, n, seed)));

  ModelConfig cfg;
  cfg.model = BuiltinModelSpec{"tcp", {{"a", a}}, c};
  cfg.initial.x0 = 0.0;
  cfg.initial.x0_prime = c;
  cfg.t_max = opts.t_max.value_or(100);
  cfg.epsilon = EpsilonMode::monte_carlo;
  cfg.monte_carlo = MonteCarloSpec{n, 0, seed};
  if (opts.d_grid) {
    std::get<BuiltinModelSpec>(cfg.model).c.reset();
    cfg.drift.d_grid = opts.d_grid;
  }
  res.out = analyze(cfg);

  std::ostringstream os;
  os << "TCP window size, X' = a sqrt(X^2 + 2E), a = " << a << ", C = [0, " << fmt(c) << "]\n";
  os << "  e (Monte Carlo, n = " << n << ", seed = " << seed << ") = " << fmt_full(e.estimate.value)
     << " +/- " << fmt(e.estimate.std_error) << '\n';
  os << "  printed closed form 1 - exp(-c^2/2)/2 = " << fmt_full(printed) << '\n';
  os << "  Laplace tail exp(-c^2/2)/2            = " << fmt_full(laplace) << '\n';
  for (const ReproduceCheck& k : res.checks) os << check_line(k);
  os << summarize(res.out);
  res.narrative = os.str();
  return res;
}

MinorizationDemo minorization_demo() {
  const double r = std::sqrt(2.0) - 1.0;
  MinorizationDemo demo;
  demo.support = {0.0, r / 2.0, 1.0, r / 2.0 + 1.0};
  // Next-state laws of X' = X/2 + W from x = 0 and from x = sqrt(2) - 1.
  const FiniteDist from_zero(std::vector<double>{0.5, 0.0, 0.5, 0.0});
  const FiniteDist from_r(std::vector<double>{0.0, 0.5, 0.0, 0.5});
  const FiniteKernel rows(std::vector<FiniteDist>{from_zero, from_r, from_zero, from_r});
  const StateSet c{true, true, false, false};
  demo.eps_hat_identity = optimal_minorization(rows, c);
  const FinitePoset identity = FinitePoset::identity(4);
  const FinitePoset real = FinitePoset::chain(4);  // support is listed in increasing order
  demo.eps_identity = std::min({alpha(from_zero, from_r, identity),
                                alpha(from_r, from_zero, identity), 1.0});
  demo.eps_real_order =
      std::min({alpha(from_zero, from_r, real), alpha(from_r, from_zero, real), 1.0});
  return demo;
}

ReproduceResult reproduce_rational(const ReproduceOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(kDefaultSeed);
  const std::int64_t n = opts.mc_samples.value_or(1000000);
  const SRSModel model = builtin_half_bernoulli();
  const Interval c_paper{0.0, 1.0};

  ReproduceResult res;
  const double e_exact = exact_e(model, c_paper);
  res.checks.push_back({"e by enumeration of (W, W')", 0.25, e_exact, 0.0, e_exact == 0.25});
  const EReport e_mc = estimate_e(model, SmallSetSpec{c_paper, {}}, n,
                                  substream_seed(seed, kStreamE));
  res.checks.push_back(band_check("e by Monte Carlo", 0.25, e_mc.estimate));
  const MinorizationDemo demo = minorization_demo();
  res.checks.push_back({"identity-order minorization constant on {0, sqrt(2)-1}", 0.0,
                        demo.eps_hat_identity, 0.0, demo.eps_hat_identity == 0.0});
  res.checks.push_back({"identity-order eps on {0, sqrt(2)-1}", 0.0, demo.eps_identity, 0.0,
                        demo.eps_identity == 0.0});
  res.checks.push_back({"order-aware eps on {0, sqrt(2)-1} is at least e", 0.25,
                        demo.eps_real_order, 0.0, demo.eps_real_order >= 0.25});

  // With d = 2 (C = [0, 1]) gamma = 1/2 + 2/2 > 1 and every row is vacuous;
  // d = 8 covers the invariant set [0, 2], where e is still 1/4.
  ModelConfig cfg;
  cfg.model = BuiltinModelSpec{"half_bernoulli", {}, std::nullopt};
  cfg.initial.x0 = 0.0;
  cfg.initial.x0_prime = 1.0;
  cfg.t_max = opts.t_max.value_or(60);
  cfg.epsilon = EpsilonMode::exact;
  if (opts.d_grid) {
    cfg.drift.d_grid = opts.d_grid;
  } else {
    cfg.drift.d = 8.0;
  }
  res.out = analyze(cfg);

  std::ostringstream os;
  os << "Half-plus-Bernoulli, X' = X/2 + W, P{W = 0} = P{W = 1} = 1/2, C = [0, 1]\n";
  os << "  e by enumeration = " << fmt_full(e_exact) << " (paper: 1/4)\n";
  os << "  e by Monte Carlo (n = " << n << ", seed = " << seed
     << ") = " << fmt_full(e_mc.estimate.value) << " +/- " << fmt(e_mc.estimate.std_error) << '\n';
  os << "  from x = 0 and x = sqrt(2) - 1 the next-state laws live on {0, 1} and\n"
     << "  {(sqrt(2)-1)/2, (sqrt(2)+1)/2}: disjoint, so the best minorization constant is "
     << fmt(demo.eps_hat_identity) << ",\n"
     << "  while under the order of the reals eps on this pair is " << fmt(demo.eps_real_order)
     << '\n';
  for (const ReproduceCheck& k : res.checks) os << check_line(k);
  os << summarize(res.out);
  res.narrative = os.str();
  return res;
}

ReproduceResult reproduce_wealth(const ReproduceOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(kDefaultSeed);
  const std::int64_t n = opts.mc_samples.value_or(200000);
  const SRSModel model = builtin_wealth_default();

  ReproduceResult res;
  const std::vector<double> grid = drift_grid(model);
  const GridDriftCheck drift =
      verify_drift_on_grid(model, {0.9, 2.0}, grid, n, substream_seed(seed, kStreamDrift));
  res.checks.push_back({"drift lambda = 0.9, beta = 2 on the grid (worst excess, 3 se)", 0.0,
                        drift.worst_excess, 0.0, drift.passed});
  const Interval c_check{0.0, 1.0};
  const EReport e_mc = estimate_e(model, SmallSetSpec{c_check, {}}, n,
                                  substream_seed(seed, kStreamE));
  res.checks.push_back(band_check("e on C = [0, 1] vs exp(-0.9)/2",
                                  model.closed_form_e(c_check), e_mc.estimate));

  ModelConfig cfg;
  cfg.model = BuiltinModelSpec{"wealth", {}, std::nullopt};
  cfg.initial.x0 = 0.0;
  cfg.initial.x0_prime = 1.0;
  cfg.t_max = opts.t_max.value_or(100);
  cfg.epsilon = EpsilonMode::closed_form;
  cfg.monte_carlo = MonteCarloSpec{n, 0, seed};
  if (opts.d_grid) {
    cfg.drift.d_grid = opts.d_grid;
  } else {
    cfg.drift.d = 50.0;
  }
  res.out = analyze(cfg);

  // Each row against an independent evaluation of the theorem's formula.
  const BoundReport& r = res.out.report;
  double worst = 0.0;
  for (const BoundRow& row : r.rows) {
    const double direct =
        std::pow(1.0 - r.eps.value, static_cast<double>(row.j_star)) +
        std::pow(r.cert.gamma(), static_cast<double>(row.t)) *
            std::pow(r.cert.d, static_cast<double>(row.j_star - 1)) * r.h_val;
    if (!row.underflow) worst = std::max(worst, std::abs(direct - row.bound_value));
  }
  res.checks.push_back({"rows equal (1-e)^j* + gamma^t d^(j*-1) H", 0.0, worst, 0.0, worst == 0.0});

  std::ostringstream os;
  os << "Wealth dynamics, X' = eta X + xi, eta = 0.9, xi ~ exponential(mean 1), V(x) = x + 1\n";
  os << "  drift check on " << grid.size() << " grid points, n = " << n << " each: worst excess "
     << fmt(drift.worst_excess) << " at x = " << fmt(drift.worst_x) << '\n';
  os << "  e on C = [0, 1]: Monte Carlo " << fmt_full(e_mc.estimate.value) << " +/- "
     << fmt(e_mc.estimate.std_error) << ", closed form " << fmt_full(model.closed_form_e(c_check))
     << '\n';
  for (const ReproduceCheck& k : res.checks) os << check_line(k);
  os << summarize(res.out);
  res.narrative = os.str();
  return res;
}

std::vector<SelftestLine> selftest(const std::string& fault) {
  if (!fault.empty() && fault != "alpha" && fault != "kappa" && fault != "beta") {
    throw ConfigError("--inject-fault", "unknown fault '" + fault + "' (alpha, kappa, beta)");
  }
  std::vector<SelftestLine> lines;
  const double alpha_shift = fault == "alpha" ? 1e-3 : 0.0;
  const double kappa_shift = fault == "kappa" ? 1e-6 : 0.0;

  {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(substream_seed(s, 0xD0A1));
      const std::size_t n = 2 + s % 5;
      const FinitePoset p = random_poset(n, 0.5, rng);
      const FiniteDist mu = random_dist(n, rng, s % 2 == 0);
      const FiniteDist nu = random_dist(n, rng, s % 3 == 0);
      worst = std::max(worst, std::abs(alpha(mu, nu, p) + alpha_shift + strassen_gap(mu, nu, p) - 1.0));
    }
    lines.push_back({"coupling duality: alpha + strassen_gap = 1", worst <= 1e-9,
                     "worst |alpha + gap - 1| = " + fmt(worst)});
  }
  {
    bool ok = true;
    std::string detail = "dominated pairs couple on the order graph";
    for (std::uint64_t s = 0; s < 40 && ok; ++s) {
      Rng rng(substream_seed(s, 0x5A55));
      const std::size_t n = 2 + s % 5;
      const FinitePoset p = random_poset(n, 0.5, rng);
      const FiniteDist mu = random_dist(n, rng);
      // Push mu up along x -> some y >= x.
      std::vector<double> w(n, 0.0);
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> up{x};
        for (std::size_t y : p.strictly_above(x)) up.push_back(y);
        w[up[rng.next() % up.size()]] += mu[x];
      }
      const FiniteDist nu(w);
      const double a = alpha(mu, nu, p) + alpha_shift;
      if (!stoch_dominates(mu, nu, p) || std::abs(a - 1.0) > 1e-9) {
        ok = false;
        detail = "seed " + std::to_string(s) + ": alpha = " + fmt_full(a);
      }
    }
    lines.push_back({"Strassen: mu <=_s nu iff alpha(mu, nu) = 1", ok, detail});
  }
  {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(substream_seed(s, 0x1D));
      const std::size_t n = 2 + s % 7;
      const FiniteDist mu = random_dist(n, rng, s % 2 == 0);
      const FiniteDist nu = random_dist(n, rng);
      worst = std::max(worst, std::abs(kappa(mu, nu, FinitePoset::identity(n)) + kappa_shift -
                                       total_variation(mu, nu)));
    }
    lines.push_back({"identity order: kappa = total variation", worst <= 1e-12,
                     "worst difference = " + fmt(worst)});
  }
  {
    const TheoremInstance inst = random_theorem_instance(3);
    double worst = -1.0;
    for (const auto& [mu, mu2] : inst.initial_pairs) {
      const double h = h_functional(mu, mu2, inst.v);
      FiniteDist a = mu;
      FiniteDist b = mu2;
      for (std::int64_t t = 1; t <= 20; ++t) {
        a = iterate_dist(a, inst.q, 1);
        b = iterate_dist(b, inst.q, 1);
        const double k = kappa(a, b, inst.poset) + kappa_shift;
        for (std::int64_t j = 1; j <= t; ++j) {
          worst = std::max(worst, k - theorem_bound(inst.eps, inst.cert.gamma(), inst.cert.d, h,
                                                    j, t));
        }
      }
    }
    lines.push_back({"theorem bound, exact, one seed", worst <= 1e-9,
                     "max kappa - bound = " + fmt(worst)});
  }
  {
    const TheoremInstance inst = random_theorem_instance(5);
    DriftCertificate cert = inst.cert;
    if (fault == "beta") {
      cert.beta = 0.0;
      cert.lambda = 0.0;
    }
    const SupermartingaleReport rep =
        supermartingale_check(maximal_coupling_kernel(inst.q, inst.poset), cert);
    std::string detail = "worst slack on C x C " + fmt(rep.worst_in_c) + ", off " +
                         fmt(rep.worst_off_c);
    if (!rep.holds) {
      detail += "; witness pair " +
                std::to_string(rep.worst_in_c > kSupermartingaleTolerance ? rep.witness_in_c
                                                                          : rep.witness_off_c);
    }
    lines.push_back({"supermartingale conditions", rep.holds, detail});
  }
  {
    const SRSModel hb = builtin_half_bernoulli();
    const EReport a = estimate_e(hb, SmallSetSpec{Interval{0.0, 1.0}, {}}, 20000, 99);
    const EReport b = estimate_e(hb, SmallSetSpec{Interval{0.0, 1.0}, {}}, 20000, 99);
    lines.push_back({"determinism: same seed, same estimate",
                     a.estimate.value == b.estimate.value,
                     "e = " + fmt_full(a.estimate.value)});
  }
  return lines;
}

}  // namespace mcbound
