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

#include "mcbound/bounds.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

void check_jt(std::int64_t j, std::int64_t t) {
  if (j < 1 || j > t) {
    throw DomainError("need 1 <= j <= t (got j = " + std::to_string(j) +
                      ", t = " + std::to_string(t) + ")");
  }
}

// Direct powers when they are representable, log space otherwise.
double tail_term(double gamma, double d, double h_val, std::int64_t j, std::int64_t t) {
  const double gt = std::pow(gamma, static_cast<double>(t));
  const double dj = std::pow(d, static_cast<double>(j - 1));
  const double direct = gt * dj * h_val;
  if (std::isfinite(direct) && (gt >= DBL_MIN || gamma == 0.0) && std::isfinite(dj)) {
    return direct;
  }
  if (gamma == 0.0) return 0.0;
  return std::exp(static_cast<double>(t) * std::log(gamma) +
                  static_cast<double>(j - 1) * std::log(d) + std::log(h_val));
}

double coupling_term(double eps, std::int64_t j) {
  return std::pow(1.0 - eps, static_cast<double>(j));
}

}  // namespace

double epsilon_exact(const FiniteKernel& q, const FinitePoset& poset, const StateSet& c) {
  if (q.size() != poset.size() || c.size() != q.size()) {
    throw DomainError("kernel, poset and small set dimensions differ");
  }
  double eps = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < q.size(); ++x) {
    if (!c[x]) continue;
    for (std::size_t y = 0; y < q.size(); ++y) {
      if (!c[y]) continue;
      eps = std::min(eps, alpha(q.row(x), q.row(y), poset));
    }
  }
  if (!std::isfinite(eps)) throw DomainError("epsilon over an empty small set");
  return eps;
}

double optimal_minorization(const FiniteKernel& q, const StateSet& c) {
  if (c.size() != q.size()) throw DomainError("small set dimension differs from kernel");
  if (std::none_of(c.begin(), c.end(), [](bool b) { return b; })) {
    throw DomainError("minorization over an empty small set");
  }
  double total = 0.0;
  for (std::size_t y = 0; y < q.size(); ++y) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < q.size(); ++x)
      if (c[x]) m = std::min(m, q(x, y));
    total += m;
  }
  return total;
}

double lemma_ggc_bound(double gamma, double d, double h_val, std::int64_t j, std::int64_t t) {
  check_jt(j, t);
  if (!(d >= 1.0)) throw DomainError("d must be at least 1");
  if (!(gamma >= 0.0) || !(h_val >= 0.0)) throw DomainError("gamma and H must be nonnegative");
  return tail_term(gamma, d, h_val, j, t);
}

double theorem_bound(double eps, double gamma, double d, double h_val, std::int64_t j,
                     std::int64_t t) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  return coupling_term(eps, j) + lemma_ggc_bound(gamma, d, h_val, j, t);
}

OptimizedBound optimize_bound(double eps, double gamma, double d, double h_val,
                              std::int64_t t) {
  if (t < 1) throw DomainError("horizon t must be at least 1");
  OptimizedBound best;
  best.value = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 1; j <= t; ++j) {
    const double c = coupling_term(eps, j);
    const double tail = lemma_ggc_bound(gamma, d, h_val, j, t);
    const double v = c + tail;
    if (v < best.value) best = {j, v, c, tail};
  }
  return best;
}

std::string EpsilonSource::provenance() const {
  switch (kind) {
    case Kind::exact: return "exact";
    case Kind::closed_form: return "closed-form lower bound e";
    case Kind::monte_carlo: return "monte-carlo lower bound e";
  }
  return "unknown";
}

bool BoundReport::vacuous_only() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.vacuous; });
}

std::vector<double> BoundReport::envelope() const {
  std::vector<double> out;
  double running = std::numeric_limits<double>::infinity();
  for (const BoundRow& r : rows) {
    running = std::min(running, r.bound_value);
    out.push_back(running);
  }
  return out;
}

BoundReport bound_table(const DriftCertificate& cert, const EpsilonSource& eps, double h_val,
                        std::int64_t t_max, std::string model_id) {
  if (t_max < 1) throw DomainError("t_max must be at least 1");
  BoundReport report;
  report.model_id = std::move(model_id);
  report.cert = cert;
  report.eps = eps;
  report.h_val = h_val;
  const double gamma = cert.gamma();
  report.rows.reserve(static_cast<std::size_t>(t_max));
  for (std::int64_t t = 1; t <= t_max; ++t) {
    const OptimizedBound b = optimize_bound(eps.value, gamma, cert.d, h_val, t);
    BoundRow row{t, b.j_star, b.value, b.tail_term, b.coupling_term, b.value >= 1.0, false};
    if (b.value < kUnderflowFloor) {
      row.underflow = true;
      row.bound_value = 0.0;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace mcbound
