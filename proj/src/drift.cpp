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

#include "mcbound/drift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

void check_constants(double lambda, double beta, double d) {
  if (!(lambda >= 0.0) || !(beta >= 0.0)) {
    throw DomainError("drift constants lambda and beta must be nonnegative");
  }
  if (!(d >= 1.0)) throw DomainError("d must be at least 1");
}

void check_v(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 1.0)) {
      throw DomainError("invalid certificate: V(" + std::to_string(i) + ") = " +
                        std::to_string(v[i]) + " < 1");
    }
  }
}

}  // namespace

std::string SmallSet::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind == Kind::interval) {
    if (empty) return "empty";
    os << "[" << interval.lo << ", " << interval.hi << "]";
    return os.str();
  }
  os << "{";
  bool first = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!members[i]) continue;
    os << (first ? "" : ",") << i;
    first = false;
  }
  os << "}";
  return os.str();
}

DriftCertificate make_certificate(std::vector<double> v_table, double lambda, double beta,
                                  double d) {
  check_constants(lambda, beta, d);
  check_v(v_table);
  DriftCertificate cert;
  cert.v_name = "table";
  cert.small_set = small_set(v_table, d);
  cert.v_table = std::move(v_table);
  cert.lambda = lambda;
  cert.beta = beta;
  cert.d = d;
  return cert;
}

DriftCertificate make_certificate(std::string v_name, const std::function<double(double)>& v,
                                  Interval domain, double lambda, double beta, double d) {
  check_constants(lambda, beta, d);
  DriftCertificate cert;
  cert.v_name = std::move(v_name);
  cert.lambda = lambda;
  cert.beta = beta;
  cert.d = d;
  cert.small_set = small_set(v, d, domain);
  return cert;
}

DriftVerification verify_drift(const FiniteKernel& q, DriftCertificate& cert) {
  if (cert.v_table.size() != q.size()) {
    throw DomainError("certificate V table does not match kernel size");
  }
  check_v(cert.v_table);
  const std::vector<double> qv = q.apply(cert.v_table);
  DriftVerification report;
  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < q.size(); ++x) {
    const double excess = qv[x] - cert.lambda * cert.v_table[x] - cert.beta;
    if (excess > report.worst_excess) {
      report.worst_excess = excess;
      report.worst_state = x;
    }
  }
  report.verified = report.worst_excess <= kDriftTolerance;
  cert.verified = report.verified;
  return report;
}

DriftCertificate fit_drift(const FiniteKernel& q, std::span<const double> v,
                           std::span<const double> lambda_grid, double d) {
  if (lambda_grid.empty()) throw DomainError("empty lambda grid");
  if (v.size() != q.size()) throw DomainError("V table does not match kernel size");
  check_v(v);
  const std::vector<double> qv = q.apply(v);
  double best_gamma = std::numeric_limits<double>::infinity();
  DriftConstants best{};
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0)) throw DomainError("lambda grid values must be nonnegative");
    double beta = 0.0;
    for (std::size_t x = 0; x < q.size(); ++x) beta = std::max(beta, qv[x] - lambda * v[x]);
    const double gamma = lambda + 2.0 * beta / d;
    if (gamma < best_gamma) {
      best_gamma = gamma;
      best = {lambda, beta};
    }
  }
  DriftCertificate cert =
      make_certificate(std::vector<double>(v.begin(), v.end()), best.lambda, best.beta, d);
  verify_drift(q, cert);
  return cert;
}

double h_functional(const FiniteDist& mu, const FiniteDist& mu2, std::span<const double> v) {
  return 0.5 * (mu.expect(v) + mu2.expect(v));
}

EstimateWithError h_functional(std::span<const double> samples, std::span<const double> samples2,
                               const std::function<double(double)>& v, std::uint64_t seed) {
  if (samples.empty() || samples2.empty()) throw DomainError("empty sample for H");
  const EstimateWithError a = mean_estimate(
      [&] {
        std::vector<double> out;
        out.reserve(samples.size());
        for (double x : samples) out.push_back(v(x));
        return out;
      }(),
      seed);
  const EstimateWithError b = mean_estimate(
      [&] {
        std::vector<double> out;
        out.reserve(samples2.size());
        for (double x : samples2) out.push_back(v(x));
        return out;
      }(),
      seed);
  return {0.5 * (a.value + b.value),
          0.5 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error),
          a.n_samples + b.n_samples, seed};
}

SmallSet small_set(std::span<const double> v, double d) {
  if (!(d >= 1.0)) throw DomainError("d must be at least 1");
  SmallSet c;
  c.kind = SmallSet::Kind::finite;
  c.members.assign(v.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    c.members[i] = v[i] <= d;
    any = any || c.members[i];
  }
  if (!any) {
    c.empty = true;
    c.warning = "small set {V <= d} is empty; epsilon is an infimum over an empty set";
  }
  return c;
}

SmallSet small_set(const std::function<double(double)>& v, double d, Interval domain) {
  if (!(d >= 1.0)) throw DomainError("d must be at least 1");
  SmallSet c;
  c.kind = SmallSet::Kind::interval;
  if (v(domain.lo) > d) {
    c.empty = true;
    c.warning = "small set {V <= d} is empty; epsilon is an infimum over an empty set";
    return c;
  }
  c.interval.lo = domain.lo;
  if (std::isfinite(domain.hi) && v(domain.hi) <= d) {
    c.interval.hi = domain.hi;
    return c;
  }
  // Bracket the crossing V(x) = d, then bisect.
  double lo = domain.lo;
  double hi = std::isfinite(domain.hi) ? domain.hi : std::max(1.0, domain.lo + 1.0);
  while (!std::isfinite(domain.hi) && v(hi) <= d) {
    lo = hi;
    hi = domain.lo + 2.0 * (hi - domain.lo);
    if (!std::isfinite(hi)) throw DomainError("V does not reach d on the domain");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (v(mid) <= d ? lo : hi) = mid;
  }
  c.interval.hi = lo;
  return c;
}

}  // namespace mcbound
