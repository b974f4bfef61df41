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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mcbound/estimate.hpp"
#include "mcbound/finite_core.hpp"

namespace mcbound {

/// QV <= lambda V + beta.
struct DriftConstants {
  double lambda = 0.0;
  double beta = 0.0;
};

/// Sublevel set {V <= d}: an index subset on finite chains, an interval on
/// the real line.
struct SmallSet {
  enum class Kind { finite, interval };
  Kind kind = Kind::finite;
  StateSet members;   // finite
  Interval interval;  // interval
  bool empty = false;
  std::string warning;

  std::string describe() const;
};

struct DriftCertificate {
  std::string v_name;            // e.g. "table" or "x+1"
  std::vector<double> v_table;   // finite chains only
  double lambda = 0.0;
  double beta = 0.0;
  double d = 1.0;
  SmallSet small_set;
  bool verified = false;

  double gamma() const { return lambda + 2.0 * beta / d; }
  DriftConstants constants() const { return {lambda, beta}; }
};

/// Builds an unverified certificate for a tabulated V, computing C = {V <= d}.
/// Throws DomainError on V < 1, d < 1 or negative lambda/beta.
DriftCertificate make_certificate(std::vector<double> v_table, double lambda, double beta,
                                  double d);

/// Builds an unverified certificate for an increasing V on an interval.
DriftCertificate make_certificate(std::string v_name, const std::function<double(double)>& v,
                                  Interval domain, double lambda, double beta, double d);

struct DriftVerification {
  bool verified = false;
  double worst_excess = 0.0;  // max_x QV(x) - lambda V(x) - beta
  std::size_t worst_state = 0;
};

inline constexpr double kDriftTolerance = 1e-12;

/// Checks the drift inequality exactly (QV by matrix-vector product) and
/// records the outcome in `cert.verified`.
DriftVerification verify_drift(const FiniteKernel& q, DriftCertificate& cert);

/// For each lambda on the grid, beta(lambda) = max(0, max_x QV - lambda V);
/// returns the verified certificate with the smallest gamma at this d
/// (ties go to the smaller lambda).
DriftCertificate fit_drift(const FiniteKernel& q, std::span<const double> v,
                           std::span<const double> lambda_grid, double d);

/// (1/2)(mu(V) + mu2(V)).
double h_functional(const FiniteDist& mu, const FiniteDist& mu2, std::span<const double> v);

/// Sample version of h_functional from draws of each law.
EstimateWithError h_functional(std::span<const double> samples, std::span<const double> samples2,
                               const std::function<double(double)>& v, std::uint64_t seed = 0);

/// {i : V(i) <= d}; flags an empty result with a warning rather than throwing.
SmallSet small_set(std::span<const double> v, double d);

/// {x in domain : V(x) <= d} for increasing V, solved by bisection.
SmallSet small_set(const std::function<double(double)>& v, double d, Interval domain);

}  // namespace mcbound
