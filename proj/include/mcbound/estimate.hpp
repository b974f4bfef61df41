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

#include <cmath>
#include <cstdint>
#include <span>

namespace mcbound {

/// Monte Carlo estimate with its standard error (sample sd / sqrt(n)).
struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  /// |value - target| <= k standard errors.
  bool within(double target, double k = 3.0) const {
    return std::abs(value - target) <= k * std_error;
  }
};

/// Bernoulli frequency with its binomial standard error.
inline EstimateWithError frequency_estimate(std::int64_t hits, std::int64_t n,
                                            std::uint64_t seed) {
  const double p = n > 0 ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
  const double se = n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
  return {p, se, n, seed};
}

inline EstimateWithError mean_estimate(std::span<const double> xs, std::uint64_t seed) {
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), static_cast<std::int64_t>(xs.size()), seed};
}

/// Closed interval of the real line; `hi` may be +infinity.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

}  // namespace mcbound
