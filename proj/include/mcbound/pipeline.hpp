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
#include <optional>
#include <string>
#include <vector>

#include "mcbound/config.hpp"
#include "mcbound/report.hpp"

namespace mcbound {

// End-to-end runs behind the command-line tool: drift -> eps or e -> bound
// table, plus the reproduction runs for the three worked examples.

/// Throws ConfigError for inputs that fail validation against the model
/// (non-increasing kernel, drift certificate that does not hold, ...).
AnalysisOutput analyze(const ModelConfig& cfg);

/// 0 ok, 2 when every bound row is vacuous.
int exit_code_for(const AnalysisOutput& out);

struct ReproduceOptions {
  std::optional<double> c;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> t_max;
  std::optional<std::int64_t> mc_samples;
  std::optional<Grid> d_grid;
};

/// One named check printed by a reproduction run.
struct ReproduceCheck {
  std::string name;
  double expected = 0.0;
  double observed = 0.0;
  double band = 0.0;
  bool pass = false;
};

struct ReproduceResult {
  AnalysisOutput out;
  std::vector<ReproduceCheck> checks;
  std::string narrative;
};

ReproduceResult reproduce_tcp(const ReproduceOptions& opts);
ReproduceResult reproduce_rational(const ReproduceOptions& opts);
ReproduceResult reproduce_wealth(const ReproduceOptions& opts);

/// Identity-order minorization versus the order-aware constant for the
/// half-plus-Bernoulli chain started from 0 and from sqrt(2) - 1: the two
/// next-state laws have disjoint supports.
struct MinorizationDemo {
  std::vector<double> support;    // union of the two supports, ascending
  double eps_hat_identity = 0.0;  // best minorization constant
  double eps_identity = 0.0;      // epsilon_exact under the identity order
  double eps_real_order = 0.0;    // epsilon_exact under the order of the reals
};
MinorizationDemo minorization_demo();

struct SelftestLine {
  std::string invariant;
  bool pass = false;
  std::string detail;
};

/// Fast invariant subset. `fault` names a constant to corrupt on purpose:
/// "alpha", "kappa" or "beta"; empty for a clean run.
std::vector<SelftestLine> selftest(const std::string& fault = {});

}  // namespace mcbound
