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
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mcbound/finite_core.hpp"
#include "mcbound/poset.hpp"

namespace mcbound {

// Analysis configuration, read from a single JSON document. Every schema
// violation is reported as a ConfigError whose path names the field, e.g.
// "drift.lambda" or "model.finite.kernel[2]". The schema is documented in
// README.md.

struct FiniteModelSpec {
  FinitePoset poset;
  FiniteKernel kernel;
};

struct BuiltinModelSpec {
  std::string name;                      // tcp | half_bernoulli | wealth
  std::map<std::string, double> params;  // tcp: a
  std::optional<double> c;               // C = [0, c], i.e. d = V(c)
};

/// Evenly spaced values lo..hi, `steps` points (steps = 1 gives lo).
struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t steps = 1;
  std::vector<double> values() const;
};

/// Parses "lo:hi:steps".
Grid parse_grid(const std::string& text, const std::string& path);

struct DriftSpec {
  std::vector<double> v_table;          // finite models; empty means V from the model
  std::optional<double> lambda;         // explicit certificate
  std::optional<double> beta;
  std::vector<double> lambda_grid;      // fit request (finite only)
  std::optional<double> d;
  std::optional<Grid> d_grid;
  bool fit() const { return !lambda_grid.empty(); }
};

struct InitialSpec {
  std::vector<double> mu, mu2;           // finite
  std::optional<double> x0, x0_prime;    // real-line point masses
};

struct MonteCarloSpec {
  std::int64_t n = 100000;     // samples for e estimates
  std::int64_t paths = 0;      // paths per law for the empirical comparison (0: skip)
  std::optional<std::uint64_t> seed;
};

enum class EpsilonMode { automatic, exact, closed_form, monte_carlo };

struct ModelConfig {
  std::variant<BuiltinModelSpec, FiniteModelSpec> model;
  DriftSpec drift;
  InitialSpec initial;
  std::int64_t t_max = 50;
  EpsilonMode epsilon = EpsilonMode::automatic;
  std::optional<MonteCarloSpec> monte_carlo;
  std::string out_dir = "out";

  bool is_finite() const { return std::holds_alternative<FiniteModelSpec>(model); }
};

/// Command-line values that replace config fields.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> t_max;
  std::optional<Grid> d_grid;
  std::optional<std::int64_t> mc_samples;
  std::optional<std::string> out_dir;
};

/// Parses and validates; overrides are applied before validation so that
/// e.g. --seed can satisfy the seed requirement of a monte_carlo block.
ModelConfig parse_config(const std::string& json_text, const ConfigOverrides& overrides = {});

ModelConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace mcbound
