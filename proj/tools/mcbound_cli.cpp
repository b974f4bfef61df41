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

// mcbound: order-aware coupling bounds for monotone Markov chains.
//
//   mcbound analyze --config model.json [--out DIR] [--seed N] [--t-max N]
//                   [--d-grid lo:hi:steps] [--mc-samples N]
//   mcbound reproduce {tcp|rational|wealth} [--c X] [same overrides]
//   mcbound selftest [--inject-fault NAME]
//
// Exit codes: 0 ok, 1 validation error, 2 every bound row vacuous.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcbound/config.hpp"
#include "mcbound/errors.hpp"
#include "mcbound/pipeline.hpp"
#include "mcbound/report.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> t_max;
  std::optional<std::string> d_grid;
  std::optional<std::int64_t> mc_samples;
  std::optional<std::string> out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--seed", o.seed, "Seed for every Monte Carlo estimator");
  cmd->add_option("--t-max", o.t_max, "Largest horizon t in the bound table")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--d-grid", o.d_grid, "Scan d over lo:hi:steps and keep the best table");
  cmd->add_option("--mc-samples", o.mc_samples, "Monte Carlo sample size")
      ->check(CLI::PositiveNumber);
}

int run_analyze(const std::string& config_path, const Overrides& o) {
  mcbound::ConfigOverrides co;
  co.seed = o.seed;
  co.t_max = o.t_max;
  co.mc_samples = o.mc_samples;
  co.out_dir = o.out;
  if (o.d_grid) co.d_grid = mcbound::parse_grid(*o.d_grid, "--d-grid");
  const mcbound::ModelConfig cfg = mcbound::load_config(config_path, co);
  const mcbound::AnalysisOutput out = mcbound::analyze(cfg);
  mcbound::write_outputs(cfg.out_dir, out);

  const auto& r = out.report;
  std::cout << "model " << r.model_id << ": gamma = " << r.cert.gamma()
            << ", eps = " << r.eps.value << " [" << r.eps.provenance() << "], H = " << r.h_val
            << '\n';
  mcbound::write_human_table(std::cout, r);
  if (!out.comparison.empty()) {
    std::size_t passed = 0;
    for (const auto& row : out.comparison) passed += row.pass ? 1 : 0;
    std::cout << "comparison: " << passed << "/" << out.comparison.size()
              << " rows within bound\n";
  }
  for (const auto& n : out.notes) std::cout << "note: " << n << '\n';
  std::cout << "wrote " << cfg.out_dir << "/{report.json,bounds.csv,comparison.csv}\n";
  const int code = mcbound::exit_code_for(out);
  if (code == 2) std::cout << "every bound row is vacuous\n";
  return code;
}

int run_reproduce(const std::string& example, std::optional<double> c, const Overrides& o) {
  mcbound::ReproduceOptions opts;
  opts.c = c;
  opts.seed = o.seed;
  opts.t_max = o.t_max;
  opts.mc_samples = o.mc_samples;
  if (o.d_grid) opts.d_grid = mcbound::parse_grid(*o.d_grid, "--d-grid");
  if (c && example != "tcp") throw mcbound::ConfigError("--c", "only applies to tcp");

  mcbound::ReproduceResult res;
  if (example == "tcp") {
    res = mcbound::reproduce_tcp(opts);
  } else if (example == "rational") {
    res = mcbound::reproduce_rational(opts);
  } else {
    res = mcbound::reproduce_wealth(opts);
  }
  const std::string dir = o.out.value_or("out/" + example);
  mcbound::write_outputs(dir, res.out);
  std::cout << res.narrative << "wrote " << dir << "/{report.json,bounds.csv,comparison.csv}\n";
  return mcbound::exit_code_for(res.out);
}

int run_selftest(const std::string& fault) {
  const auto lines = mcbound::selftest(fault);
  bool ok = true;
  for (const auto& l : lines) {
    std::cout << (l.pass ? "PASS  " : "FAIL  ") << l.invariant << "  (" << l.detail << ")\n";
    ok = ok && l.pass;
  }
  std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-aware coupling bounds for monotone Markov chains"};
  app.require_subcommand(1);

  Overrides analyze_o;
  std::string config_path;
  auto* analyze = app.add_subcommand("analyze", "Bound table for a model configuration");
  analyze->add_option("--config", config_path, "JSON model configuration")->required();
  add_overrides(analyze, analyze_o);

  Overrides repro_o;
  std::string example;
  std::optional<double> c;
  auto* reproduce = app.add_subcommand("reproduce", "Run a pinned worked example");
  reproduce->add_option("example", example, "tcp, rational or wealth")
      ->required()
      ->check(CLI::IsMember({"tcp", "rational", "wealth"}));
  reproduce->add_option("--c", c, "tcp: small set C = [0, c]");
  add_overrides(reproduce, repro_o);

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Fast invariant checks");
  selftest->add_option("--inject-fault", fault, "Corrupt one constant: alpha, kappa or beta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return run_analyze(config_path, analyze_o);
    if (*reproduce) return run_reproduce(example, c, repro_o);
    return run_selftest(fault);
  } catch (const mcbound::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const mcbound::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const mcbound::ModelError& e) {
    std::cerr << "error: model: " << e.what() << '\n';
  } catch (const mcbound::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
