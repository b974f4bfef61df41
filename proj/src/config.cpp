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

#include "mcbound/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

using nlohmann::json;

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ConfigError(path + "." + k, "unknown field");
  }
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::int64_t get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<double> get_reals(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_real(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Grid get_grid(const json& v, const std::string& path) {
  if (v.is_string()) return parse_grid(v.get<std::string>(), path);
  allow_keys(v, path, {"lo", "hi", "steps"});
  if (!v.contains("lo") || !v.contains("hi") || !v.contains("steps")) {
    throw ConfigError(path, "grid needs lo, hi and steps");
  }
  Grid g{get_real(v["lo"], path + ".lo"), get_real(v["hi"], path + ".hi"),
         get_int(v["steps"], path + ".steps")};
  if (g.steps < 1) throw ConfigError(path + ".steps", "must be at least 1");
  if (g.hi < g.lo) throw ConfigError(path, "hi is below lo");
  return g;
}

FinitePoset parse_order(const json& v, const std::vector<std::string>& labels,
                        const std::string& path) {
  const std::size_t n = labels.size();
  if (v.is_string()) {
    const auto kind = v.get<std::string>();
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (kind == "chain") {
          rel[i][j] = i <= j;
        } else if (kind == "identity") {
          rel[i][j] = i == j;
        } else {
          throw ConfigError(path, "expected \"chain\", \"identity\" or a relation matrix");
        }
      }
    }
    return FinitePoset(labels, rel);
  }
  if (!v.is_array() || v.size() != n) {
    throw ConfigError(path, "relation matrix must be " + std::to_string(n) + " x " +
                                std::to_string(n));
  }
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != n) throw ConfigError(row_path, "wrong row length");
    for (std::size_t j = 0; j < n; ++j) {
      const json& e = v[i][j];
      if (e.is_boolean()) {
        rel[i][j] = e.get<bool>();
      } else if (e.is_number_integer() && (e.get<int>() == 0 || e.get<int>() == 1)) {
        rel[i][j] = e.get<int>() == 1;
      } else {
        throw ConfigError(row_path + "[" + std::to_string(j) + "]", "expected 0/1 or a boolean");
      }
    }
  }
  try {
    return FinitePoset(labels, rel);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

FiniteModelSpec parse_finite(const json& v, const std::string& path) {
  allow_keys(v, path, {"states", "order", "kernel"});
  if (!v.contains("kernel")) throw ConfigError(path + ".kernel", "required");
  const json& k = v["kernel"];
  if (!k.is_array() || k.empty()) throw ConfigError(path + ".kernel", "expected a square matrix");
  const std::size_t n = k.size();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_path = path + ".kernel[" + std::to_string(i) + "]";
    rows.push_back(get_reals(k[i], row_path));
    if (rows.back().size() != n) throw ConfigError(row_path, "wrong row length");
    try {
      FiniteDist check(rows.back());
    } catch (const DomainError& e) {
      throw ConfigError(row_path, e.what());
    }
  }
  std::vector<std::string> labels;
  if (v.contains("states")) {
    const json& s = v["states"];
    if (!s.is_array() || s.size() != n) {
      throw ConfigError(path + ".states", "expected " + std::to_string(n) + " labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!s[i].is_string()) {
        throw ConfigError(path + ".states[" + std::to_string(i) + "]", "expected a string");
      }
      labels.push_back(s[i].get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (!v.contains("order")) throw ConfigError(path + ".order", "required");
  FinitePoset poset = [&] {
    try {
      return parse_order(v["order"], labels, path + ".order");
    } catch (const DomainError& e) {
      throw ConfigError(path + ".states", e.what());
    }
  }();
  return FiniteModelSpec{std::move(poset), FiniteKernel(rows)};
}

BuiltinModelSpec parse_builtin(const json& v, const std::string& path) {
  BuiltinModelSpec spec;
  if (!v["builtin"].is_string()) throw ConfigError(path + ".builtin", "expected a name");
  spec.name = v["builtin"].get<std::string>();
  if (spec.name != "tcp" && spec.name != "half_bernoulli" && spec.name != "wealth") {
    throw ConfigError(path + ".builtin",
                      "unknown model '" + spec.name + "' (tcp, half_bernoulli, wealth)");
  }
  if (v.contains("params")) {
    const json& p = v["params"];
    if (spec.name == "tcp") {
      allow_keys(p, path + ".params", {"a"});
    } else {
      allow_keys(p, path + ".params", {});
    }
    for (const auto& [key, val] : p.items()) {
      spec.params[key] = get_real(val, path + ".params." + key);
    }
  }
  if (spec.name == "tcp") {
    if (!spec.params.count("a")) throw ConfigError(path + ".params.a", "required for tcp");
    const double a = spec.params["a"];
    if (!(a > 0.0 && a < 1.0)) throw ConfigError(path + ".params.a", "must lie in (0, 1)");
  }
  if (v.contains("c")) {
    spec.c = get_real(v["c"], path + ".c");
    if (*spec.c < 0.0) throw ConfigError(path + ".c", "must be nonnegative");
  }
  return spec;
}

void parse_model(const json& root, ModelConfig& cfg) {
  if (!root.contains("model")) throw ConfigError("model", "required");
  const json& m = root["model"];
  allow_keys(m, "model", {"builtin", "params", "c", "finite"});
  const bool builtin = m.contains("builtin");
  const bool finite = m.contains("finite");
  if (builtin == finite) {
    throw ConfigError("model", "exactly one of 'builtin' and 'finite' must be given");
  }
  if (finite) {
    if (m.contains("params") || m.contains("c")) {
      throw ConfigError("model", "'params' and 'c' apply to builtin models only");
    }
    cfg.model = parse_finite(m["finite"], "model.finite");
  } else {
    cfg.model = parse_builtin(m, "model");
  }
}

void parse_drift(const json& root, ModelConfig& cfg) {
  if (!root.contains("drift")) return;
  const json& d = root["drift"];
  allow_keys(d, "drift", {"V", "lambda", "beta", "d", "lambda_grid", "d_grid"});
  DriftSpec& s = cfg.drift;
  if (d.contains("V")) s.v_table = get_reals(d["V"], "drift.V");
  if (d.contains("lambda")) s.lambda = get_real(d["lambda"], "drift.lambda");
  if (d.contains("beta")) s.beta = get_real(d["beta"], "drift.beta");
  if (d.contains("d")) s.d = get_real(d["d"], "drift.d");
  if (d.contains("lambda_grid")) {
    if (d["lambda_grid"].is_array()) {
      s.lambda_grid = get_reals(d["lambda_grid"], "drift.lambda_grid");
    } else {
      s.lambda_grid = get_grid(d["lambda_grid"], "drift.lambda_grid").values();
    }
    if (s.lambda_grid.empty()) throw ConfigError("drift.lambda_grid", "must not be empty");
  }
  if (d.contains("d_grid")) s.d_grid = get_grid(d["d_grid"], "drift.d_grid");
}

void parse_initial(const json& root, ModelConfig& cfg) {
  if (!root.contains("initial")) throw ConfigError("initial", "required");
  const json& i = root["initial"];
  allow_keys(i, "initial", {"mu", "mu2", "x0", "x0_prime"});
  if (i.contains("mu")) cfg.initial.mu = get_reals(i["mu"], "initial.mu");
  if (i.contains("mu2")) cfg.initial.mu2 = get_reals(i["mu2"], "initial.mu2");
  if (i.contains("x0")) cfg.initial.x0 = get_real(i["x0"], "initial.x0");
  if (i.contains("x0_prime")) cfg.initial.x0_prime = get_real(i["x0_prime"], "initial.x0_prime");
}

void parse_rest(const json& root, ModelConfig& cfg) {
  if (root.contains("horizon")) {
    const json& h = root["horizon"];
    allow_keys(h, "horizon", {"t_max"});
    if (h.contains("t_max")) cfg.t_max = get_int(h["t_max"], "horizon.t_max");
  }
  if (root.contains("epsilon")) {
    const json& e = root["epsilon"];
    if (!e.is_string()) throw ConfigError("epsilon", "expected a string");
    const auto s = e.get<std::string>();
    if (s == "exact") {
      cfg.epsilon = EpsilonMode::exact;
    } else if (s == "closed_form") {
      cfg.epsilon = EpsilonMode::closed_form;
    } else if (s == "monte_carlo") {
      cfg.epsilon = EpsilonMode::monte_carlo;
    } else {
      throw ConfigError("epsilon", "expected exact, closed_form or monte_carlo");
    }
  }
  if (root.contains("monte_carlo")) {
    const json& m = root["monte_carlo"];
    allow_keys(m, "monte_carlo", {"n", "paths", "seed"});
    MonteCarloSpec mc;
    if (m.contains("n")) mc.n = get_int(m["n"], "monte_carlo.n");
    if (m.contains("paths")) mc.paths = get_int(m["paths"], "monte_carlo.paths");
    if (m.contains("seed")) {
      if (!m["seed"].is_number_unsigned()) {
        throw ConfigError("monte_carlo.seed", "expected a nonnegative integer");
      }
      mc.seed = m["seed"].get<std::uint64_t>();
    }
    cfg.monte_carlo = mc;
  }
  if (root.contains("output")) {
    const json& o = root["output"];
    allow_keys(o, "output", {"dir"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw ConfigError("output.dir", "expected a path");
      cfg.out_dir = o["dir"].get<std::string>();
    }
  }
}

void apply(const ConfigOverrides& o, ModelConfig& cfg) {
  if (o.t_max) cfg.t_max = *o.t_max;
  if (o.d_grid) {
    cfg.drift.d_grid = o.d_grid;
    cfg.drift.d.reset();
    if (auto* b = std::get_if<BuiltinModelSpec>(&cfg.model)) b->c.reset();
  }
  if (o.mc_samples) {
    if (!cfg.monte_carlo) cfg.monte_carlo = MonteCarloSpec{};
    cfg.monte_carlo->n = *o.mc_samples;
  }
  if (o.seed && cfg.monte_carlo) cfg.monte_carlo->seed = *o.seed;
  if (o.out_dir) cfg.out_dir = *o.out_dir;
}

void check_distribution(const std::vector<double>& p, std::size_t n, const std::string& path) {
  if (p.size() != n) throw ConfigError(path, "expected " + std::to_string(n) + " weights");
  try {
    FiniteDist check(p);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

void validate(ModelConfig& cfg) {
  if (cfg.t_max < 1) throw ConfigError("horizon.t_max", "must be at least 1");
  DriftSpec& d = cfg.drift;
  if (d.d && d.d_grid) throw ConfigError("drift", "give either d or d_grid, not both");
  if (d.d && !(*d.d >= 1.0)) throw ConfigError("drift.d", "must be at least 1");
  if (d.d_grid && !(d.d_grid->lo >= 1.0)) throw ConfigError("drift.d_grid", "d must be at least 1");
  if (d.lambda.has_value() != d.beta.has_value()) {
    throw ConfigError(d.lambda ? "drift.beta" : "drift.lambda",
                      "lambda and beta must be given together");
  }
  if (d.lambda && d.fit()) {
    throw ConfigError("drift.lambda_grid", "give either lambda/beta or lambda_grid, not both");
  }
  if (d.lambda && (*d.lambda < 0.0 || *d.beta < 0.0)) {
    throw ConfigError("drift", "lambda and beta must be nonnegative");
  }

  if (const auto* f = std::get_if<FiniteModelSpec>(&cfg.model)) {
    const std::size_t n = f->kernel.size();
    if (d.v_table.empty()) throw ConfigError("drift.V", "required for finite models");
    if (d.v_table.size() != n) {
      throw ConfigError("drift.V", "expected " + std::to_string(n) + " values");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(d.v_table[i] >= 1.0)) {
        throw ConfigError("drift.V[" + std::to_string(i) + "]", "V must be at least 1");
      }
    }
    if (!d.lambda && !d.fit()) throw ConfigError("drift", "need lambda/beta or lambda_grid");
    if (!d.d && !d.d_grid) throw ConfigError("drift.d", "required (or drift.d_grid)");
    check_distribution(cfg.initial.mu, n, "initial.mu");
    check_distribution(cfg.initial.mu2, n, "initial.mu2");
    if (cfg.initial.x0 || cfg.initial.x0_prime) {
      throw ConfigError("initial", "finite models take mu and mu2");
    }
    if (cfg.epsilon == EpsilonMode::closed_form || cfg.epsilon == EpsilonMode::monte_carlo) {
      throw ConfigError("epsilon", "finite models use the exact epsilon");
    }
    if (cfg.monte_carlo && cfg.monte_carlo->paths > 0) {
      throw ConfigError("monte_carlo.paths", "finite models are compared exactly");
    }
  } else {
    const auto& b = std::get<BuiltinModelSpec>(cfg.model);
    if (!d.v_table.empty()) throw ConfigError("drift.V", "builtin models use V(x) = x + 1");
    if (d.fit()) throw ConfigError("drift.lambda_grid", "builtin models carry their own drift");
    if (b.c && (d.d || d.d_grid)) throw ConfigError("model.c", "give either c or drift.d");
    if (!b.c && !d.d && !d.d_grid) throw ConfigError("model.c", "required (or drift.d)");
    if (!cfg.initial.x0) throw ConfigError("initial.x0", "required for builtin models");
    if (!cfg.initial.x0_prime) throw ConfigError("initial.x0_prime", "required for builtin models");
    if (!cfg.initial.mu.empty() || !cfg.initial.mu2.empty()) {
      throw ConfigError("initial", "builtin models take x0 and x0_prime");
    }
    const double hi = b.name == "half_bernoulli" ? 2.0 : std::numeric_limits<double>::infinity();
    for (auto [x, name] : {std::pair{*cfg.initial.x0, "initial.x0"},
                           std::pair{*cfg.initial.x0_prime, "initial.x0_prime"}}) {
      if (!(x >= 0.0 && x <= hi)) throw ConfigError(name, "outside the model's state space");
    }
    if (cfg.epsilon == EpsilonMode::exact && b.name != "half_bernoulli") {
      throw ConfigError("epsilon", "exact e needs a finitely supported shock (half_bernoulli)");
    }
    if (cfg.epsilon == EpsilonMode::monte_carlo && !cfg.monte_carlo) {
      throw ConfigError("monte_carlo", "required when epsilon is monte_carlo");
    }
  }
  if (cfg.monte_carlo) {
    if (!cfg.monte_carlo->seed) {
      throw ConfigError("monte_carlo.seed", "required whenever Monte Carlo is requested");
    }
    if (cfg.monte_carlo->n < 1) throw ConfigError("monte_carlo.n", "must be positive");
    if (cfg.monte_carlo->paths < 0) throw ConfigError("monte_carlo.paths", "must be nonnegative");
  }
  if (cfg.out_dir.empty()) throw ConfigError("output.dir", "must not be empty");
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> out;
  if (steps <= 1) return {lo};
  for (std::int64_t k = 0; k < steps; ++k) {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1));
  }
  return out;
}

Grid parse_grid(const std::string& text, const std::string& path) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw ConfigError(path, "expected lo:hi:steps, got '" + text + "'");
  Grid g;
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    g.steps = std::stoll(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError(path, "expected lo:hi:steps, got '" + text + "'");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo || g.steps < 1) {
    throw ConfigError(path, "need finite lo <= hi and steps >= 1");
  }
  return g;
}

ModelConfig parse_config(const std::string& json_text, const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  allow_keys(root, "<document>",
             {"model", "drift", "initial", "horizon", "epsilon", "monte_carlo", "output"});
  ModelConfig cfg;
  parse_model(root, cfg);
  parse_drift(root, cfg);
  parse_initial(root, cfg);
  parse_rest(root, cfg);
  apply(overrides, cfg);
  validate(cfg);
  return cfg;
}

ModelConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("--config", "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace mcbound
