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

#include "mcbound/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    // stod rejects "inf"/"nan" spellings it did not produce itself on some libcs
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw ConfigError(where, "not a number: '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where, "not an integer: '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw ConfigError(where, "not a flag: '" + s + "'");
}

// Reads header + rows; each row is split and length-checked.
template <class Row, class Fn>
std::vector<Row> parse_rows(std::istream& is, const char* header, std::size_t width, Fn&& fn) {
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw ConfigError("line 1", std::string("expected header '") + header + "'");
  }
  std::vector<Row> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = "line " + std::to_string(lineno);
    if (fields.size() != width) {
      throw ConfigError(where, "expected " + std::to_string(width) + " fields");
    }
    rows.push_back(fn(fields, where));
  }
  return rows;
}

ordered_json real_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
  os << kBoundsCsvHeader << '\n';
  for (const BoundRow& r : rows) {
    os << r.t << ',' << r.j_star << ',' << format_double(r.bound_value) << ','
       << format_double(r.tail_term) << ',' << format_double(r.coupling_term) << ','
       << (r.vacuous ? 1 : 0) << ',' << (r.underflow ? 1 : 0) << '\n';
  }
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  os << kComparisonCsvHeader << '\n';
  for (const ComparisonRow& r : rows) {
    os << r.t << ',' << format_double(r.kappa) << ',' << format_double(r.bound) << ','
       << r.j_star << ',' << format_double(r.tail_term) << ',' << format_double(r.coupling_term)
       << ',' << (r.pass ? 1 : 0) << ',' << format_double(r.band) << '\n';
  }
}

void write_path_stats_csv(std::ostream& os, const CoupledPathStats& stats) {
  os << kPathStatsCsvHeader << '\n';
  for (std::size_t i = 0; i < stats.tau.size(); ++i) {
    os << i << ',';
    if (stats.tau[i] == CoupledPathStats::kCensored) {
      os << "inf";
    } else {
      os << stats.tau[i];
    }
    os << ',' << stats.visits[i] << '\n';
  }
}

void write_coupled_kernel_csv(std::ostream& os, const CoupledKernel& qhat) {
  os << kCoupledKernelCsvHeader << '\n';
  for (std::size_t p = 0; p < qhat.pairs(); ++p) {
    const auto row = qhat.row(p);
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (row[q] != 0.0) os << p << ',' << q << ',' << format_double(row[q]) << '\n';
    }
  }
}

std::vector<BoundRow> parse_bounds_csv(std::istream& is) {
  return parse_rows<BoundRow>(is, kBoundsCsvHeader, 7, [](const auto& f, const std::string& w) {
    BoundRow r;
    r.t = parse_int(f[0], w);
    r.j_star = parse_int(f[1], w);
    r.bound_value = parse_real(f[2], w);
    r.tail_term = parse_real(f[3], w);
    r.coupling_term = parse_real(f[4], w);
    r.vacuous = parse_bool(f[5], w);
    r.underflow = parse_bool(f[6], w);
    return r;
  });
}

std::vector<ComparisonRow> parse_comparison_csv(std::istream& is) {
  return parse_rows<ComparisonRow>(
      is, kComparisonCsvHeader, 8, [](const auto& f, const std::string& w) {
        ComparisonRow r;
        r.t = parse_int(f[0], w);
        r.kappa = parse_real(f[1], w);
        r.bound = parse_real(f[2], w);
        r.j_star = parse_int(f[3], w);
        r.tail_term = parse_real(f[4], w);
        r.coupling_term = parse_real(f[5], w);
        r.pass = parse_bool(f[6], w);
        r.band = parse_real(f[7], w);
        return r;
      });
}

std::string report_json(const AnalysisOutput& out) {
  const BoundReport& rep = out.report;
  ordered_json j;
  j["model"] = rep.model_id;

  ordered_json cert;
  cert["v"] = rep.cert.v_name;
  if (!rep.cert.v_table.empty()) cert["v_table"] = rep.cert.v_table;
  cert["lambda"] = rep.cert.lambda;
  cert["beta"] = rep.cert.beta;
  cert["d"] = rep.cert.d;
  cert["gamma"] = rep.cert.gamma();
  cert["small_set"] = rep.cert.small_set.describe();
  if (rep.cert.small_set.kind == SmallSet::Kind::interval && !rep.cert.small_set.empty) {
    cert["small_set_lo"] = real_or_null(rep.cert.small_set.interval.lo);
    cert["small_set_hi"] = real_or_null(rep.cert.small_set.interval.hi);
  }
  if (!rep.cert.small_set.warning.empty()) cert["small_set_warning"] = rep.cert.small_set.warning;
  cert["verified"] = rep.cert.verified;
  j["certificate"] = cert;

  ordered_json eps;
  eps["value"] = rep.eps.value;
  eps["provenance"] = rep.eps.provenance();
  if (rep.eps.kind == EpsilonSource::Kind::monte_carlo) {
    eps["std_error"] = rep.eps.std_error;
    eps["n_samples"] = rep.eps.n_samples;
    eps["seed"] = rep.eps.seed;
  }
  j["epsilon"] = eps;
  j["H"] = rep.h_val;
  j["seeds"] = rep.seeds;
  j["t_max"] = rep.rows.empty() ? 0 : rep.rows.back().t;
  j["vacuous_only"] = rep.vacuous_only();

  ordered_json rows = ordered_json::array();
  const auto env = rep.envelope();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const BoundRow& r = rep.rows[i];
    ordered_json row;
    row["t"] = r.t;
    row["j_star"] = r.j_star;
    row["bound"] = r.bound_value;
    row["tail_term"] = r.tail_term;
    row["coupling_term"] = r.coupling_term;
    row["envelope"] = env[i];
    row["vacuous"] = r.vacuous;
    row["underflow"] = r.underflow;
    rows.push_back(row);
  }
  j["rows"] = rows;

  if (!out.d_scan.empty()) {
    ordered_json scan = ordered_json::array();
    for (const DScanEntry& e : out.d_scan) {
      scan.push_back({{"d", e.d},
                      {"gamma", e.gamma},
                      {"epsilon", e.eps},
                      {"H", e.h_val},
                      {"bound_at_t_max", e.bound_at_t_max},
                      {"vacuous_only", e.vacuous_only}});
    }
    j["d_scan"] = scan;
  }
  if (!out.comparison.empty()) {
    std::size_t passed = 0;
    for (const ComparisonRow& r : out.comparison) passed += r.pass ? 1 : 0;
    j["comparison"] = {{"rows", out.comparison.size()}, {"passed", passed}};
  }
  if (!out.notes.empty()) j["notes"] = out.notes;
  return j.dump(2) + "\n";
}

void write_human_table(std::ostream& os, const BoundReport& report, std::size_t max_rows) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << "  " << std::setw(6) << "t" << std::setw(8) << "j*" << std::setw(14) << "bound"
     << std::setw(14) << "(1-eps)^j" << std::setw(14) << "tail" << '\n';
  const std::size_t n = report.rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    // First rows, then a thinned tail, always including the last row.
    const bool head = i < max_rows / 2;
    const bool thinned = n > max_rows && (i + 1) % ((n + max_rows - 1) / (max_rows / 2 + 1)) == 0;
    if (!(head || thinned || i + 1 == n || n <= max_rows)) continue;
    const BoundRow& r = report.rows[i];
    os << "  " << std::setw(6) << r.t << std::setw(8) << r.j_star << std::scientific
       << std::setprecision(4) << std::setw(14) << r.bound_value << std::setw(14)
       << r.coupling_term << std::setw(14) << r.tail_term << (r.vacuous ? "  vacuous" : "")
       << '\n';
    os.flags(old_flags);
  }
  os.precision(old_prec);
}

void write_outputs(const std::string& dir, const AnalysisOutput& out) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    if (!f) throw ConfigError("output", "cannot write " + (fs::path(dir) / name).string());
    return f;
  };
  {
    auto f = open("report.json");
    f << report_json(out);
  }
  {
    auto f = open("bounds.csv");
    write_bounds_csv(f, out.report.rows);
  }
  {
    auto f = open("comparison.csv");
    write_comparison_csv(f, out.comparison);
  }
}

}  // namespace mcbound
