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

#include <iosfwd>
#include <string>
#include <vector>

#include "mcbound/bounds.hpp"
#include "mcbound/empirics.hpp"

namespace mcbound {

// CSV files carry raw doubles at %.17g so that parsing them back recovers the
// exact binary values.

inline constexpr const char* kBoundsCsvHeader =
    "t,j_star,bound,tail_term,coupling_term,vacuous,underflow";
inline constexpr const char* kComparisonCsvHeader =
    "t,kappa,bound,j_star,tail_term,coupling_term,pass,band";
inline constexpr const char* kPathStatsCsvHeader = "path,tau,visits";
inline constexpr const char* kCoupledKernelCsvHeader = "from_pair,to_pair,probability";

std::string format_double(double x);

void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows);
void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);
void write_path_stats_csv(std::ostream& os, const CoupledPathStats& stats);
/// Nonzero entries only, in (from, to) order.
void write_coupled_kernel_csv(std::ostream& os, const CoupledKernel& qhat);

/// Parsers throw ConfigError (path = line number) on malformed input.
std::vector<BoundRow> parse_bounds_csv(std::istream& is);
std::vector<ComparisonRow> parse_comparison_csv(std::istream& is);

/// Per-d summary when the CLI scans a d grid.
struct DScanEntry {
  double d = 1.0;
  double gamma = 0.0;
  double eps = 0.0;
  double h_val = 0.0;
  double bound_at_t_max = 0.0;
  bool vacuous_only = true;
};

/// Everything cmd_analyze emits.
struct AnalysisOutput {
  BoundReport report;
  std::vector<ComparisonRow> comparison;
  std::vector<DScanEntry> d_scan;
  std::vector<std::string> notes;
};

/// report.json: certificate, epsilon with provenance, H, rows and metadata.
std::string report_json(const AnalysisOutput& out);

/// Rounded fixed-width table for terminals.
void write_human_table(std::ostream& os, const BoundReport& report, std::size_t max_rows = 12);

/// Writes report.json, bounds.csv and comparison.csv into `dir`, creating it.
void write_outputs(const std::string& dir, const AnalysisOutput& out);

}  // namespace mcbound
