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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace mcbound {

/// Dinic's algorithm on integer capacities.
///
/// Probabilities are mapped to integers with `to_units` before they enter the
/// network, so flow values are exact and the optimal plan can be read back
/// without floating-point drift.
class MaxFlow {
 public:
  using Capacity = std::int64_t;
  static constexpr Capacity kInfinite = std::numeric_limits<Capacity>::max() / 4;

  explicit MaxFlow(std::size_t nodes);

  /// Returns an edge id usable with `flow_on`.
  std::size_t add_edge(std::size_t from, std::size_t to, Capacity capacity);

  Capacity solve(std::size_t source, std::size_t sink);

  Capacity flow_on(std::size_t edge_id) const;

  /// Nodes reachable from the source in the residual graph after `solve`.
  std::vector<bool> source_side(std::size_t source) const;

 private:
  struct Edge {
    std::size_t to;
    Capacity residual;
    Capacity capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  Capacity push(std::size_t node, std::size_t sink, Capacity limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

/// Fixed-point scale for probabilities: 2^50 units per unit of mass.
inline constexpr double kProbabilityScale = 1125899906842624.0;

/// Scale a probability vector to integer units that sum to exactly
/// kProbabilityScale (largest-remainder rounding).
std::vector<MaxFlow::Capacity> to_units(const std::vector<double>& probabilities);

}  // namespace mcbound
