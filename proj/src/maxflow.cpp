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

#include "mcbound/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "mcbound/errors.hpp"

namespace mcbound {

MaxFlow::MaxFlow(std::size_t nodes) : adjacency_(nodes), level_(nodes), next_(nodes) {}

std::size_t MaxFlow::add_edge(std::size_t from, std::size_t to, Capacity capacity) {
  if (capacity < 0) throw DomainError("negative edge capacity");
  const std::size_t id = edges_.size();
  edges_.push_back({to, capacity, capacity});
  adjacency_[from].push_back(id);
  edges_.push_back({from, 0, 0});
  adjacency_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t id : adjacency_[u]) {
      const Edge& e = edges_[id];
      if (e.residual > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[u] + 1;
        queue.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

MaxFlow::Capacity MaxFlow::push(std::size_t node, std::size_t sink, Capacity limit) {
  if (node == sink) return limit;
  for (std::size_t& k = next_[node]; k < adjacency_[node].size(); ++k) {
    const std::size_t id = adjacency_[node][k];
    Edge& e = edges_[id];
    if (e.residual <= 0 || level_[e.to] != level_[node] + 1) continue;
    const Capacity pushed = push(e.to, sink, std::min(limit, e.residual));
    if (pushed > 0) {
      e.residual -= pushed;
      edges_[id ^ 1U].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Capacity MaxFlow::solve(std::size_t source, std::size_t sink) {
  Capacity total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), std::size_t{0});
    while (Capacity pushed = push(source, sink, kInfinite)) total += pushed;
  }
  return total;
}

MaxFlow::Capacity MaxFlow::flow_on(std::size_t edge_id) const {
  const Edge& e = edges_[edge_id];
  return e.capacity - e.residual;
}

std::vector<bool> MaxFlow::source_side(std::size_t source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::vector<std::size_t> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t id : adjacency_[u]) {
      const Edge& e = edges_[id];
      if (e.residual > 0 && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

std::vector<MaxFlow::Capacity> to_units(const std::vector<double>& probabilities) {
  const std::size_t n = probabilities.size();
  std::vector<MaxFlow::Capacity> units(n);
  std::vector<double> remainder(n);
  MaxFlow::Capacity total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scaled = std::max(0.0, probabilities[i]) * kProbabilityScale;
    units[i] = static_cast<MaxFlow::Capacity>(std::floor(scaled));
    remainder[i] = scaled - static_cast<double>(units[i]);
    total += units[i];
  }
  if (std::none_of(probabilities.begin(), probabilities.end(),
                   [](double p) { return p > 0.0; })) {
    return units;
  }
  auto target = static_cast<MaxFlow::Capacity>(kProbabilityScale);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  // Distribute the shortfall (or excess) one unit at a time, favouring the
  // largest remainders, and never pushing a zero entry below zero.
  for (std::size_t k = 0; total < target && n > 0; k = (k + 1) % n) {
    if (probabilities[order[k]] > 0.0) {
      ++units[order[k]];
      ++total;
    }
  }
  for (std::size_t k = n; total > target && n > 0;) {
    k = (k == 0 ? n : k) - 1;
    if (units[order[k]] > 0) {
      --units[order[k]];
      --total;
    }
  }
  return units;
}

}  // namespace mcbound
