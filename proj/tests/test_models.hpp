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

// Small finite chains shared by several suites.

#include <cmath>
#include <vector>

#include "mcbound/finite_core.hpp"
#include "mcbound/poset.hpp"

namespace test_models {

struct GridChain {
  std::vector<double> x;  // state values, increasing
  std::vector<double> v;  // V(x) = x + 1
  mcbound::FiniteKernel q;
  mcbound::FinitePoset poset;
};

/// x -> floor_to_grid(x / 2) + W on the grid k/8, k = 0..16, W uniform on {0, 1}.
inline GridChain discretised_half_bernoulli() {
  constexpr std::size_t kN = 17;
  std::vector<double> x(kN), v(kN);
  std::vector<std::vector<double>> rows(kN, std::vector<double>(kN, 0.0));
  for (std::size_t i = 0; i < kN; ++i) {
    x[i] = static_cast<double>(i) / 8.0;
    v[i] = x[i] + 1.0;
    const std::size_t half = i / 2;
    rows[i][half] += 0.5;
    rows[i][half + 8] += 0.5;
  }
  return {x, v, mcbound::FiniteKernel(rows), mcbound::FinitePoset::chain(kN)};
}

/// Three-state chain 0 < 1 < 2, symmetric about the middle state.
inline mcbound::FiniteKernel three_state_chain() {
  return mcbound::FiniteKernel(std::vector<std::vector<double>>{
      {0.6, 0.3, 0.1}, {0.3, 0.4, 0.3}, {0.1, 0.3, 0.6}});
}

}  // namespace test_models
