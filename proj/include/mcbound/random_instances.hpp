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
#include <vector>

#include "mcbound/drift.hpp"
#include "mcbound/finite_core.hpp"
#include "mcbound/poset.hpp"
#include "mcbound/rng.hpp"

namespace mcbound {

// Seeded generators for property suites: random posets, laws and increasing
// kernels. Shared by selftest, the unit tests and the acceptance run.

/// Random DAG on n nodes (edge i -> j, i < j, with probability `density`),
/// closed transitively.
FinitePoset random_poset(std::size_t n, double density, Rng& rng);

/// Dirichlet(1, ..., 1) draw; with `sparse`, some entries are zeroed first.
FiniteDist random_dist(std::size_t n, Rng& rng, bool sparse = false);

/// Mixture of random increasing maps and a constant row, rejection-checked
/// with kernel_is_increasing. Throws ModelError after `max_tries` failures.
FiniteKernel random_increasing_kernel(const FinitePoset& poset, Rng& rng,
                                      int max_tries = 1000);

/// Everything a single theorem-validation seed needs.
struct TheoremInstance {
  FinitePoset poset;
  FiniteKernel q;
  std::vector<double> v;
  DriftCertificate cert;
  double eps = 0.0;
  std::vector<std::pair<FiniteDist, FiniteDist>> initial_pairs;
};

/// 6-state increasing kernel, V = 1 + 10U, drift fitted on lambda in
/// {0, 0.05, ..., 0.95}, eps exact on C = {V <= d}. d cycles with the seed
/// through min V, median V, max V and 2 max V, so C is never empty.
TheoremInstance random_theorem_instance(std::uint64_t seed, std::size_t n = 6,
                                        std::size_t n_pairs = 5);

}  // namespace mcbound
