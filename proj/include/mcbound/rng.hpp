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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace mcbound {

/// SplitMix64 finaliser; used to derive independent substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded generator. The engine's output sequence is fixed by the standard;
/// every variate below is produced by inverse CDF from 53-bit uniforms, so
/// draws agree across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Exponential with the given rate: -log(1 - U) / rate.
  double exponential(double rate = 1.0) { return -std::log1p(-uniform()) / rate; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Index drawn from a probability vector by inverse CDF.
  std::size_t categorical(std::span<const double> p) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) continue;
      acc += p[i];
      last = i;
      if (u < acc) return i;
    }
    return last;
  }

 private:
  std::mt19937_64 engine_;
};

/// Number of seed-derived substreams a Monte Carlo run is split into. Fixed,
/// so results do not depend on how many threads execute them.
inline constexpr std::size_t kSubstreams = 64;

/// Runs `fn(rng, begin, end)` over kSubstreams contiguous slices of
/// [0, n_items), each with its own substream generator, and returns the
/// partial results in slice order.
template <class Partial>
std::vector<Partial> run_substreams(
    std::size_t n_items, std::uint64_t seed,
    const std::function<Partial(Rng&, std::size_t, std::size_t)>& fn) {
  std::vector<Partial> partials(kSubstreams);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, kSubstreams);
  auto run_slice = [&](std::size_t s) {
    const std::size_t begin = n_items * s / kSubstreams;
    const std::size_t end = n_items * (s + 1) / kSubstreams;
    Rng rng(substream_seed(seed, s));
    partials[s] = fn(rng, begin, end);
  };
  if (workers == 1) {
    for (std::size_t s = 0; s < kSubstreams; ++s) run_slice(s);
    return partials;
  }
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t s = w; s < kSubstreams; s += workers) run_slice(s);
    }));
  }
  for (auto& j : jobs) j.get();
  return partials;
}

}  // namespace mcbound
