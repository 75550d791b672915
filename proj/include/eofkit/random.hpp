// Copyright 2026 The eofkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// random.hpp - reproducible sampling streams.
//
// Every random quantity in the library comes from a GaussianStream:
//
//   engine   std::mt19937_64 seeded with the 64-bit seed (algorithm fixed by
//            the C++ standard, so identical on every conforming platform)
//   uniform  u = (engine() >> 11) * 2^-53, in [0, 1)
//   normal   Box-Muller on (1 - u1, u2): r = sqrt(-2 ln(1 - u1)),
//            first draw r cos(2 pi u2), second draw r sin(2 pi u2)
//   complex  re and im are consecutive normal draws, each N(0, 1)
//
// std::normal_distribution is avoided on purpose: its algorithm is
// implementation-defined. Sub-streams for sample k of a suite seeded with s
// use derive_seed(s, k), a SplitMix64 mix of both values.

#pragma once

#include <cstdint>
#include <random>

#include "eofkit/qmat.hpp"

namespace eofkit {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `index` under `seed`; independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double uniform();
  double normal();
  Complex complex_normal();
  /// Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);

  CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace eofkit
