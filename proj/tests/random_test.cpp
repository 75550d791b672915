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

#include "eofkit/random.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

using namespace eofkit;

TEST(random, same_seed_same_stream) {
  GaussianStream a(42), b(42);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.normal(), b.normal());
  EXPECT_EQ(GaussianStream(7).complex_gaussian(3, 2), GaussianStream(7).complex_gaussian(3, 2));
}

TEST(random, derive_seed_spreads) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(derive_seed(s, i));
  }
  EXPECT_EQ(seen.size(), 4u * 256u);
  EXPECT_EQ(derive_seed(3, 5), derive_seed(3, 5));
}

TEST(random, uniform_range_and_moments) {
  GaussianStream rng(1);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(random, uniform_index_covers_range) {
  GaussianStream rng(2);
  std::set<std::size_t> seen;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t x = rng.uniform_index(2, 5);
    ASSERT_GE(x, 2u);
    ASSERT_LE(x, 5u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 4u);
  EXPECT_EQ(rng.uniform_index(3, 3), 3u);
}
