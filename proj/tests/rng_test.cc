/*
 * Copyright 2026 The PatSTEG Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "patsteg/rng.hpp"

namespace patsteg {
namespace {

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, DerivedStreamsAreDistinct) {
  EXPECT_EQ(derive_seed(1, "split"), derive_seed(1, "split"));
  EXPECT_NE(derive_seed(1, "split"), derive_seed(1, "init"));
  EXPECT_NE(derive_seed(1, "split"), derive_seed(2, "split"));
  EXPECT_EQ(Rng::stream(1, "gumbel").seed(), derive_seed(1, "gumbel"));
}

TEST(Rng, UniformRanges) {
  Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double o = rng.uniform_open01();
    EXPECT_GT(o, 0.0);
    EXPECT_LT(o, 1.0);
  }
}

TEST(Rng, UniformIndexIsUnbiased) {
  Rng rng(8);
  const std::size_t n = 7, draws = 70000;
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < draws; ++i) {
    const auto k = rng.uniform_index(n);
    ASSERT_LT(k, n);
    ++counts[k];
  }
  const double expected = static_cast<double>(draws) / n;
  const double se = std::sqrt(expected * (1.0 - 1.0 / n));
  for (auto c : counts) EXPECT_LT(std::abs(static_cast<double>(c) - expected), 4 * se);
  EXPECT_EQ(rng.uniform_index(1), 0u);
}

TEST(Rng, GumbelMoments) {
  Rng rng(9);
  const int draws = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const double g = rng.gumbel();
    ASSERT_TRUE(std::isfinite(g));
    sum += g;
    sq += g * g;
  }
  const double mean = sum / draws;
  const double var = sq / draws - mean * mean;
  EXPECT_NEAR(mean, 0.5772156649, 0.01);
  EXPECT_NEAR(var, M_PI * M_PI / 6.0, 0.03);
}

}  // namespace
}  // namespace patsteg
