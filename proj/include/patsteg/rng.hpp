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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace patsteg {

/// Mixes a root seed with a stream name into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t root_seed, std::string_view stream_name);

/// Seeded generator with platform-independent draws.
///
/// std::mt19937_64's output sequence is fixed by the standard, but the
/// standard distributions are not, so every draw used by the library goes
/// through the helpers below.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  /// Named sub-stream of a root seed ("split", "init", "gumbel", ...).
  static Rng stream(std::uint64_t root_seed, std::string_view name) {
    return Rng(derive_seed(root_seed, name));
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Standard Gumbel(0, 1) draw.
  double gumbel();

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace patsteg
