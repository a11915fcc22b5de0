// Copyright 2026 The mzsim Authors
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

namespace mzsim {

/// SplitMix64 finalizer; bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

/// Derives a child seed from a base seed and a salt. Distinct salts give
/// statistically independent streams under the same base.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) noexcept {
  return mix64(base ^ mix64(salt + 0x9E3779B97F4A7C15ull));
}

/// Counter-based random stream for one Monte Carlo trial.
///
/// Draw j of trial i under master seed s depends only on (s, i, j), never on
/// scheduling or worker assignment, so record sequences are bit-identical for
/// any degree of parallelism.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial_id) noexcept
      : state_(derive_seed(master_seed, trial_id)) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ull;  // Weyl increment, splitmix64 sequence
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Hands out independent sub-seeds for the successive runs of a scenario,
/// deterministically from one base seed.
class SeedSequence {
 public:
  explicit SeedSequence(std::uint64_t base) noexcept : base_(base) {}

  std::uint64_t next() noexcept { return derive_seed(base_, salt_++); }

 private:
  std::uint64_t base_;
  std::uint64_t salt_ = 0;
};

}  // namespace mzsim
