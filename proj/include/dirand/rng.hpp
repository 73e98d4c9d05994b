// Copyright 2026 The dirand contributors
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

#include "dirand/errors.hpp"

namespace dirand {

// Counter-based stream built on the SplitMix64 finalizer: output t of the
// stream with key k is mix64(k + (t+1)*GOLDEN). Streams derived from a
// master seed by index are independent for all practical purposes and a
// stream never mutates anything besides its own counter, so per-trial
// streams can run concurrently. The derivation below is part of the
// reproducibility contract and must stay stable across versions:
//
//   stream key(master, i) = mix64(mix64(master) + (i + 1) * GOLDEN)
class RngStream {
 public:
  static constexpr const char* kAlgorithmName = "splitmix64";
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  explicit RngStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static RngStream from_master(std::uint64_t master_seed,
                               std::uint64_t stream_index) {
    return RngStream(mix64(mix64(master_seed) + (stream_index + 1) * kGolden));
  }

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  bool bernoulli(double p) { return next_double() < p; }

  // Unbiased uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    require(bound > 0, ErrorCode::invalid_input, "next_below: bound is zero");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dirand
