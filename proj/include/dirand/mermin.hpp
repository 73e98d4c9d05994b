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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dirand/errors.hpp"
#include "dirand/rng.hpp"

namespace dirand {

// One tripartite box round: inputs X, Y, Z with X^Y^Z = 1, outputs A, B, C.
struct MerminInput {
  bool x, y, z;

  bool admissible() const { return (x ^ y ^ z) == true; }
  bool product() const { return x && y && z; }
};

struct MerminOutput {
  bool a, b, c;
};

// Maps a hash symbol onto the admissible settings: 0 -> 111, 1 -> 100,
// 2 -> 010, 3 -> 001.
MerminInput encode_setting(unsigned symbol);

// The box test A ^ B ^ C = X * Y * Z.
inline bool passes_test(const MerminInput& in, const MerminOutput& out) {
  return (out.a ^ out.b ^ out.c) == in.product();
}

struct TranscriptEntry {
  unsigned device_id;
  MerminInput input;
  MerminOutput output;
};

// Ordered causal history of a round; device i only ever sees entries of
// devices with smaller ids.
using Transcript = std::vector<TranscriptEntry>;

// Behavioural device models.
//
// HonestGhz draws A and B uniformly and sets C = A ^ B ^ (X*Y*Z), which
// reproduces the box statistics that pass the test on all four admissible
// settings with uniform single-bit marginals.
struct HonestGhz {};

// Deterministic classical strategy: index = 16a + 4b + c where a, b, c in
// {0..3} select one of (const0, const1, identity, negation) for parties
// A(X), B(Y), C(Z).
struct DeterministicLhv {
  unsigned index;  // 0..63
};

// Honest device whose test-relevant bit C is flipped with probability mu.
struct NoisyHonest {
  double mu;
};

// Extension point: arbitrary deterministic rule over the device's own input
// and the causal history of its predecessors.
struct MemoryAdversary {
  std::string name;
  std::function<MerminOutput(const MerminInput&, const Transcript&)> rule;
};

using DeviceModel =
    std::variant<HonestGhz, DeterministicLhv, NoisyHonest, MemoryAdversary>;

constexpr unsigned kLhvStrategyCount = 64;

// Decoded single-party response function.
bool lhv_response(unsigned code, bool input);

MerminOutput respond(const DeviceModel& device, const MerminInput& in,
                     const Transcript& history, RngStream& rng);

enum class StrategyConstraint { none, output_a_constant };

struct ClassicalMaxResult {
  double max_vu;
  std::vector<unsigned> maximizers;
  // histogram[k] = number of enumerated strategies passing exactly k of the
  // four admissible settings
  std::array<unsigned, 5> pass_histogram;
};

// Enumerates all deterministic strategies (optionally restricted to those
// with constant A output) and reports the maximal uniform-input Mermin value.
ClassicalMaxResult brute_force_classical_max(StrategyConstraint constraint);

}  // namespace dirand
