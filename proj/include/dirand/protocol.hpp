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
#include <optional>
#include <vector>

#include "dirand/distribution.hpp"
#include "dirand/hash_family.hpp"
#include "dirand/mermin.hpp"

namespace dirand {

// Shared configuration of a protocol run: the hash family fixes the device
// count per round; devices are behavioural models instantiated fresh each
// round. A single model may be supplied to stand for every device.
struct ProtocolConfig {
  double epsilon = 0.01;
  double delta = 1e-3;
  HashFamily family;
  std::vector<DeviceModel> devices;
  bool record_transcripts = false;

  const DeviceModel& device_for(std::uint64_t member) const {
    return devices.size() == 1 ? devices.front() : devices[member];
  }
};

// Family sizes beyond this are analysis-only; simulating one round would
// instantiate that many devices.
inline constexpr std::uint64_t kMaxSimulatedDevices = 1ull << 20;

void validate_protocol_config(const ProtocolConfig& config, unsigned source_n);

struct RoundResult {
  int bit;  // XOR of the devices' A outputs
  std::uint64_t failures;
  std::optional<unsigned> first_failing_device;
  std::vector<std::uint8_t> pass_flags;
  Transcript transcript;  // populated when record_transcripts is set
};

struct RoundSummary {
  int bit;
  std::uint64_t failures;
  std::optional<unsigned> first_failing_device;
};

struct RunReport {
  std::optional<int> bit;  // absent iff aborted
  bool aborted = false;
  std::uint64_t failures = 0;
  std::uint64_t rounds_executed = 0;
  std::uint64_t threshold = 0;  // tolerated failures (0 in non-robust modes)
  std::optional<unsigned> first_failing_device;
  std::vector<RoundSummary> rounds;
  // one entry per executed round when record_transcripts is set
  std::vector<Transcript> transcripts;
};

// Tolerated failure count floor(l (1 - f) / 2) of the robust protocol.
std::uint64_t robust_threshold(std::uint64_t rounds, double f);

// One round: device i receives encode_setting(h_i(x)) in ascending id order,
// sees the transcript of its predecessors, and is tested against
// A ^ B ^ C = X * Y * Z. The round bit is the XOR of the A outputs.
RoundResult run_single_round(std::uint64_t x, const ProtocolConfig& config,
                             RngStream& rng);

// l rounds on successive oracle blocks with fresh devices each round;
// aborts on the first failing device. The output bit XORs the round bits.
RunReport run_block_protocol(const BlockSourceOracle& oracle,
                             std::uint64_t rounds,
                             const ProtocolConfig& config, RngStream& rng);

// Single round over the matrix family of a flat source whose support has
// size 4^(Rn/2); one device per matrix row. Non-flat inputs are rejected —
// decompose them first and analyse per component.
RunReport run_one_shot(const OutcomeDistribution& flat_dist,
                       const ProtocolConfig& config, RngStream& rng);

// Block protocol that tolerates up to `threshold` device failures across
// the whole run; aborts as soon as the cumulative count exceeds it. No bit
// is ever emitted on abort.
RunReport run_robust(const BlockSourceOracle& oracle, std::uint64_t rounds,
                     std::uint64_t threshold, const ProtocolConfig& config,
                     RngStream& rng);

struct OneShotComponentStats {
  FlatComponent component;
  std::uint64_t trials = 0;
  std::uint64_t aborts = 0;
  std::uint64_t ones = 0;  // output bits equal to 1 among non-aborted runs
};

struct OneShotAnalysis {
  std::vector<OneShotComponentStats> components;
  // convex combinations of the per-component empirical rates
  double weighted_non_abort = 0.0;
  double weighted_one_rate = 0.0;  // P(bit = 1 | not aborted), weighted
};

// Analysis route for non-flat one-shot sources: decompose into flat
// components and run the one-shot protocol on each, aggregating the
// statistics by the convex weights. The mixture's escape probability is at
// most the worst component's, so the weighted rate is the quantity the
// per-component guarantee transfers to.
OneShotAnalysis analyze_one_shot(const OutcomeDistribution& dist,
                                 const ProtocolConfig& config,
                                 std::uint64_t trials_per_component,
                                 RngStream& rng);

}  // namespace dirand
