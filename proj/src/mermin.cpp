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

#include "dirand/mermin.hpp"

namespace dirand {

MerminInput encode_setting(unsigned symbol) {
  switch (symbol) {
    case 0:
      return {true, true, true};
    case 1:
      return {true, false, false};
    case 2:
      return {false, true, false};
    case 3:
      return {false, false, true};
    default:
      fail(ErrorCode::invalid_input, "setting symbol must be in {0,1,2,3}");
  }
}

bool lhv_response(unsigned code, bool input) {
  switch (code & 3u) {
    case 0:
      return false;
    case 1:
      return true;
    case 2:
      return input;
    default:
      return !input;
  }
}

MerminOutput respond(const DeviceModel& device, const MerminInput& in,
                     const Transcript& history, RngStream& rng) {
  require(in.admissible(), ErrorCode::contract_violation,
          "inadmissible box input (X^Y^Z must be 1)");
  if (const auto* ghz = std::get_if<HonestGhz>(&device)) {
    (void)ghz;
    const bool a = rng.next_bit();
    const bool b = rng.next_bit();
    return {a, b, static_cast<bool>(a ^ b ^ in.product())};
  }
  if (const auto* lhv = std::get_if<DeterministicLhv>(&device)) {
    require(lhv->index < kLhvStrategyCount, ErrorCode::invalid_config,
            "LHV strategy index must be in [0, 64)");
    return {lhv_response(lhv->index >> 4, in.x),
            lhv_response((lhv->index >> 2) & 3u, in.y),
            lhv_response(lhv->index & 3u, in.z)};
  }
  if (const auto* noisy = std::get_if<NoisyHonest>(&device)) {
    require(noisy->mu >= 0.0 && noisy->mu <= 1.0, ErrorCode::invalid_config,
            "failure probability must be in [0, 1]");
    const bool a = rng.next_bit();
    const bool b = rng.next_bit();
    bool c = a ^ b ^ in.product();
    if (rng.bernoulli(noisy->mu)) c = !c;
    return {a, b, c};
  }
  const auto& adv = std::get<MemoryAdversary>(device);
  require(static_cast<bool>(adv.rule), ErrorCode::invalid_config,
          "memory adversary has no rule");
  return adv.rule(in, history);
}

ClassicalMaxResult brute_force_classical_max(StrategyConstraint constraint) {
  ClassicalMaxResult result{0.0, {}, {}};
  RngStream unused(0);  // deterministic strategies never draw from it
  for (unsigned index = 0; index < kLhvStrategyCount; ++index) {
    if (constraint == StrategyConstraint::output_a_constant &&
        (index >> 4) > 1) {
      continue;
    }
    unsigned passes = 0;
    for (unsigned s = 0; s < 4; ++s) {
      const MerminInput in = encode_setting(s);
      const MerminOutput out =
          respond(DeterministicLhv{index}, in, {}, unused);
      if (passes_test(in, out)) ++passes;
    }
    ++result.pass_histogram[passes];
    const double vu = passes / 4.0;
    if (vu > result.max_vu) {
      result.max_vu = vu;
      result.maximizers.clear();
    }
    if (vu == result.max_vu) result.maximizers.push_back(index);
  }
  return result;
}

}  // namespace dirand
