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

#include "dirand/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dirand {

namespace {

bool support_is_power_of_four(std::size_t v) {
  return v >= 4 && (v & (v - 1)) == 0 && (std::countr_zero(v) % 2) == 0;
}

}  // namespace

void validate_protocol_config(const ProtocolConfig& config,
                              unsigned source_n) {
  require(config.epsilon > 0.0 && config.epsilon < 0.5,
          ErrorCode::invalid_config, "epsilon must lie in (0, 1/2)");
  require(config.delta > 0.0 && config.delta < 1.0,
          ErrorCode::invalid_config, "delta must lie in (0, 1)");
  require(config.family.size() > 0, ErrorCode::invalid_config,
          "empty hash family");
  require(config.family.n() == source_n, ErrorCode::invalid_config,
          "hash family input length does not match the source");
  require(config.family.size() <= kMaxSimulatedDevices,
          ErrorCode::invalid_config,
          "family too large to simulate one device per member; use an "
          "explicit or matrix family");
  require(config.devices.size() == 1 ||
              config.devices.size() == config.family.size(),
          ErrorCode::invalid_config,
          "need one device model per family member (or a single shared "
          "model)");
}

std::uint64_t robust_threshold(std::uint64_t rounds, double f) {
  require(f >= 0.0 && f <= 1.0, ErrorCode::invalid_input,
          "f must lie in [0, 1]");
  return static_cast<std::uint64_t>(
      std::floor(static_cast<double>(rounds) * (1.0 - f) / 2.0));
}

RoundResult run_single_round(std::uint64_t x, const ProtocolConfig& config,
                             RngStream& rng) {
  validate_protocol_config(config, config.family.n());
  require(config.family.n() >= 64 || x < (1ull << config.family.n()),
          ErrorCode::invalid_input, "source string exceeds 2^n - 1");

  RoundResult result;
  result.bit = 0;
  result.failures = 0;
  const std::uint64_t m = config.family.size();
  result.pass_flags.reserve(m);
  Transcript transcript;
  transcript.reserve(m);

  for (std::uint64_t i = 0; i < m; ++i) {
    const unsigned symbol = eval_hash(config.family.member(i), x);
    const MerminInput in = encode_setting(symbol);
    const MerminOutput out =
        respond(config.device_for(i), in, transcript, rng);
    const bool pass = passes_test(in, out);
    result.pass_flags.push_back(pass ? 1 : 0);
    if (!pass) {
      ++result.failures;
      if (!result.first_failing_device) {
        result.first_failing_device = static_cast<unsigned>(i);
      }
    }
    result.bit ^= out.a ? 1 : 0;
    transcript.push_back({static_cast<unsigned>(i), in, out});
  }
  if (config.record_transcripts) result.transcript = std::move(transcript);
  return result;
}

namespace {

RunReport run_rounds(const BlockSourceOracle& oracle, std::uint64_t rounds,
                     std::uint64_t threshold, const ProtocolConfig& config,
                     RngStream& rng) {
  validate_protocol_config(config, oracle.spec().n());
  require(rounds >= 1, ErrorCode::invalid_config,
          "need at least one round");

  RunReport report;
  report.threshold = threshold;
  int bit = 0;
  std::vector<std::uint64_t> history;
  history.reserve(rounds);

  for (std::uint64_t j = 0; j < rounds; ++j) {
    const OutcomeDistribution block = oracle.next(history);
    const std::uint64_t x = sample(block, rng);
    history.push_back(x);

    RoundResult round = run_single_round(x, config, rng);
    report.rounds.push_back(
        {round.bit, round.failures, round.first_failing_device});
    if (config.record_transcripts) {
      report.transcripts.push_back(std::move(round.transcript));
    }
    ++report.rounds_executed;
    report.failures += round.failures;
    if (!report.first_failing_device && round.first_failing_device) {
      report.first_failing_device = round.first_failing_device;
    }
    bit ^= round.bit;
    if (report.failures > threshold) {
      report.aborted = true;
      return report;
    }
  }
  report.bit = bit;
  return report;
}

}  // namespace

RunReport run_block_protocol(const BlockSourceOracle& oracle,
                             std::uint64_t rounds,
                             const ProtocolConfig& config, RngStream& rng) {
  return run_rounds(oracle, rounds, 0, config, rng);
}

RunReport run_robust(const BlockSourceOracle& oracle, std::uint64_t rounds,
                     std::uint64_t threshold, const ProtocolConfig& config,
                     RngStream& rng) {
  return run_rounds(oracle, rounds, threshold, config, rng);
}

RunReport run_one_shot(const OutcomeDistribution& flat_dist,
                       const ProtocolConfig& config, RngStream& rng) {
  const std::size_t support = flat_dist.support_size();
  require(support_is_power_of_four(support), ErrorCode::invalid_input,
          "one-shot source support must have size 4^(Rn/2); decompose "
          "non-flat sources first");
  const double expected = 1.0 / static_cast<double>(support);
  std::vector<std::uint64_t> outcomes;
  outcomes.reserve(support);
  for (const auto& [outcome, p] : flat_dist.probs()) {
    require(std::abs(p - expected) <= kFlatTolerance,
            ErrorCode::invalid_input,
            "one-shot source must be uniform on its support");
    outcomes.push_back(outcome);
  }

  ProtocolConfig one_shot = config;
  one_shot.family = HashFamily::build_matrix(flat_dist.n(), outcomes);
  validate_protocol_config(one_shot, flat_dist.n());

  const std::uint64_t x = sample(flat_dist, rng);
  RoundResult round = run_single_round(x, one_shot, rng);

  RunReport report;
  report.threshold = 0;
  report.rounds_executed = 1;
  report.rounds.push_back(
      {round.bit, round.failures, round.first_failing_device});
  if (config.record_transcripts) {
    report.transcripts.push_back(std::move(round.transcript));
  }
  report.failures = round.failures;
  report.first_failing_device = round.first_failing_device;
  if (round.failures > 0) {
    report.aborted = true;
  } else {
    report.bit = round.bit;
  }
  return report;
}

OneShotAnalysis analyze_one_shot(const OutcomeDistribution& dist,
                                 const ProtocolConfig& config,
                                 std::uint64_t trials_per_component,
                                 RngStream& rng) {
  require(trials_per_component >= 1, ErrorCode::invalid_config,
          "need at least one trial per component");
  OneShotAnalysis analysis;
  double non_abort = 0.0;
  double one_rate = 0.0;
  for (const FlatComponent& part : caratheodory_decompose(dist)) {
    OneShotComponentStats stats;
    stats.component = part;
    const OutcomeDistribution flat = part.to_distribution(dist.n());
    for (std::uint64_t t = 0; t < trials_per_component; ++t) {
      const RunReport report = run_one_shot(flat, config, rng);
      ++stats.trials;
      if (report.aborted) {
        ++stats.aborts;
      } else if (*report.bit == 1) {
        ++stats.ones;
      }
    }
    const double survived = static_cast<double>(stats.trials - stats.aborts);
    non_abort += part.weight * survived / stats.trials;
    if (survived > 0) {
      one_rate += part.weight * static_cast<double>(stats.ones) / survived;
    }
    analysis.components.push_back(std::move(stats));
  }
  analysis.weighted_non_abort = non_abort;
  analysis.weighted_one_rate = one_rate;
  return analysis;
}

}  // namespace dirand
