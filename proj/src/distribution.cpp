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

#include "dirand/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace dirand {

namespace {

bool outcome_in_range(unsigned n, std::uint64_t outcome) {
  return n >= 64 || outcome < (1ull << n);
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(unsigned n,
                                         std::map<std::uint64_t, double> probs)
    : n_(n), probs_(std::move(probs)) {
  require(n >= 1 && n <= 64, ErrorCode::unsupported,
          "outcome bit length must be in [1, 64]");
  double sum = 0.0;
  for (auto it = probs_.begin(); it != probs_.end();) {
    require(outcome_in_range(n_, it->first), ErrorCode::invalid_input,
            "outcome exceeds 2^n - 1");
    require(it->second >= 0.0 && it->second <= 1.0, ErrorCode::invalid_input,
            "probability outside [0, 1]");
    sum += it->second;
    if (it->second == 0.0) {
      it = probs_.erase(it);
    } else {
      ++it;
    }
  }
  require(std::abs(sum - 1.0) <= kSumTolerance, ErrorCode::invalid_input,
          "probabilities do not sum to 1");
  require(!probs_.empty(), ErrorCode::invalid_input, "empty distribution");
}

OutcomeDistribution OutcomeDistribution::uniform_on(
    unsigned n, std::span<const std::uint64_t> support) {
  require(!support.empty(), ErrorCode::invalid_input, "empty support");
  std::map<std::uint64_t, double> probs;
  const double p = 1.0 / static_cast<double>(support.size());
  for (std::uint64_t outcome : support) {
    require(!probs.contains(outcome), ErrorCode::invalid_input,
            "duplicate outcome in support");
    probs[outcome] = p;
  }
  return OutcomeDistribution(n, std::move(probs));
}

OutcomeDistribution OutcomeDistribution::point_mass(unsigned n,
                                                    std::uint64_t outcome) {
  return OutcomeDistribution(n, {{outcome, 1.0}});
}

SourceSpec::SourceSpec(unsigned n, double k) : n_(n), k_(k) {
  require(n >= 1, ErrorCode::invalid_input, "block length must be positive");
  require(k >= 0.0 && k <= static_cast<double>(n), ErrorCode::invalid_input,
          "min-entropy must satisfy 0 <= k <= n");
}

double min_entropy(const OutcomeDistribution& dist) {
  require(!dist.probs().empty(), ErrorCode::invalid_input,
          "min-entropy of empty distribution");
  double max_p = 0.0;
  for (const auto& [outcome, p] : dist.probs()) max_p = std::max(max_p, p);
  return -std::log2(max_p);
}

bool is_flat(const OutcomeDistribution& dist) {
  if (dist.support_size() != 4) return false;
  for (const auto& [outcome, p] : dist.probs()) {
    if (std::abs(p - 0.25) > kFlatTolerance) return false;
  }
  return true;
}

std::vector<FlatComponent> caratheodory_decompose(
    const OutcomeDistribution& dist) {
  struct Entry {
    std::uint64_t outcome;
    double p;
  };
  std::vector<Entry> residual;
  residual.reserve(dist.support_size());
  double max_p = 0.0;
  for (const auto& [outcome, p] : dist.probs()) {
    residual.push_back({outcome, p});
    max_p = std::max(max_p, p);
  }
  require(max_p <= 0.25 + kSumTolerance, ErrorCode::not_decomposable,
          "distribution has min-entropy below 2");
  require(residual.size() >= 4, ErrorCode::not_decomposable,
          "fewer than four outcomes in support");

  std::vector<FlatComponent> components;
  double mass = 1.0;
  const std::size_t iteration_cap = 2 * residual.size() + 8;
  for (std::size_t iter = 0; mass > kZeroClamp; ++iter) {
    require(iter < iteration_cap, ErrorCode::not_decomposable,
            "decomposition failed to terminate");
    std::sort(residual.begin(), residual.end(), [](const Entry& a,
                                                   const Entry& b) {
      if (a.p != b.p) return a.p > b.p;
      return a.outcome < b.outcome;
    });
    // min(nonnegativity of the four peeled outcomes, max-prob constraint on
    // the fifth-largest outcome left untouched).
    const double fifth = residual.size() > 4 ? residual[4].p : 0.0;
    const double w = std::min(4.0 * residual[3].p, mass - 4.0 * fifth);
    require(w > 0.0, ErrorCode::not_decomposable,
            "peeling produced a non-positive weight");

    FlatComponent comp;
    for (int i = 0; i < 4; ++i) {
      comp.support[i] = residual[i].outcome;
      residual[i].p -= w / 4.0;
    }
    std::sort(comp.support.begin(), comp.support.end());
    comp.weight = w;
    components.push_back(comp);
    mass -= w;

    std::erase_if(residual, [](const Entry& e) { return e.p < kZeroClamp; });
    if (residual.empty()) break;
  }

  double weight_sum = 0.0;
  for (const FlatComponent& c : components) weight_sum += c.weight;
  require(std::abs(weight_sum - 1.0) <= 1e-6, ErrorCode::not_decomposable,
          "decomposition weights drifted");
  for (FlatComponent& c : components) c.weight /= weight_sum;
  return components;
}

SourceSpec block_concat(const SourceSpec& spec) {
  require(spec.k() > 0.0, ErrorCode::cannot_amplify,
          "source with zero min-entropy cannot be amplified");
  const double t = std::ceil(2.0 / spec.k());
  const auto blocks = static_cast<unsigned>(t);
  return SourceSpec(blocks * spec.n(), blocks * spec.k());
}

std::uint64_t sample(const OutcomeDistribution& dist, RngStream& rng) {
  const double u = rng.next_double();
  double cum = 0.0;
  std::uint64_t last = 0;
  for (const auto& [outcome, p] : dist.probs()) {
    cum += p;
    last = outcome;
    if (u < cum) return outcome;
  }
  return last;  // u landed in the rounding slack past the final outcome
}

BlockSourceOracle::BlockSourceOracle(SourceSpec spec, Strategy strategy)
    : spec_(spec), strategy_(std::move(strategy)) {
  require(static_cast<bool>(strategy_), ErrorCode::invalid_config,
          "block source needs a strategy");
}

OutcomeDistribution BlockSourceOracle::next(
    std::span<const std::uint64_t> history) const {
  OutcomeDistribution block = strategy_(history);
  require(block.n() == spec_.n(), ErrorCode::contract_violation,
          "block source emitted a block of the wrong length");
  require(min_entropy(block) >= spec_.k() - kFlatTolerance,
          ErrorCode::contract_violation,
          "block source emitted a block below the min-entropy floor");
  return block;
}

BlockSourceOracle BlockSourceOracle::iid(const OutcomeDistribution& dist) {
  SourceSpec spec(dist.n(), min_entropy(dist));
  return BlockSourceOracle(
      spec, [dist](std::span<const std::uint64_t>) { return dist; });
}

}  // namespace dirand
