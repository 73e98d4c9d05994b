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
#include <map>
#include <span>
#include <vector>

#include "dirand/errors.hpp"
#include "dirand/rng.hpp"

namespace dirand {

// Probability tolerances shared by the source models.
inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kFlatTolerance = 1e-9;
inline constexpr double kZeroClamp = 1e-12;

// Sparse probability distribution over n-bit strings, immutable once built.
// Outcomes are machine integers, which caps the block length at 64 bits.
class OutcomeDistribution {
 public:
  OutcomeDistribution(unsigned n, std::map<std::uint64_t, double> probs);

  unsigned n() const { return n_; }
  const std::map<std::uint64_t, double>& probs() const { return probs_; }
  std::size_t support_size() const { return probs_.size(); }

  static OutcomeDistribution uniform_on(unsigned n,
                                        std::span<const std::uint64_t> support);
  static OutcomeDistribution point_mass(unsigned n, std::uint64_t outcome);

 private:
  unsigned n_;
  std::map<std::uint64_t, double> probs_;
};

// (n, k) source parameters; the min-entropy rate is k/n.
class SourceSpec {
 public:
  SourceSpec(unsigned n, double k);

  unsigned n() const { return n_; }
  double k() const { return k_; }
  double rate() const { return k_ / n_; }

 private:
  unsigned n_;
  double k_;
};

// Uniform distribution on exactly four outcomes, with a convex weight.
struct FlatComponent {
  std::array<std::uint64_t, 4> support;  // ascending
  double weight;

  OutcomeDistribution to_distribution(unsigned n) const {
    return OutcomeDistribution::uniform_on(n, support);
  }
};

double min_entropy(const OutcomeDistribution& dist);

// True iff the distribution is uniform on exactly four outcomes.
bool is_flat(const OutcomeDistribution& dist);

// Convex decomposition of a distribution with min-entropy >= 2 into flat
// components. Greedy peeling: pick the four most probable outcomes (ties by
// ascending outcome), peel the largest weight that keeps the residual's
// maximum probability at most a quarter of the residual mass. Correctness is
// enforced by the reconstruction post-condition, not the peeling order.
std::vector<FlatComponent> caratheodory_decompose(
    const OutcomeDistribution& dist);

// Concatenate ceil(2/k') blocks of an (n', k') source into an (n, k) source
// with k >= 2. Requires k' > 0.
SourceSpec block_concat(const SourceSpec& spec);

// Draw one outcome; deterministic given the stream state (inverse CDF over
// ascending outcomes).
std::uint64_t sample(const OutcomeDistribution& dist, RngStream& rng);

// Block source: emits an n-bit distribution for each round, conditioned on
// the history of previously emitted blocks. Adversarial side information is
// whatever state the strategy closure captures. Every emitted block must
// have min-entropy >= spec.k; next() enforces this and throws a
// contract_violation otherwise.
class BlockSourceOracle {
 public:
  using Strategy =
      std::function<OutcomeDistribution(std::span<const std::uint64_t>)>;

  BlockSourceOracle(SourceSpec spec, Strategy strategy);

  const SourceSpec& spec() const { return spec_; }
  OutcomeDistribution next(std::span<const std::uint64_t> history) const;

  // History-independent source emitting the same distribution every block.
  static BlockSourceOracle iid(const OutcomeDistribution& dist);

 private:
  SourceSpec spec_;
  Strategy strategy_;
};

}  // namespace dirand
