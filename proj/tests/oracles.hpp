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
//
// Independent reference implementations used as test oracles. Everything in
// here recomputes results from first principles and must stay decoupled from
// the library code paths it checks.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "dirand/distribution.hpp"
#include "dirand/hash_family.hpp"
#include "dirand/rng.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Deterministic classical strategies, evaluated from explicit tables.

inline bool table_response(unsigned code, bool input) {
  switch (code & 3u) {
    case 0: return false;
    case 1: return true;
    case 2: return input;
    default: return !input;
  }
}

// Number of the four admissible settings the strategy passes.
inline unsigned lhv_pass_count(unsigned index) {
  static constexpr std::array<std::array<int, 3>, 4> settings{
      {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  unsigned passes = 0;
  for (const auto& s : settings) {
    const bool a = table_response(index >> 4, s[0] != 0);
    const bool b = table_response((index >> 2) & 3u, s[1] != 0);
    const bool c = table_response(index & 3u, s[2] != 0);
    const bool product = (s[0] & s[1] & s[2]) != 0;
    if ((a ^ b ^ c) == product) ++passes;
  }
  return passes;
}

// The set of settings (as symbols 0..3) the strategy passes.
inline unsigned lhv_pass_mask(unsigned index) {
  static constexpr std::array<std::array<int, 3>, 4> settings{
      {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  unsigned mask = 0;
  for (unsigned s = 0; s < 4; ++s) {
    const bool a = table_response(index >> 4, settings[s][0] != 0);
    const bool b = table_response((index >> 2) & 3u, settings[s][1] != 0);
    const bool c = table_response(index & 3u, settings[s][2] != 0);
    const bool product = (settings[s][0] & settings[s][1] & settings[s][2]) != 0;
    if ((a ^ b ^ c) == product) mask |= 1u << s;
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Exact binomial CDF by direct pmf recurrence (small n only).

inline double binomial_cdf_direct(std::int64_t k, std::int64_t n, double p) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  double pmf = std::pow(1.0 - p, static_cast<double>(n));
  double cdf = pmf;
  for (std::int64_t j = 0; j < k; ++j) {
    pmf *= static_cast<double>(n - j) / static_cast<double>(j + 1) * p /
           (1.0 - p);
    cdf += pmf;
  }
  return cdf;
}

// ---------------------------------------------------------------------------
// Derandomized-hash oracle: materialize the generated bit vector z from its
// definition, then take the plain dot product with the row.

inline bool sequence_bit_direct(const dirand::ComposedBitSequence& seq,
                                std::uint64_t s, std::uint64_t y,
                                std::uint64_t index) {
  const dirand::BitRow z = seq.space().bits(s, y);
  return seq.map().row(index).parity_and(z);
}

inline unsigned hash_symbol_direct(const dirand::ComposedBitSequence& seq,
                                   const dirand::HashFunctionDescriptor& h,
                                   std::uint64_t x) {
  const unsigned hi = sequence_bit_direct(seq, h.x_hi, h.y_hi, x) ? 1 : 0;
  const unsigned lo = sequence_bit_direct(seq, h.x_lo, h.y_lo, x) ? 1 : 0;
  return 2 * hi + lo;
}

// ---------------------------------------------------------------------------
// Structural covering oracle. For a fixed seed element s, the attainable
// 4-bit marginals over y form the span of the columns of the 4 x m matrix
// with rows P_i(s); the attainable set of the whole space is the union over
// s. A 4-subset is covered iff some permutation of (0,1,2,3) splits into an
// attainable high-bit pattern and an attainable low-bit pattern.

inline std::uint16_t span_insert(std::uint16_t set, unsigned v) {
  std::uint16_t out = set;
  for (unsigned p = 0; p < 16; ++p) {
    if (set & (1u << p)) out |= 1u << (p ^ v);
  }
  return out;
}

inline std::uint16_t patterns_for_seed(
    const std::array<std::uint64_t, 4>& polys, unsigned m) {
  std::uint16_t set = 1;  // the all-zero pattern
  for (unsigned j = 0; j < m; ++j) {
    unsigned col = 0;
    for (unsigned i = 0; i < 4; ++i) col |= ((polys[i] >> j) & 1u) << i;
    if (col != 0) set = span_insert(set, col);
  }
  return set;
}

// Rank of four GF(2) row vectors packed into uint64 words; rank 4 means the
// marginal map is onto, i.e. every 4-bit pattern is attainable for this s.
inline unsigned rank4(std::array<std::uint64_t, 4> v) {
  unsigned rank = 0;
  for (int i = 0; i < 4; ++i) {
    if (v[i] == 0) continue;
    ++rank;
    const int pivot = 63 - std::countl_zero(v[i]);
    for (int j = i + 1; j < 4; ++j) {
      if ((v[j] >> pivot) & 1ull) v[j] ^= v[i];
    }
  }
  return rank;
}

inline std::uint16_t achievable_patterns(
    const dirand::ComposedBitSequence& seq,
    const std::array<std::uint64_t, 4>& indices) {
  std::array<dirand::BitRow, 4> rows;
  for (int i = 0; i < 4; ++i) rows[i] = seq.map().row(indices[i]);
  const unsigned m = seq.degree();
  std::uint16_t mask = 0;
  for (std::uint64_t s = 0; s < (1ull << m); ++s) {
    const auto powers = seq.space().powers(s);
    std::array<std::uint64_t, 4> polys;
    for (int i = 0; i < 4; ++i) polys[i] = seq.row_poly(powers, rows[i]);
    mask |= patterns_for_seed(polys, m);
    if (mask == 0xFFFF) break;
  }
  return mask;
}

inline const std::vector<std::array<unsigned, 4>>& symbol_permutations() {
  static const std::vector<std::array<unsigned, 4>> perms = [] {
    std::vector<std::array<unsigned, 4>> out;
    std::array<unsigned, 4> p{0, 1, 2, 3};
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

inline bool mask_admits_cover(std::uint16_t mask) {
  for (const auto& perm : symbol_permutations()) {
    unsigned hi = 0, lo = 0;
    for (unsigned i = 0; i < 4; ++i) {
      hi |= ((perm[i] >> 1) & 1u) << i;
      lo |= (perm[i] & 1u) << i;
    }
    if ((mask >> hi & 1u) && (mask >> lo & 1u)) return true;
  }
  return false;
}

// Batch form with precomputed P_i(s) tables for the first few seed
// elements; falls back to the full scan when they do not settle coverage.
class StructuralCoverOracle {
 public:
  explicit StructuralCoverOracle(const dirand::ComposedBitSequence& seq,
                                 unsigned probes = 8)
      : seq_(seq), m_(seq.degree()) {
    const std::uint64_t inputs = 1ull << seq.n();
    std::vector<dirand::BitRow> rows;
    rows.reserve(inputs);
    for (std::uint64_t x = 0; x < inputs; ++x) {
      rows.push_back(seq.map().row(x));
    }
    const std::uint64_t count =
        std::min<std::uint64_t>(probes, 1ull << m_);
    tables_.resize(count);
    for (std::uint64_t s = 0; s < count; ++s) {
      const auto powers = seq.space().powers(s);
      tables_[s].resize(inputs);
      for (std::uint64_t x = 0; x < inputs; ++x) {
        tables_[s][x] = seq.row_poly(powers, rows[x]);
      }
    }
  }

  bool covered(const std::array<std::uint64_t, 4>& indices) const {
    for (const auto& table : tables_) {
      const std::array<std::uint64_t, 4> polys{
          table[indices[0]], table[indices[1]], table[indices[2]],
          table[indices[3]]};
      if (rank4(polys) == 4) return true;
    }
    std::uint16_t mask = 0;
    for (const auto& table : tables_) {
      const std::array<std::uint64_t, 4> polys{
          table[indices[0]], table[indices[1]], table[indices[2]],
          table[indices[3]]};
      mask |= patterns_for_seed(polys, m_);
      if (mask_admits_cover(mask)) return true;
    }
    return mask_admits_cover(achievable_patterns(seq_, indices));
  }

 private:
  const dirand::ComposedBitSequence& seq_;
  unsigned m_;
  std::vector<std::vector<std::uint64_t>> tables_;
};

// ---------------------------------------------------------------------------
// Distribution helpers.

inline dirand::OutcomeDistribution random_dist_min_entropy2(
    dirand::RngStream& rng, unsigned n) {
  const std::uint64_t limit = n >= 63 ? ~0ull : (1ull << n);
  const std::uint64_t max_support =
      std::min<std::uint64_t>(limit, 48);
  const std::uint64_t support =
      4 + rng.next_below(max_support - 3);  // 4..max_support
  std::map<std::uint64_t, double> probs;
  while (probs.size() < support) {
    const std::uint64_t outcome =
        n >= 63 ? rng.next_u64() : rng.next_below(limit);
    probs.emplace(outcome, 0.0);
  }
  double total = 0.0;
  for (auto& [outcome, p] : probs) {
    p = -std::log(1.0 - rng.next_double() + 1e-18);
    total += p;
  }
  double max_p = 0.0;
  for (auto& [outcome, p] : probs) {
    p /= total;
    max_p = std::max(max_p, p);
  }
  const double s = static_cast<double>(probs.size());
  if (max_p > 0.25 - 1e-9) {
    // mix toward uniform-on-support until the peak sits safely below 1/4
    const double lambda =
        std::min(1.0, (max_p - 0.25 + 1e-6) / (max_p - 1.0 / s));
    for (auto& [outcome, p] : probs) {
      p = (1.0 - lambda) * p + lambda / s;
    }
  }
  double sum = 0.0;
  for (auto& [outcome, p] : probs) sum += p;
  for (auto& [outcome, p] : probs) p /= sum;
  return dirand::OutcomeDistribution(n, std::move(probs));
}

inline double max_reconstruction_error(
    const dirand::OutcomeDistribution& dist,
    const std::vector<dirand::FlatComponent>& parts) {
  std::map<std::uint64_t, double> rebuilt;
  for (const auto& part : parts) {
    for (std::uint64_t outcome : part.support) {
      rebuilt[outcome] += part.weight / 4.0;
    }
  }
  double worst = 0.0;
  for (const auto& [outcome, p] : dist.probs()) {
    worst = std::max(worst, std::abs(rebuilt[outcome] - p));
    rebuilt.erase(outcome);
  }
  for (const auto& [outcome, p] : rebuilt) {
    worst = std::max(worst, std::abs(p));
  }
  return worst;
}

inline dirand::OutcomeDistribution product_dist(
    const dirand::OutcomeDistribution& a,
    const dirand::OutcomeDistribution& b) {
  std::map<std::uint64_t, double> probs;
  for (const auto& [xa, pa] : a.probs()) {
    for (const auto& [xb, pb] : b.probs()) {
      probs[(xa << b.n()) | xb] = pa * pb;
    }
  }
  return dirand::OutcomeDistribution(a.n() + b.n(), std::move(probs));
}

}  // namespace oracles
