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
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "dirand/errors.hpp"
#include "dirand/gf2.hpp"
#include "dirand/rng.hpp"

namespace dirand {

// Packed bit vector wide enough for the 1 + 2n row layout at n <= 64.
struct BitRow {
  std::array<std::uint64_t, 3> words{};

  void set(unsigned j) { words[j >> 6] |= 1ull << (j & 63); }
  bool test(unsigned j) const {
    return (words[j >> 6] >> (j & 63)) & 1ull;
  }
  bool parity_and(const BitRow& other) const {
    return gf2::parity64(words[0] & other.words[0]) ^
           gf2::parity64(words[1] & other.words[1]) ^
           gf2::parity64(words[2] & other.words[2]);
  }
  bool operator==(const BitRow&) const = default;
};

// Linear map whose rows r(x) = (1 | x | x^3) over GF(2^n) have the BCH
// dual-code property: any four distinct rows are linearly independent, so
// composing with a small-bias vector yields 4-wise almost-independent bits.
class KwiseLinearMap {
 public:
  explicit KwiseLinearMap(unsigned n);

  unsigned n() const { return n_; }
  unsigned row_bits() const { return 1 + 2 * n_; }
  BitRow row(std::uint64_t x) const;

 private:
  unsigned n_;
  gf2::Field field_;
};

// Small-bias sample space by field powering: a sample point is a pair
// (s, y) of GF(2^m) elements and bit j is <s^j, y>. Every nonempty parity
// of the ell generated bits has |P(0) - P(1)| <= (ell - 1) / 2^m.
class SmallBiasSpace {
 public:
  SmallBiasSpace(unsigned ell, unsigned degree);

  // Smallest field degree meeting a target parity bias.
  static unsigned min_degree(unsigned ell, double bias);

  unsigned ell() const { return ell_; }
  unsigned degree() const { return m_; }
  const gf2::Field& field() const { return field_; }
  double bias_bound() const;
  std::uint64_t seed_count() const { return 1ull << (2 * m_); }

  bool bit(std::uint64_t s, std::uint64_t y, unsigned j) const;
  BitRow bits(std::uint64_t s, std::uint64_t y) const;
  // s^0 .. s^(ell-1), the per-seed table used by batch evaluations.
  std::vector<std::uint64_t> powers(std::uint64_t s) const;

 private:
  unsigned ell_;
  unsigned m_;
  gf2::Field field_;
};

// One sequence of N = 2^n bits X_i = <row(i), z> with z drawn from the
// small-bias space. Every marginal on at most four indices is within L1
// distance 16 * bias_bound of uniform, and each X_i evaluates lazily from
// the seed in time polynomial in n.
class ComposedBitSequence {
 public:
  ComposedBitSequence(unsigned n, unsigned degree);

  unsigned n() const { return map_.n(); }
  unsigned degree() const { return space_.degree(); }
  const KwiseLinearMap& map() const { return map_; }
  const SmallBiasSpace& space() const { return space_; }
  double dependence_bound() const { return 16.0 * space_.bias_bound(); }

  // P_i(s) = sum of s^j over the set bits j of row(i).
  std::uint64_t row_poly(std::uint64_t s, std::uint64_t index) const;
  std::uint64_t row_poly(std::span<const std::uint64_t> powers,
                         const BitRow& row) const;
  bool value(std::uint64_t s, std::uint64_t y, std::uint64_t index) const;

 private:
  KwiseLinearMap map_;
  SmallBiasSpace space_;
};

// Succinct representation of one hash function h: {0..N-1} -> {0,1,2,3}.
struct HashFunctionDescriptor {
  enum class Kind { derandomized, matrix, explicit_table };

  Kind kind = Kind::explicit_table;
  unsigned n = 0;

  // derandomized: symbol(x) = 2 X_x + Y_x from two independent seed pairs
  unsigned field_degree = 0;
  std::uint64_t x_hi = 0, y_hi = 0;
  std::uint64_t x_lo = 0, y_lo = 0;

  // matrix: symbol(s_i) = digit row_index of i in base 4; 0 off support
  unsigned row_index = 0;
  unsigned digit_count = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> support;
  std::shared_ptr<const std::unordered_map<std::uint64_t, std::uint64_t>>
      support_rank;

  // explicit table of N symbols
  std::shared_ptr<const std::vector<std::uint8_t>> table;
};

unsigned eval_hash(const HashFunctionDescriptor& h, std::uint64_t x);

// A family of hash functions sharing one input length. Derandomized and
// full families are represented implicitly (members materialize on demand
// from their index), which keeps polynomially large families practical.
class HashFamily {
 public:
  enum class Kind { derandomized, matrix, explicit_table, full };

  // An empty family; must be replaced by a built one before use.
  HashFamily() = default;

  Kind kind() const { return kind_; }
  unsigned n() const { return n_; }
  std::uint64_t size() const { return size_; }
  HashFunctionDescriptor member(std::uint64_t index) const;

  // derandomized accessors
  unsigned field_degree() const;
  double delta() const;
  const ComposedBitSequence& sequence() const;

  // matrix accessors
  const std::vector<std::uint64_t>& matrix_support() const;
  unsigned digit_count() const;

  // explicit accessors
  const std::vector<std::vector<std::uint8_t>>& tables() const;

  // Polylog-size covering family: one member per pair of independent
  // small-bias seed pairs. Requires n >= 2 and 0 < delta < 1/8.
  static HashFamily build_derandomized(unsigned n, double delta);

  // One-shot family over an ordered flat support of size 4^D: member j maps
  // the i-th support string to the j-th base-4 digit of i (most significant
  // first) and everything off the support to 0.
  static HashFamily build_matrix(unsigned n,
                                 std::vector<std::uint64_t> support);

  static HashFamily build_explicit(
      unsigned n, std::vector<std::vector<std::uint8_t>> tables);

  // All 4^(2^n) functions, implicit; practical only for n <= 4.
  static HashFamily build_full(unsigned n);

  // Single member h(x) = x mod 4.
  static HashFamily identity(unsigned n);

 private:
  Kind kind_ = Kind::explicit_table;
  unsigned n_ = 0;
  std::uint64_t size_ = 0;
  unsigned field_degree_ = 0;
  double delta_ = 0.0;
  std::shared_ptr<const ComposedBitSequence> sequence_;
  unsigned digit_count_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> support_;
  std::shared_ptr<const std::unordered_map<std::uint64_t, std::uint64_t>>
      support_rank_;
  std::shared_ptr<const std::vector<std::vector<std::uint8_t>>> tables_;
};

enum class CoveringMode { exhaustive, sampled };

struct CoveringOptions {
  CoveringMode mode = CoveringMode::exhaustive;
  std::uint64_t sample_trials = 100'000;
  // exhaustive mode is allowed only when C(2^n, 4) fits the budget
  std::uint64_t subset_budget = 100'000'000;
  // hard cap on members evaluated before giving up with a budget error
  std::uint64_t member_scan_cap = 200'000;
  std::uint64_t seed = 0x5EED5EEDull;
};

struct CoveringReport {
  bool exhaustive;
  double total_subsets;        // C(2^n, 4)
  std::uint64_t checked;       // subsets decided (all of them, or the sample)
  std::uint64_t uncovered;     // among checked
  double uncovered_fraction;   // uncovered / checked
  double wilson_low99 = 0.0;   // CI for the uncovered fraction (sampled mode)
  double wilson_high99 = 0.0;
  std::uint64_t members_scanned;
};

// Decides coverage by evaluating members and marking the 4-subsets they
// map onto {0,1,2,3}. Exhaustive mode is exact: it ends either with every
// subset witnessed covered or with the member list exhausted. Implicit
// families are scanned in a seeded pseudo-random member order.
CoveringReport verify_covering(const HashFamily& family,
                               const CoveringOptions& opts);

// Fraction of 4-subsets a single function maps onto {0,1,2,3}.
double covered_fraction_single(const HashFunctionDescriptor& h,
                               const CoveringOptions& opts);

struct DependenceReport {
  std::vector<std::uint64_t> subset;
  double l1_distance;
};

// Exact L1 distance between the marginal of the composed sequence on the
// given indices (at most four) and the uniform distribution, by
// enumerating every sample point of the seed space.
DependenceReport marginal_distance(const ComposedBitSequence& seq,
                                   std::span<const std::uint64_t> indices);

// Same computation over an explicit list of equiprobable sample points.
DependenceReport marginal_distance_points(
    std::span<const BitRow> points, std::span<const std::uint64_t> indices);

}  // namespace dirand
