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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "dirand/hash_family.hpp"
#include "oracles.hpp"

using namespace dirand;

namespace {

BitRow xor_rows(const BitRow& a, const BitRow& b) {
  BitRow out;
  for (int w = 0; w < 3; ++w) out.words[w] = a.words[w] ^ b.words[w];
  return out;
}

bool rows_4wise_independent(const std::array<BitRow, 4>& rows) {
  for (unsigned mask = 1; mask < 16; ++mask) {
    BitRow acc;
    for (int i = 0; i < 4; ++i) {
      if ((mask >> i) & 1u) acc = xor_rows(acc, rows[i]);
    }
    if (acc == BitRow{}) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("any four distinct rows of the linear map are independent") {
  SUBCASE("exhaustive for n <= 6") {
    for (unsigned n : {2u, 4u, 6u}) {
      const KwiseLinearMap map(n);
      const std::uint64_t count = 1ull << n;
      std::vector<BitRow> rows;
      for (std::uint64_t x = 0; x < count; ++x) rows.push_back(map.row(x));
      for (std::uint64_t a = 0; a < count; ++a)
        for (std::uint64_t b = a + 1; b < count; ++b)
          for (std::uint64_t c = b + 1; c < count; ++c)
            for (std::uint64_t d = c + 1; d < count; ++d) {
              if (!rows_4wise_independent({rows[a], rows[b], rows[c],
                                           rows[d]})) {
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(c);
                CAPTURE(d);
                FAIL("dependent 4-set of rows");
              }
            }
    }
  }
  SUBCASE("random for n = 8") {
    const KwiseLinearMap map(8);
    RngStream rng(88);
    for (int trial = 0; trial < 100000; ++trial) {
      std::array<std::uint64_t, 4> idx;
      for (;;) {
        for (auto& v : idx) v = rng.next_below(256);
        std::sort(idx.begin(), idx.end());
        if (idx[0] != idx[1] && idx[1] != idx[2] && idx[2] != idx[3]) break;
      }
      REQUIRE(rows_4wise_independent({map.row(idx[0]), map.row(idx[1]),
                                      map.row(idx[2]), map.row(idx[3])}));
    }
  }
}

TEST_CASE("small-bias space meets its parity bias bound") {
  const SmallBiasSpace space(9, 6);
  const double bound = space.bias_bound();
  CHECK(bound == doctest::Approx(8.0 / 64.0));

  // materialize all sample points once
  std::vector<BitRow> points;
  for (std::uint64_t s = 0; s < 64; ++s) {
    for (std::uint64_t y = 0; y < 64; ++y) {
      points.push_back(space.bits(s, y));
    }
  }
  // every nonempty parity over at most 4 of the 9 bits
  std::vector<std::vector<unsigned>> parities;
  for (unsigned mask = 1; mask < (1u << 9); ++mask) {
    if (std::popcount(mask) > 4) continue;
    std::vector<unsigned> t;
    for (unsigned j = 0; j < 9; ++j) {
      if ((mask >> j) & 1u) t.push_back(j);
    }
    parities.push_back(std::move(t));
  }
  for (const auto& t : parities) {
    std::int64_t balance = 0;  // count(parity 0) - count(parity 1)
    for (const BitRow& z : points) {
      bool parity = false;
      for (unsigned j : t) parity ^= z.test(j);
      balance += parity ? -1 : 1;
    }
    const double bias =
        std::abs(static_cast<double>(balance)) / points.size();
    CHECK(bias <= bound + 1e-12);
  }
}

TEST_CASE("lazy sequence evaluation matches the materialized oracle") {
  const ComposedBitSequence seq(4, 7);
  RngStream rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t s = rng.next_below(1ull << 7);
    const std::uint64_t y = rng.next_below(1ull << 7);
    const std::uint64_t x = rng.next_below(16);
    CHECK(seq.value(s, y, x) == oracles::sequence_bit_direct(seq, s, y, x));
  }
}

TEST_CASE("marginal distances") {
  SUBCASE("single-point space vs uniform") {
    std::vector<BitRow> one(1);
    one[0].set(0);
    one[0].set(2);
    const std::uint64_t idx[] = {0, 1, 2, 3};
    const auto report = marginal_distance_points(one, idx);
    CHECK(report.l1_distance == doctest::Approx(2.0 - 2.0 / 16.0));
  }
  SUBCASE("full uniform space vs uniform") {
    std::vector<BitRow> all;
    for (unsigned v = 0; v < 32; ++v) {
      BitRow r;
      for (unsigned j = 0; j < 5; ++j) {
        if ((v >> j) & 1u) r.set(j);
      }
      all.push_back(r);
    }
    const std::uint64_t idx[] = {0, 2, 4};
    CHECK(marginal_distance_points(all, idx).l1_distance ==
          doctest::Approx(0.0));
  }
  SUBCASE("composed space honours the construction target") {
    const HashFamily fam = HashFamily::build_derandomized(2, 0.1);
    const ComposedBitSequence& seq = fam.sequence();
    CHECK(seq.dependence_bound() <= 0.1 + 1e-12);
    // all subsets of up to 4 of the N = 4 variables, exhaustively
    for (unsigned mask = 1; mask < 16; ++mask) {
      std::vector<std::uint64_t> idx;
      for (unsigned j = 0; j < 4; ++j) {
        if ((mask >> j) & 1u) idx.push_back(j);
      }
      const auto report = marginal_distance(seq, idx);
      CAPTURE(mask);
      CHECK(report.l1_distance <= 0.1 + 1e-12);
      CHECK(report.l1_distance <= seq.dependence_bound() + 1e-12);
    }
  }
  SUBCASE("delta = 1/16 construction stays within 1/16 on random subsets") {
    const HashFamily fam = HashFamily::build_derandomized(3, 1.0 / 16.0);
    RngStream rng(161);
    for (int trial = 0; trial < 3; ++trial) {
      std::array<std::uint64_t, 4> idx;
      for (;;) {
        for (auto& v : idx) v = rng.next_below(8);
        std::sort(idx.begin(), idx.end());
        if (idx[0] != idx[1] && idx[1] != idx[2] && idx[2] != idx[3]) break;
      }
      CHECK(marginal_distance(fam.sequence(), idx).l1_distance <=
            1.0 / 16.0 + 1e-12);
    }
  }
  SUBCASE("more than four indices are unsupported") {
    const ComposedBitSequence seq(3, 9);
    const std::uint64_t idx[] = {0, 1, 2, 3, 4};
    CHECK_THROWS_AS((void)marginal_distance(seq, idx), Error);
  }
}

TEST_CASE("hash evaluation") {
  SUBCASE("explicit table") {
    const HashFamily fam = HashFamily::build_explicit(2, {{0, 1, 2, 3}});
    CHECK(eval_hash(fam.member(0), 2) == 2);
    CHECK_THROWS_AS(eval_hash(fam.member(0), 4), Error);
  }
  SUBCASE("zero seeds give the constant zero function") {
    HashFunctionDescriptor h;
    h.kind = HashFunctionDescriptor::Kind::derandomized;
    h.n = 3;
    h.field_degree = 10;
    h.x_hi = h.y_hi = h.x_lo = h.y_lo = 0;
    for (std::uint64_t x = 0; x < 8; ++x) CHECK(eval_hash(h, x) == 0);
  }
  SUBCASE("derandomized members match the bit-sequence oracle") {
    const HashFamily fam = HashFamily::build_derandomized(3, 1.0 / 16.0);
    const ComposedBitSequence& seq = fam.sequence();
    RngStream rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t index = rng.next_below(fam.size());
      const HashFunctionDescriptor h = fam.member(index);
      const std::uint64_t x = rng.next_below(8);
      CHECK(eval_hash(h, x) == oracles::hash_symbol_direct(seq, h, x));
    }
    // pinned one-off: a fixed member evaluated at x = 5
    const HashFunctionDescriptor h = fam.member(0x123456789abcull % fam.size());
    CHECK(eval_hash(h, 5) == oracles::hash_symbol_direct(seq, h, 5));
  }
}

TEST_CASE("derandomized family parameters") {
  CHECK_THROWS_AS(HashFamily::build_derandomized(1, 0.05), Error);
  CHECK_THROWS_AS(HashFamily::build_derandomized(8, 0.125), Error);
  CHECK_THROWS_AS(HashFamily::build_derandomized(8, 0.5), Error);
  CHECK_THROWS_AS(HashFamily::build_derandomized(8, 0.0), Error);

  const HashFamily fam = HashFamily::build_derandomized(8, 1.0 / 16.0);
  CHECK(fam.size() == 1ull << (4 * fam.field_degree()));
  // the composed bias meets the 4-wise dependence requirement
  CHECK(16.0 * fam.sequence().space().bias_bound() <= 1.0 / 16.0);

  // seed bits grow like O(log n) at fixed delta
  std::uint64_t prev_bits = 0;
  for (unsigned n : {8u, 12u, 16u}) {
    const HashFamily f = HashFamily::build_derandomized(n, 1.0 / 16.0);
    const std::uint64_t bits = 4ull * f.field_degree();
    CHECK(bits >= prev_bits);
    CHECK(static_cast<double>(bits) <=
          4.0 * (std::log2(static_cast<double>(n)) + std::log2(32.0 * 16.0)) +
              4.0);
    prev_bits = bits;
  }
}

TEST_CASE("matrix family reproduces the base-4 layout") {
  SUBCASE("two rows over a 16-string support") {
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < 16; ++i) support.push_back(100 + i);
    const HashFamily fam = HashFamily::build_matrix(8, support);
    REQUIRE(fam.size() == 2);
    const std::array<unsigned, 16> row0{0, 0, 0, 0, 1, 1, 1, 1,
                                        2, 2, 2, 2, 3, 3, 3, 3};
    const std::array<unsigned, 16> row1{0, 1, 2, 3, 0, 1, 2, 3,
                                        0, 1, 2, 3, 0, 1, 2, 3};
    for (std::uint64_t i = 0; i < 16; ++i) {
      CHECK(eval_hash(fam.member(0), support[i]) == row0[i]);
      CHECK(eval_hash(fam.member(1), support[i]) == row1[i]);
    }
    // off-support strings map to 0
    CHECK(eval_hash(fam.member(0), 5) == 0);
    CHECK(eval_hash(fam.member(1), 5) == 0);
  }
  SUBCASE("single row behaves as the support index") {
    const HashFamily fam = HashFamily::build_matrix(2, {0, 1, 2, 3});
    REQUIRE(fam.size() == 1);
    for (std::uint64_t i = 0; i < 4; ++i) {
      CHECK(eval_hash(fam.member(0), i) == i);
    }
  }
  SUBCASE("three rows are jointly uniform on the support") {
    std::vector<std::uint64_t> support;
    for (std::uint64_t i = 0; i < 64; ++i) support.push_back(i);
    const HashFamily fam = HashFamily::build_matrix(6, support);
    REQUIRE(fam.size() == 3);
    std::array<int, 64> joint{};
    std::array<std::array<int, 4>, 3> singles{};
    for (std::uint64_t i = 0; i < 64; ++i) {
      unsigned packed = 0;
      for (unsigned j = 0; j < 3; ++j) {
        const unsigned symbol = eval_hash(fam.member(j), i);
        packed = packed * 4 + symbol;
        ++singles[j][symbol];
      }
      ++joint[packed];
    }
    for (int count : joint) CHECK(count == 1);
    for (const auto& hist : singles) {
      for (int count : hist) CHECK(count == 16);
    }
  }
  SUBCASE("bad supports are rejected") {
    CHECK_THROWS_AS(HashFamily::build_matrix(4, {0, 1, 2}), Error);
    CHECK_THROWS_AS(HashFamily::build_matrix(4, {0, 1, 2, 3, 4, 5, 6, 7}),
                    Error);
    CHECK_THROWS_AS(HashFamily::build_matrix(2, {0, 1, 2, 7}), Error);
    CHECK_THROWS_AS(HashFamily::build_matrix(4, {0, 0, 2, 3}), Error);
  }
}

TEST_CASE("covering verification") {
  SUBCASE("full family covers the single 4-subset at n = 2") {
    const CoveringOptions opts;
    const auto report = verify_covering(HashFamily::build_full(2), opts);
    CHECK(report.exhaustive);
    CHECK(report.total_subsets == 1.0);
    CHECK(report.uncovered == 0);
  }
  SUBCASE("a constant function covers nothing") {
    const HashFamily constant = HashFamily::build_explicit(
        3, {std::vector<std::uint8_t>(8, 2)});
    const auto report = verify_covering(constant, CoveringOptions{});
    CHECK(report.uncovered == 70);
    CHECK(report.members_scanned == 1);
  }
  SUBCASE("derandomized family leaves nothing uncovered at n = 6") {
    const HashFamily fam = HashFamily::build_derandomized(6, 1.0 / 16.0);
    const auto report = verify_covering(fam, CoveringOptions{});
    CHECK(report.exhaustive);
    CHECK(report.uncovered == 0);
    CHECK(report.checked == 635376);

    // independent structural route must agree
    const oracles::StructuralCoverOracle oracle(fam.sequence());
    std::uint64_t uncovered = 0;
    for (std::uint64_t a = 0; a < 64; ++a)
      for (std::uint64_t b = a + 1; b < 64; ++b)
        for (std::uint64_t c = b + 1; c < 64; ++c)
          for (std::uint64_t d = c + 1; d < 64; ++d) {
            if (!oracle.covered({a, b, c, d})) ++uncovered;
          }
    CHECK(uncovered == 0);
  }
  SUBCASE("n = 2 derandomized covers its only 4-subset") {
    const HashFamily fam = HashFamily::build_derandomized(2, 0.1);
    const auto report = verify_covering(fam, CoveringOptions{});
    CHECK(report.uncovered == 0);
  }
  SUBCASE("exhaustive mode respects the subset budget") {
    const HashFamily fam = HashFamily::build_derandomized(10, 1.0 / 16.0);
    CHECK_THROWS_AS((void)verify_covering(fam, CoveringOptions{}), Error);
    CoveringOptions sampled;
    sampled.mode = CoveringMode::sampled;
    sampled.sample_trials = 20000;
    const auto report = verify_covering(fam, sampled);
    CHECK_FALSE(report.exhaustive);
    CHECK(report.uncovered == 0);
    CHECK(report.wilson_high99 > 0.0);
  }
}

TEST_CASE("single-function covered fraction") {
  SUBCASE("balanced function at n = 4, exact") {
    const HashFamily fam = HashFamily::identity(4);
    const double fraction =
        covered_fraction_single(fam.member(0), CoveringOptions{});
    CHECK(fraction == doctest::Approx(256.0 / 1820.0).epsilon(1e-12));

    // direct-scan oracle over all C(16,4) subsets
    std::uint64_t covered = 0, total = 0;
    for (std::uint64_t a = 0; a < 16; ++a)
      for (std::uint64_t b = a + 1; b < 16; ++b)
        for (std::uint64_t c = b + 1; c < 16; ++c)
          for (std::uint64_t d = c + 1; d < 16; ++d) {
            ++total;
            const unsigned mask = (1u << (a & 3)) | (1u << (b & 3)) |
                                  (1u << (c & 3)) | (1u << (d & 3));
            if (mask == 0xFu) ++covered;
          }
    CHECK(fraction ==
          doctest::Approx(static_cast<double>(covered) / total)
              .epsilon(1e-12));
  }
  SUBCASE("constant function covers nothing") {
    const HashFamily constant = HashFamily::build_explicit(
        3, {std::vector<std::uint8_t>(8, 1)});
    CHECK(covered_fraction_single(constant.member(0), CoveringOptions{}) ==
          0.0);
  }
  SUBCASE("sampled estimate tracks the exact value at n = 8") {
    const HashFamily fam = HashFamily::identity(8);
    // C(256,4) exceeds the default budget; raising it is the caller's call
    CHECK_THROWS_AS(
        (void)covered_fraction_single(fam.member(0), CoveringOptions{}),
        Error);
    CoveringOptions wide;
    wide.subset_budget = 200'000'000;
    const double exact = covered_fraction_single(fam.member(0), wide);
    CoveringOptions sampled;
    sampled.mode = CoveringMode::sampled;
    sampled.sample_trials = 100000;
    const double estimate = covered_fraction_single(fam.member(0), sampled);
    const double sigma = std::sqrt(exact * (1 - exact) / 100000);
    CHECK(std::abs(estimate - exact) <= 5 * sigma);
  }
}

TEST_CASE("structural oracle agrees with full seed enumeration") {
  // tiny parameters where the whole seed space can be enumerated per subset
  const ComposedBitSequence seq(3, 5);
  for (const std::array<std::uint64_t, 4> idx :
       {std::array<std::uint64_t, 4>{0, 1, 2, 3},
        std::array<std::uint64_t, 4>{0, 3, 5, 6},
        std::array<std::uint64_t, 4>{1, 2, 4, 7}}) {
    std::uint16_t enumerated = 0;
    for (std::uint64_t s = 0; s < 32; ++s) {
      for (std::uint64_t y = 0; y < 32; ++y) {
        unsigned pattern = 0;
        for (int i = 0; i < 4; ++i) {
          if (oracles::sequence_bit_direct(seq, s, y, idx[i])) {
            pattern |= 1u << i;
          }
        }
        enumerated |= 1u << pattern;
      }
    }
    CHECK(enumerated == oracles::achievable_patterns(seq, idx));
  }
}

TEST_CASE("every 4-tuple realizes every target at n = 6") {
  // strictly stronger than covering: the achievable-pattern mask is full on
  // every 4-subset, so any target string in {0,1,2,3}^4 has a witness
  const HashFamily fam = HashFamily::build_derandomized(6, 1.0 / 16.0);
  const ComposedBitSequence& seq = fam.sequence();
  const unsigned m = fam.field_degree();

  std::vector<std::vector<std::uint64_t>> tables;
  std::vector<BitRow> rows;
  for (std::uint64_t x = 0; x < 64; ++x) rows.push_back(seq.map().row(x));
  for (std::uint64_t s = 2; s < 10; ++s) {
    const auto powers = seq.space().powers(s);
    std::vector<std::uint64_t> table(64);
    for (std::uint64_t x = 0; x < 64; ++x) {
      table[x] = seq.row_poly(powers, rows[x]);
    }
    tables.push_back(std::move(table));
  }

  std::uint64_t incomplete = 0;
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = a + 1; b < 64; ++b)
      for (std::uint64_t c = b + 1; c < 64; ++c)
        for (std::uint64_t d = c + 1; d < 64; ++d) {
          bool full = false;
          for (const auto& table : tables) {
            if (oracles::rank4({table[a], table[b], table[c], table[d]}) ==
                4) {
              full = true;
              break;
            }
          }
          if (!full) {
            full = oracles::achievable_patterns(seq, {a, b, c, d}) == 0xFFFF;
          }
          if (!full) ++incomplete;
        }
  CHECK(incomplete == 0);
  (void)m;
}

TEST_CASE("witness search realizes arbitrary targets at n = 2") {
  const HashFamily fam = HashFamily::build_derandomized(2, 0.1);
  RngStream rng(77);
  for (unsigned target = 0; target < 256; ++target) {
    const std::array<unsigned, 4> want{target & 3u, (target >> 2) & 3u,
                                       (target >> 4) & 3u,
                                       (target >> 6) & 3u};
    bool found = false;
    for (int probe = 0; probe < 20000 && !found; ++probe) {
      const HashFunctionDescriptor h = fam.member(rng.next_below(fam.size()));
      found = eval_hash(h, 0) == want[0] && eval_hash(h, 1) == want[1] &&
              eval_hash(h, 2) == want[2] && eval_hash(h, 3) == want[3];
    }
    CAPTURE(target);
    CHECK(found);
  }
}
