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

#include "dirand/hash_family.hpp"

#include <algorithm>
#include <cmath>

#include "dirand/bounds.hpp"

namespace dirand {

namespace {

constexpr unsigned kMaxSeedDegree = 15;  // 4m seed bits must index a uint64

std::uint64_t input_count(unsigned n) {
  require(n <= 63, ErrorCode::unsupported, "input space too large");
  return 1ull << n;
}

double choose4(double n) {
  if (n < 4) return 0.0;
  return n * (n - 1) * (n - 2) * (n - 3) / 24.0;
}

bool is_power_of_four(std::uint64_t v) {
  return v != 0 && (v & (v - 1)) == 0 && (std::countr_zero(v) % 2) == 0;
}

}  // namespace

KwiseLinearMap::KwiseLinearMap(unsigned n) : n_(n), field_(n) {
  require(n >= 1 && n <= 64, ErrorCode::unsupported,
          "row map supports 1 <= n <= 64");
}

BitRow KwiseLinearMap::row(std::uint64_t x) const {
  require(n_ >= 64 || x < (1ull << n_), ErrorCode::invalid_input,
          "index exceeds 2^n - 1");
  BitRow r;
  r.set(0);
  const std::uint64_t cube = field_.mul(field_.mul(x, x), x);
  for (unsigned b = 0; b < n_; ++b) {
    if ((x >> b) & 1) r.set(1 + b);
    if ((cube >> b) & 1) r.set(1 + n_ + b);
  }
  return r;
}

SmallBiasSpace::SmallBiasSpace(unsigned ell, unsigned degree)
    : ell_(ell), m_(degree), field_(degree) {
  require(ell >= 1, ErrorCode::invalid_input, "need at least one bit");
  require(degree >= 1 && degree <= kMaxSeedDegree, ErrorCode::unsupported,
          "seed field degree out of supported range");
}

unsigned SmallBiasSpace::min_degree(unsigned ell, double bias) {
  require(bias > 0.0, ErrorCode::invalid_input, "bias must be positive");
  for (unsigned m = 1; m <= kMaxSeedDegree; ++m) {
    if (static_cast<double>(ell - 1) / std::ldexp(1.0, m) <= bias) return m;
  }
  fail(ErrorCode::unsupported,
       "bias target needs a seed space larger than supported");
}

double SmallBiasSpace::bias_bound() const {
  return static_cast<double>(ell_ - 1) / std::ldexp(1.0, m_);
}

bool SmallBiasSpace::bit(std::uint64_t s, std::uint64_t y, unsigned j) const {
  require(j < ell_, ErrorCode::invalid_input, "bit index out of range");
  return gf2::dot(field_.pow(s, j), y);
}

BitRow SmallBiasSpace::bits(std::uint64_t s, std::uint64_t y) const {
  BitRow out;
  std::uint64_t p = 1;  // s^0
  for (unsigned j = 0; j < ell_; ++j) {
    if (gf2::dot(p, y)) out.set(j);
    p = field_.mul(p, s);
  }
  return out;
}

std::vector<std::uint64_t> SmallBiasSpace::powers(std::uint64_t s) const {
  std::vector<std::uint64_t> p(ell_);
  p[0] = 1;
  for (unsigned j = 1; j < ell_; ++j) p[j] = field_.mul(p[j - 1], s);
  return p;
}

ComposedBitSequence::ComposedBitSequence(unsigned n, unsigned degree)
    : map_(n), space_(1 + 2 * n, degree) {}

std::uint64_t ComposedBitSequence::row_poly(std::uint64_t s,
                                            std::uint64_t index) const {
  return row_poly(space_.powers(s), map_.row(index));
}

std::uint64_t ComposedBitSequence::row_poly(
    std::span<const std::uint64_t> powers, const BitRow& row) const {
  std::uint64_t acc = 0;
  const unsigned bits = map_.row_bits();
  for (unsigned j = 0; j < bits; ++j) {
    if (row.test(j)) acc ^= powers[j];
  }
  return acc;
}

bool ComposedBitSequence::value(std::uint64_t s, std::uint64_t y,
                                std::uint64_t index) const {
  return gf2::dot(row_poly(s, index), y);
}

unsigned eval_hash(const HashFunctionDescriptor& h, std::uint64_t x) {
  require(h.n >= 64 || x < (1ull << h.n), ErrorCode::invalid_input,
          "hash input exceeds 2^n - 1");
  switch (h.kind) {
    case HashFunctionDescriptor::Kind::explicit_table:
      return (*h.table)[x];
    case HashFunctionDescriptor::Kind::matrix: {
      const auto it = h.support_rank->find(x);
      if (it == h.support_rank->end()) return 0;
      const unsigned shift = 2 * (h.digit_count - 1 - h.row_index);
      return (it->second >> shift) & 3u;
    }
    case HashFunctionDescriptor::Kind::derandomized: {
      const ComposedBitSequence seq(h.n, h.field_degree);
      const unsigned hi = seq.value(h.x_hi, h.y_hi, x) ? 1 : 0;
      const unsigned lo = seq.value(h.x_lo, h.y_lo, x) ? 1 : 0;
      return 2 * hi + lo;
    }
  }
  fail(ErrorCode::invalid_input, "unknown descriptor kind");
}

HashFunctionDescriptor HashFamily::member(std::uint64_t index) const {
  require(index < size_, ErrorCode::invalid_input,
          "member index out of range");
  HashFunctionDescriptor h;
  h.n = n_;
  switch (kind_) {
    case Kind::derandomized: {
      h.kind = HashFunctionDescriptor::Kind::derandomized;
      h.field_degree = field_degree_;
      const std::uint64_t mask = (1ull << field_degree_) - 1;
      h.y_lo = index & mask;
      h.x_lo = (index >> field_degree_) & mask;
      h.y_hi = (index >> (2 * field_degree_)) & mask;
      h.x_hi = (index >> (3 * field_degree_)) & mask;
      return h;
    }
    case Kind::matrix:
      h.kind = HashFunctionDescriptor::Kind::matrix;
      h.row_index = static_cast<unsigned>(index);
      h.digit_count = digit_count_;
      h.support = support_;
      h.support_rank = support_rank_;
      return h;
    case Kind::explicit_table:
      h.kind = HashFunctionDescriptor::Kind::explicit_table;
      h.table = std::shared_ptr<const std::vector<std::uint8_t>>(
          tables_, &(*tables_)[index]);
      return h;
    case Kind::full: {
      h.kind = HashFunctionDescriptor::Kind::explicit_table;
      const std::uint64_t count = input_count(n_);
      auto table = std::make_shared<std::vector<std::uint8_t>>(count);
      for (std::uint64_t x = 0; x < count; ++x) {
        (*table)[x] = static_cast<std::uint8_t>((index >> (2 * x)) & 3u);
      }
      h.table = std::move(table);
      return h;
    }
  }
  fail(ErrorCode::invalid_input, "unknown family kind");
}

unsigned HashFamily::field_degree() const {
  require(kind_ == Kind::derandomized, ErrorCode::invalid_input,
          "not a derandomized family");
  return field_degree_;
}

double HashFamily::delta() const {
  require(kind_ == Kind::derandomized, ErrorCode::invalid_input,
          "not a derandomized family");
  return delta_;
}

const ComposedBitSequence& HashFamily::sequence() const {
  require(kind_ == Kind::derandomized, ErrorCode::invalid_input,
          "not a derandomized family");
  return *sequence_;
}

const std::vector<std::uint64_t>& HashFamily::matrix_support() const {
  require(kind_ == Kind::matrix, ErrorCode::invalid_input,
          "not a matrix family");
  return *support_;
}

unsigned HashFamily::digit_count() const {
  require(kind_ == Kind::matrix, ErrorCode::invalid_input,
          "not a matrix family");
  return digit_count_;
}

const std::vector<std::vector<std::uint8_t>>& HashFamily::tables() const {
  require(kind_ == Kind::explicit_table, ErrorCode::invalid_input,
          "not an explicit family");
  return *tables_;
}

HashFamily HashFamily::build_derandomized(unsigned n, double delta) {
  require(n >= 2 && n <= 64, ErrorCode::invalid_input,
          "derandomized family needs 2 <= n <= 64");
  require(delta > 0.0 && delta < 0.125, ErrorCode::invalid_input,
          "dependence parameter must satisfy 0 < delta < 1/8 for the "
          "covering guarantee");
  const unsigned ell = 1 + 2 * n;
  // L1 distance of a 4-bit marginal is at most 2^4 times the worst parity
  // bias, so a seed bias of delta/16 delivers 4-wise delta-dependence.
  const unsigned m = SmallBiasSpace::min_degree(ell, delta / 16.0);
  HashFamily fam;
  fam.kind_ = Kind::derandomized;
  fam.n_ = n;
  fam.field_degree_ = m;
  fam.delta_ = delta;
  fam.size_ = 1ull << (4 * m);
  fam.sequence_ = std::make_shared<const ComposedBitSequence>(n, m);
  return fam;
}

HashFamily HashFamily::build_matrix(unsigned n,
                                    std::vector<std::uint64_t> support) {
  require(is_power_of_four(support.size()) && support.size() >= 4,
          ErrorCode::invalid_input,
          "matrix family needs a support of size 4^(Rn/2) with Rn >= 2");
  const auto digits =
      static_cast<unsigned>(std::countr_zero(support.size()) / 2);
  auto rank = std::make_shared<std::unordered_map<std::uint64_t,
                                                  std::uint64_t>>();
  for (std::uint64_t i = 0; i < support.size(); ++i) {
    require(n >= 64 || support[i] < (1ull << n), ErrorCode::invalid_input,
            "support string exceeds 2^n - 1");
    const bool inserted = rank->emplace(support[i], i).second;
    require(inserted, ErrorCode::invalid_input, "duplicate support string");
  }
  HashFamily fam;
  fam.kind_ = Kind::matrix;
  fam.n_ = n;
  fam.size_ = digits;
  fam.digit_count_ = digits;
  fam.support_ =
      std::make_shared<const std::vector<std::uint64_t>>(std::move(support));
  fam.support_rank_ = std::move(rank);
  return fam;
}

HashFamily HashFamily::build_explicit(
    unsigned n, std::vector<std::vector<std::uint8_t>> tables) {
  require(n <= 24, ErrorCode::unsupported,
          "explicit tables are limited to n <= 24");
  const std::uint64_t count = input_count(n);
  require(!tables.empty(), ErrorCode::invalid_input, "no member tables");
  for (const auto& t : tables) {
    require(t.size() == count, ErrorCode::invalid_input,
            "table size must equal 2^n");
    for (std::uint8_t v : t) {
      require(v < 4, ErrorCode::invalid_input, "symbol outside {0,1,2,3}");
    }
  }
  HashFamily fam;
  fam.kind_ = Kind::explicit_table;
  fam.n_ = n;
  fam.size_ = tables.size();
  fam.tables_ = std::make_shared<const std::vector<std::vector<std::uint8_t>>>(
      std::move(tables));
  return fam;
}

HashFamily HashFamily::build_full(unsigned n) {
  require(n >= 1 && n <= 4, ErrorCode::unsupported,
          "full family is only indexable for n <= 4");
  HashFamily fam;
  fam.kind_ = Kind::full;
  fam.n_ = n;
  fam.size_ = 1ull << (2 * input_count(n));
  return fam;
}

HashFamily HashFamily::identity(unsigned n) {
  const std::uint64_t count = input_count(n);
  std::vector<std::uint8_t> table(count);
  for (std::uint64_t x = 0; x < count; ++x) {
    table[x] = static_cast<std::uint8_t>(x & 3u);
  }
  return build_explicit(n, {std::move(table)});
}

namespace {

// Evaluates one member on every input; fast path for derandomized members
// reuses per-seed power tables and precomputed rows.
class MemberEvaluator {
 public:
  MemberEvaluator(const HashFamily& family, std::uint64_t inputs)
      : family_(family), inputs_(inputs) {
    if (family.kind() == HashFamily::Kind::derandomized) {
      rows_.reserve(inputs);
      for (std::uint64_t x = 0; x < inputs; ++x) {
        rows_.push_back(family.sequence().map().row(x));
      }
    }
  }

  void symbols(std::uint64_t member_index, std::vector<std::uint8_t>& out) {
    out.resize(inputs_);
    if (family_.kind() == HashFamily::Kind::derandomized) {
      const auto& seq = family_.sequence();
      const HashFunctionDescriptor h = family_.member(member_index);
      const auto pow_hi = seq.space().powers(h.x_hi);
      const auto pow_lo = seq.space().powers(h.x_lo);
      for (std::uint64_t x = 0; x < inputs_; ++x) {
        const unsigned hi =
            gf2::dot(seq.row_poly(pow_hi, rows_[x]), h.y_hi) ? 1 : 0;
        const unsigned lo =
            gf2::dot(seq.row_poly(pow_lo, rows_[x]), h.y_lo) ? 1 : 0;
        out[x] = static_cast<std::uint8_t>(2 * hi + lo);
      }
      return;
    }
    const HashFunctionDescriptor h = family_.member(member_index);
    for (std::uint64_t x = 0; x < inputs_; ++x) {
      out[x] = static_cast<std::uint8_t>(eval_hash(h, x));
    }
  }

 private:
  const HashFamily& family_;
  std::uint64_t inputs_;
  std::vector<BitRow> rows_;
};

// Per-member symbol evaluation at arbitrary inputs; caches the member's
// seed power tables so repeated queries cost a couple of field
// multiplications instead of a full descriptor evaluation.
class LazyMemberEval {
 public:
  explicit LazyMemberEval(const HashFamily& family) : family_(family) {}

  void load(std::uint64_t member_index) {
    descriptor_ = family_.member(member_index);
    if (family_.kind() == HashFamily::Kind::derandomized) {
      const auto& space = family_.sequence().space();
      pow_hi_ = space.powers(descriptor_.x_hi);
      pow_lo_ = space.powers(descriptor_.x_lo);
    }
  }

  unsigned symbol(std::uint64_t x) const {
    if (family_.kind() != HashFamily::Kind::derandomized) {
      return eval_hash(descriptor_, x);
    }
    const auto& seq = family_.sequence();
    const BitRow row = seq.map().row(x);
    const unsigned hi =
        gf2::dot(seq.row_poly(pow_hi_, row), descriptor_.y_hi) ? 1 : 0;
    const unsigned lo =
        gf2::dot(seq.row_poly(pow_lo_, row), descriptor_.y_lo) ? 1 : 0;
    return 2 * hi + lo;
  }

 private:
  const HashFamily& family_;
  HashFunctionDescriptor descriptor_;
  std::vector<std::uint64_t> pow_hi_, pow_lo_;
};

struct SubsetRanker {
  std::vector<std::uint64_t> c2, c3, c4;

  explicit SubsetRanker(std::uint64_t n) {
    c2.resize(n);
    c3.resize(n);
    c4.resize(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      c2[v] = v * (v - 1) / 2;
      c3[v] = v >= 2 ? v * (v - 1) * (v - 2) / 6 : 0;
      c4[v] = v >= 3 ? v * (v - 1) * (v - 2) * (v - 3) / 24 : 0;
    }
  }

  // colex rank of {a < b < c < d}
  std::uint64_t rank(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                     std::uint64_t d) const {
    return a + c2[b] + c3[c] + c4[d];
  }
};

void sort4(std::uint64_t& a, std::uint64_t& b, std::uint64_t& c,
           std::uint64_t& d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) std::swap(a, c);
  if (b > d) std::swap(b, d);
  if (b > c) std::swap(b, c);
}

CoveringReport exhaustive_covering(const HashFamily& family,
                                   const CoveringOptions& opts) {
  const std::uint64_t inputs = input_count(family.n());
  const double total_d = choose4(static_cast<double>(inputs));
  require(total_d <= static_cast<double>(opts.subset_budget),
          ErrorCode::budget_exceeded,
          "exhaustive covering check exceeds the subset budget");
  const auto total = static_cast<std::uint64_t>(total_d);

  std::vector<std::uint64_t> marked((total + 63) / 64, 0);
  std::uint64_t covered = 0;
  const SubsetRanker ranker(inputs);
  MemberEvaluator evaluator(family, inputs);
  const bool sequential = family.size() <= opts.member_scan_cap;
  RngStream order(opts.seed);

  std::vector<std::uint8_t> symbols;
  std::array<std::vector<std::uint64_t>, 4> classes;
  std::uint64_t scanned = 0;
  while (covered < total) {
    if (sequential && scanned == family.size()) break;
    require(scanned < opts.member_scan_cap, ErrorCode::budget_exceeded,
            "covering scan exceeded the member budget before deciding");
    const std::uint64_t index =
        sequential ? scanned : order.next_below(family.size());
    evaluator.symbols(index, symbols);
    ++scanned;

    for (auto& cls : classes) cls.clear();
    for (std::uint64_t x = 0; x < inputs; ++x) {
      classes[symbols[x]].push_back(x);
    }
    if (classes[0].empty() || classes[1].empty() || classes[2].empty() ||
        classes[3].empty()) {
      continue;
    }
    for (std::uint64_t i : classes[0]) {
      for (std::uint64_t j : classes[1]) {
        for (std::uint64_t k : classes[2]) {
          for (std::uint64_t l : classes[3]) {
            std::uint64_t a = i, b = j, c = k, d = l;
            sort4(a, b, c, d);
            const std::uint64_t r = ranker.rank(a, b, c, d);
            const std::uint64_t bit = 1ull << (r & 63);
            if (!(marked[r >> 6] & bit)) {
              marked[r >> 6] |= bit;
              ++covered;
            }
          }
        }
      }
    }
  }

  CoveringReport report;
  report.exhaustive = true;
  report.total_subsets = total_d;
  report.checked = total;
  report.uncovered = total - covered;
  report.uncovered_fraction =
      total == 0 ? 0.0 : static_cast<double>(report.uncovered) / total_d;
  report.members_scanned = scanned;
  return report;
}

CoveringReport sampled_covering(const HashFamily& family,
                                const CoveringOptions& opts) {
  require(opts.sample_trials > 0, ErrorCode::invalid_input,
          "sampled mode needs at least one trial");
  const unsigned n = family.n();
  require(n >= 2, ErrorCode::invalid_input, "need at least four inputs");
  RngStream rng(opts.seed);
  const auto draw_index = [&]() -> std::uint64_t {
    return n >= 64 ? rng.next_u64() : rng.next_below(1ull << n);
  };

  std::vector<std::array<std::uint64_t, 4>> remaining;
  remaining.reserve(opts.sample_trials);
  for (std::uint64_t t = 0; t < opts.sample_trials; ++t) {
    std::array<std::uint64_t, 4> s;
    for (;;) {
      for (auto& v : s) v = draw_index();
      std::sort(s.begin(), s.end());
      if (s[0] != s[1] && s[1] != s[2] && s[2] != s[3]) break;
    }
    remaining.push_back(s);
  }

  const bool sequential = family.size() <= opts.member_scan_cap;
  RngStream order(opts.seed ^ 0x9E3779B97F4A7C15ull);
  LazyMemberEval member(family);
  std::uint64_t scanned = 0;
  while (!remaining.empty()) {
    if (sequential && scanned == family.size()) break;
    require(scanned < opts.member_scan_cap, ErrorCode::budget_exceeded,
            "covering scan exceeded the member budget before deciding");
    member.load(sequential ? scanned : order.next_below(family.size()));
    ++scanned;
    std::erase_if(remaining, [&](const std::array<std::uint64_t, 4>& s) {
      unsigned mask = 0;
      for (std::uint64_t v : s) mask |= 1u << member.symbol(v);
      return mask == 0xFu;
    });
  }

  CoveringReport report;
  report.exhaustive = false;
  report.total_subsets = choose4(std::ldexp(1.0, static_cast<int>(n)));
  report.checked = opts.sample_trials;
  report.uncovered = remaining.size();
  report.uncovered_fraction =
      static_cast<double>(report.uncovered) / opts.sample_trials;
  const auto [lo, hi] =
      wilson_interval(report.uncovered, opts.sample_trials, 2.5758293035489);
  report.wilson_low99 = lo;
  report.wilson_high99 = hi;
  report.members_scanned = scanned;
  return report;
}

}  // namespace

CoveringReport verify_covering(const HashFamily& family,
                               const CoveringOptions& opts) {
  if (opts.mode == CoveringMode::exhaustive) {
    return exhaustive_covering(family, opts);
  }
  return sampled_covering(family, opts);
}

double covered_fraction_single(const HashFunctionDescriptor& h,
                               const CoveringOptions& opts) {
  require(h.n >= 2, ErrorCode::invalid_input,
          "need at least four inputs to form 4-subsets");
  if (opts.mode == CoveringMode::exhaustive) {
    const std::uint64_t inputs = input_count(h.n);
    const double total = choose4(static_cast<double>(inputs));
    require(total <= static_cast<double>(opts.subset_budget),
            ErrorCode::budget_exceeded,
            "exhaustive fraction exceeds the subset budget");
    std::array<double, 4> counts{};
    for (std::uint64_t x = 0; x < inputs; ++x) ++counts[eval_hash(h, x)];
    // a subset is covered exactly when it picks one input per symbol class
    return counts[0] * counts[1] * counts[2] * counts[3] / total;
  }
  require(opts.sample_trials > 0, ErrorCode::invalid_input,
          "sampled mode needs at least one trial");
  RngStream rng(opts.seed);
  const unsigned n = h.n;
  const auto draw_index = [&]() -> std::uint64_t {
    return n >= 64 ? rng.next_u64() : rng.next_below(1ull << n);
  };
  std::uint64_t covered = 0;
  for (std::uint64_t t = 0; t < opts.sample_trials; ++t) {
    std::array<std::uint64_t, 4> s;
    for (;;) {
      for (auto& v : s) v = draw_index();
      std::sort(s.begin(), s.end());
      if (s[0] != s[1] && s[1] != s[2] && s[2] != s[3]) break;
    }
    unsigned mask = 0;
    for (std::uint64_t v : s) mask |= 1u << eval_hash(h, v);
    if (mask == 0xFu) ++covered;
  }
  return static_cast<double>(covered) / opts.sample_trials;
}

DependenceReport marginal_distance(const ComposedBitSequence& seq,
                                   std::span<const std::uint64_t> indices) {
  require(indices.size() >= 1 && indices.size() <= 4, ErrorCode::unsupported,
          "marginals are tracked for at most four indices");
  const unsigned m = seq.degree();
  require(m <= 13, ErrorCode::budget_exceeded,
          "seed space too large to enumerate exhaustively");
  std::vector<BitRow> rows;
  for (std::uint64_t idx : indices) rows.push_back(seq.map().row(idx));

  const std::uint64_t side = 1ull << m;
  std::vector<std::uint64_t> hist(1ull << indices.size(), 0);
  for (std::uint64_t s = 0; s < side; ++s) {
    const auto powers = seq.space().powers(s);
    std::array<std::uint64_t, 4> polys{};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      polys[i] = seq.row_poly(powers, rows[i]);
    }
    for (std::uint64_t y = 0; y < side; ++y) {
      unsigned pattern = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (gf2::dot(polys[i], y)) pattern |= 1u << i;
      }
      ++hist[pattern];
    }
  }

  const double points = std::ldexp(1.0, 2 * static_cast<int>(m));
  const double uniform = 1.0 / static_cast<double>(hist.size());
  double l1 = 0.0;
  for (std::uint64_t count : hist) {
    l1 += std::abs(static_cast<double>(count) / points - uniform);
  }
  return {std::vector<std::uint64_t>(indices.begin(), indices.end()), l1};
}

DependenceReport marginal_distance_points(
    std::span<const BitRow> points, std::span<const std::uint64_t> indices) {
  require(indices.size() >= 1 && indices.size() <= 4, ErrorCode::unsupported,
          "marginals are tracked for at most four indices");
  require(!points.empty(), ErrorCode::invalid_input, "empty sample space");
  std::vector<std::uint64_t> hist(1ull << indices.size(), 0);
  for (const BitRow& point : points) {
    unsigned pattern = 0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      require(indices[i] < 192, ErrorCode::invalid_input,
              "bit index out of range");
      if (point.test(static_cast<unsigned>(indices[i]))) pattern |= 1u << i;
    }
    ++hist[pattern];
  }
  const double total = static_cast<double>(points.size());
  const double uniform = 1.0 / static_cast<double>(hist.size());
  double l1 = 0.0;
  for (std::uint64_t count : hist) {
    l1 += std::abs(static_cast<double>(count) / total - uniform);
  }
  return {std::vector<std::uint64_t>(indices.begin(), indices.end()), l1};
}

}  // namespace dirand
