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

#include <bit>
#include <cstdint>

#include "dirand/errors.hpp"

namespace dirand::gf2 {

// Reduction polynomial for GF(2^m) as exponents besides x^m and 1,
// from the standard low-weight irreducible tables. Verified irreducible
// by the test suite.
struct ReductionPoly {
  int e1, e2, e3;  // unused slots are -1
};

// Low bits of the reduction polynomial (everything except the x^m term).
std::uint64_t reduction_low_bits(unsigned degree);

// Arithmetic in GF(2^m), 1 <= m <= 64. Elements are bit vectors of
// polynomial coefficients packed into a uint64.
class Field {
 public:
  explicit Field(unsigned degree)
      : degree_(degree),
        low_(reduction_low_bits(degree)),
        mask_(degree >= 64 ? ~0ull : ((1ull << degree) - 1)) {}

  unsigned degree() const { return degree_; }

  std::uint64_t mask() const { return mask_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    const std::uint64_t high_bit = 1ull << (degree_ - 1);
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      const bool carry = (a & high_bit) != 0;
      a = (a << 1) & mask_;
      if (carry) a ^= low_;
    }
    return r;
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  unsigned degree_;
  std::uint64_t low_;
  std::uint64_t mask_;
};

inline bool parity64(std::uint64_t v) { return (std::popcount(v) & 1) != 0; }

// GF(2) inner product of two packed bit vectors.
inline bool dot(std::uint64_t a, std::uint64_t b) { return parity64(a & b); }

}  // namespace dirand::gf2
