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

#include "dirand/gf2.hpp"

namespace dirand::gf2 {

namespace {

// Middle exponents of x^m + ... + 1 for m = 1..64 (index m-1).
constexpr ReductionPoly kReduction[64] = {
    {-1, -1, -1},                                           // 1: x + 1
    {1, -1, -1},  {1, -1, -1},  {1, -1, -1},  {2, -1, -1},  // 2..5
    {1, -1, -1},  {1, -1, -1},  {4, 3, 1},    {1, -1, -1},  // 6..9
    {3, -1, -1},  {2, -1, -1},  {3, -1, -1},  {4, 3, 1},    // 10..13
    {5, -1, -1},  {1, -1, -1},  {5, 3, 1},    {3, -1, -1},  // 14..17
    {3, -1, -1},  {5, 2, 1},    {3, -1, -1},  {2, -1, -1},  // 18..21
    {1, -1, -1},  {5, -1, -1},  {4, 3, 1},    {3, -1, -1},  // 22..25
    {4, 3, 1},    {5, 2, 1},    {1, -1, -1},  {2, -1, -1},  // 26..29
    {1, -1, -1},  {3, -1, -1},  {7, 3, 2},    {10, -1, -1}, // 30..33
    {7, -1, -1},  {2, -1, -1},  {9, -1, -1},  {6, 4, 1},    // 34..37
    {6, 5, 1},    {4, -1, -1},  {5, 4, 3},    {3, -1, -1},  // 38..41
    {7, -1, -1},  {6, 4, 3},    {5, -1, -1},  {4, 3, 1},    // 42..45
    {1, -1, -1},  {5, -1, -1},  {5, 3, 2},    {9, -1, -1},  // 46..49
    {4, 3, 2},    {6, 3, 1},    {3, -1, -1},  {6, 2, 1},    // 50..53
    {9, -1, -1},  {7, -1, -1},  {7, 4, 2},    {4, -1, -1},  // 54..57
    {19, -1, -1}, {7, 4, 2},    {1, -1, -1},  {5, 2, 1},    // 58..61
    {29, -1, -1}, {1, -1, -1},  {4, 3, 1},                  // 62..64
};

}  // namespace

std::uint64_t reduction_low_bits(unsigned degree) {
  require(degree >= 1 && degree <= 64, ErrorCode::unsupported,
          "GF(2^m) supported only for 1 <= m <= 64");
  const ReductionPoly& p = kReduction[degree - 1];
  std::uint64_t low = 1;  // the constant term
  if (p.e1 >= 0) low |= 1ull << p.e1;
  if (p.e2 >= 0) low |= 1ull << p.e2;
  if (p.e3 >= 0) low |= 1ull << p.e3;
  return low;
}

}  // namespace dirand::gf2
