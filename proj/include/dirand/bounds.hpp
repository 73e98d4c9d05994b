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
#include <span>
#include <utility>
#include <vector>

#include "dirand/errors.hpp"

namespace dirand {

// Threshold curve v = f(eps): the box value needed to certify output bias at
// most eps. The curve is user-supplied configuration (tabulated points,
// ascending in eps); queries use the step-down rule, returning the value at
// the largest tabulated eps not exceeding the query so interpolation never
// under-demands between points.
class FCurve {
 public:
  static FCurve from_points(std::vector<std::pair<double, double>> points);

  double value_at(double eps) const;
  const std::vector<std::pair<double, double>>& points() const {
    return points_;
  }
  double min_epsilon() const { return points_.front().first; }
  double max_epsilon() const { return points_.back().first; }

 private:
  FCurve() = default;
  std::vector<std::pair<double, double>> points_;
};

// Box statistics: pass probabilities for the four admissible settings
// (ordered 111, 100, 010, 001), the input distribution over them, the
// resulting value v and failure probability w = 1 - v.
struct MerminStats {
  std::array<double, 4> pass_probs;
  std::array<double, 4> input_dist;
  double v;
  double w;

  static MerminStats from(const std::array<double, 4>& pass_probs,
                          const std::array<double, 4>& input_dist);
};

// v = sum_s P(pass | setting s) P(setting s).
double mermin_value(const std::array<double, 4>& pass_probs,
                    const std::array<double, 4>& input_dist);

// Smallest l with f^l < delta (strict round-count rule, resolved by direct
// power checks rather than floating-point ceilings).
std::int64_t required_rounds(double f, double delta);
std::int64_t required_rounds(const FCurve& curve, double eps, double delta);

// Smallest l with l > 8 ln(delta) / (f - 1), the failure-tolerant variant.
std::int64_t required_rounds_robust(double f, double delta);
std::int64_t required_rounds_robust(const FCurve& curve, double eps,
                                    double delta);

// Round-count multiplier of the tolerant protocol, 8 ln(f) / (f - 1);
// returns exactly 8 at f = 1.
double scaling_factor(double f);

struct ChernoffAbortBound {
  double bound;           // exp(-(1-f) l / 8)
  double exact_binomial;  // F(floor((1-f)l/2); l; 1-f)
};

// Probability that a cheating provider evades detection for l rounds while
// staying under the tolerated failure budget, with its Chernoff upper bound.
ChernoffAbortBound chernoff_abort_bound(double f, std::int64_t l);

// Hoeffding bound exp(-(1-f)^2 l / (8m)) on a false abort with m honest
// devices per round failing independently with probability (1-f)/(4m).
double hoeffding_false_abort_bound(double f, std::int64_t m, std::int64_t l);

// Exact false-abort probability P[Bin(ml, mu) > floor((1-f)l/2)].
double exact_false_abort_probability(double f, std::int64_t m, std::int64_t l);

// Largest per-use failure probability an honest device may have,
// (1 - f) / (4m).
double honest_failure_budget(double f, std::int64_t m);

// Smallest n with f^(R n / 2) < delta for a one-shot (n, Rn) source.
std::int64_t one_shot_length(double rate, double f, double delta);
std::int64_t one_shot_length(double rate, const FCurve& curve, double eps,
                             double delta);

// P[Bin(n, p) <= k] by log-space summation of the lighter tail; switches to
// a continuity-corrected normal approximation for n > 10^6.
double binomial_cdf(std::int64_t k, std::int64_t n, double p);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z);

struct BiasEstimate {
  double bias;        // |mean - 1/2|
  double mean;        // fraction of ones
  double wilson_low;  // 99% interval for the fraction of ones
  double wilson_high;
  double bias_low;  // induced interval for |mean - 1/2|
  double bias_high;
  std::uint64_t samples;
};

BiasEstimate estimate_bias(std::uint64_t ones, std::uint64_t total);
BiasEstimate estimate_bias(std::span<const std::uint8_t> bits);

}  // namespace dirand
