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

#include "dirand/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace dirand {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile
constexpr std::int64_t kExactBinomialLimit = 1'000'000;

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double log_pmf(std::int64_t j, std::int64_t n, double p) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(j) + 1.0) -
         std::lgamma(static_cast<double>(n - j) + 1.0) +
         static_cast<double>(j) * std::log(p) +
         static_cast<double>(n - j) * std::log1p(-p);
}

void check_f_open_unit(double f) {
  require(f > 0.0 && f < 1.0, ErrorCode::invalid_input,
          f == 1.0 ? "f = 1 leaves the round count undefined"
                   : "f must lie in (0, 1)");
}

}  // namespace

FCurve FCurve::from_points(std::vector<std::pair<double, double>> points) {
  require(!points.empty(), ErrorCode::invalid_config, "empty f-curve");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [eps, v] = points[i];
    require(eps > 0.0 && eps < 0.5, ErrorCode::invalid_config,
            "f-curve epsilon must lie in (0, 1/2)");
    require(v >= 0.75 && v <= 1.0, ErrorCode::invalid_config,
            "f-curve value must lie in [3/4, 1]");
    if (i > 0) {
      require(eps > points[i - 1].first, ErrorCode::invalid_config,
              "f-curve epsilons must be strictly ascending");
      require(v <= points[i - 1].second, ErrorCode::invalid_config,
              "f-curve values must be non-increasing in epsilon");
    }
  }
  FCurve curve;
  curve.points_ = std::move(points);
  return curve;
}

double FCurve::value_at(double eps) const {
  require(eps >= min_epsilon() && eps <= max_epsilon(),
          ErrorCode::out_of_range, "epsilon outside the tabulated range");
  // step-down: value at the largest tabulated eps <= query
  double value = points_.front().second;
  for (const auto& [e, v] : points_) {
    if (e > eps) break;
    value = v;
  }
  return value;
}

double mermin_value(const std::array<double, 4>& pass_probs,
                    const std::array<double, 4>& input_dist) {
  double sum = 0.0;
  double v = 0.0;
  for (int s = 0; s < 4; ++s) {
    require(pass_probs[s] >= 0.0 && pass_probs[s] <= 1.0,
            ErrorCode::invalid_input,
            "conditional probability outside [0, 1]");
    require(input_dist[s] >= 0.0, ErrorCode::invalid_input,
            "negative input probability");
    sum += input_dist[s];
    v += pass_probs[s] * input_dist[s];
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::invalid_input,
          "input distribution does not sum to 1");
  return v;
}

MerminStats MerminStats::from(const std::array<double, 4>& pass_probs,
                              const std::array<double, 4>& input_dist) {
  const double v = mermin_value(pass_probs, input_dist);
  return MerminStats{pass_probs, input_dist, v, 1.0 - v};
}

std::int64_t required_rounds(double f, double delta) {
  check_f_open_unit(f);
  require(delta > 0.0 && delta < 1.0, ErrorCode::invalid_input,
          "delta must lie in (0, 1)");
  const double ratio = std::log(delta) / std::log(f);
  require(ratio < 1e15, ErrorCode::out_of_range, "round count overflows");
  auto l = static_cast<std::int64_t>(std::max(1.0, std::floor(ratio)));
  while (std::pow(f, static_cast<double>(l)) >= delta) ++l;
  while (l > 1 && std::pow(f, static_cast<double>(l - 1)) < delta) --l;
  return l;
}

std::int64_t required_rounds(const FCurve& curve, double eps, double delta) {
  return required_rounds(curve.value_at(eps), delta);
}

std::int64_t required_rounds_robust(double f, double delta) {
  check_f_open_unit(f);
  require(delta > 0.0 && delta < 1.0, ErrorCode::invalid_input,
          "delta must lie in (0, 1)");
  const double bound = 8.0 * std::log(delta) / (f - 1.0);
  require(bound < 1e15, ErrorCode::out_of_range, "round count overflows");
  return static_cast<std::int64_t>(std::floor(bound)) + 1;
}

std::int64_t required_rounds_robust(const FCurve& curve, double eps,
                                    double delta) {
  return required_rounds_robust(curve.value_at(eps), delta);
}

double scaling_factor(double f) {
  require(f > 0.0 && f <= 1.0, ErrorCode::invalid_input,
          "f must lie in (0, 1]");
  if (f == 1.0) return 8.0;  // the limit value
  const double x = f - 1.0;
  return 8.0 * std::log1p(x) / x;
}

ChernoffAbortBound chernoff_abort_bound(double f, std::int64_t l) {
  require(f >= 0.0 && f < 1.0, ErrorCode::invalid_input,
          "f must lie in [0, 1)");
  require(l >= 0, ErrorCode::invalid_input, "negative round count");
  const double w = 1.0 - f;
  const double bound = std::exp(-w * static_cast<double>(l) / 8.0);
  const auto k =
      static_cast<std::int64_t>(std::floor(w * static_cast<double>(l) / 2.0));
  const double exact = l == 0 ? 1.0 : binomial_cdf(k, l, w);
  return {bound, exact};
}

double hoeffding_false_abort_bound(double f, std::int64_t m, std::int64_t l) {
  require(f >= 0.0 && f < 1.0, ErrorCode::invalid_input,
          "f must lie in [0, 1)");
  require(m >= 1 && l >= 1, ErrorCode::invalid_input,
          "device and round counts must be positive");
  const double w = 1.0 - f;
  return std::exp(-w * w * static_cast<double>(l) /
                  (8.0 * static_cast<double>(m)));
}

double exact_false_abort_probability(double f, std::int64_t m,
                                     std::int64_t l) {
  const double mu = honest_failure_budget(f, m);
  const auto threshold = static_cast<std::int64_t>(
      std::floor((1.0 - f) * static_cast<double>(l) / 2.0));
  return 1.0 - binomial_cdf(threshold, m * l, mu);
}

double honest_failure_budget(double f, std::int64_t m) {
  require(f >= 0.0 && f <= 1.0, ErrorCode::invalid_input,
          "f must lie in [0, 1]");
  require(m >= 1, ErrorCode::invalid_input, "device count must be positive");
  return (1.0 - f) / (4.0 * static_cast<double>(m));
}

std::int64_t one_shot_length(double rate, double f, double delta) {
  require(rate > 0.0 && rate <= 1.0, ErrorCode::invalid_input,
          "min-entropy rate must lie in (0, 1]");
  check_f_open_unit(f);
  require(delta > 0.0 && delta < 1.0, ErrorCode::invalid_input,
          "delta must lie in (0, 1)");
  const double ratio = (2.0 / rate) * std::log(delta) / std::log(f);
  require(ratio < 1e15, ErrorCode::out_of_range, "length overflows");
  auto n = static_cast<std::int64_t>(std::max(1.0, std::floor(ratio)));
  const auto expo = [&](std::int64_t v) {
    return std::pow(f, rate * static_cast<double>(v) / 2.0);
  };
  while (expo(n) >= delta) ++n;
  while (n > 1 && expo(n - 1) < delta) --n;
  return n;
}

std::int64_t one_shot_length(double rate, const FCurve& curve, double eps,
                             double delta) {
  return one_shot_length(rate, curve.value_at(eps), delta);
}

double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
  require(n >= 1, ErrorCode::invalid_input, "binomial needs n >= 1");
  require(p >= 0.0 && p <= 1.0, ErrorCode::invalid_input,
          "binomial needs p in [0, 1]");
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;  // k < n mass is zero

  if (n > kExactBinomialLimit) {
    // continuity-corrected normal approximation
    const double mean = static_cast<double>(n) * p;
    const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return normal_cdf((static_cast<double>(k) + 0.5 - mean) / sd);
  }

  const double mean = static_cast<double>(n) * p;
  if (static_cast<double>(k) <= mean) {
    double sum = 0.0;
    for (std::int64_t j = 0; j <= k; ++j) sum += std::exp(log_pmf(j, n, p));
    return std::min(1.0, sum);
  }
  double tail = 0.0;
  for (std::int64_t j = k + 1; j <= n; ++j) tail += std::exp(log_pmf(j, n, p));
  return std::max(0.0, 1.0 - tail);
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z) {
  require(trials > 0, ErrorCode::invalid_input, "empty sample");
  require(successes <= trials, ErrorCode::invalid_input,
          "more successes than trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

BiasEstimate estimate_bias(std::uint64_t ones, std::uint64_t total) {
  require(total > 0, ErrorCode::invalid_input, "empty bit sample");
  require(ones <= total, ErrorCode::invalid_input,
          "more ones than samples");
  const double mean = static_cast<double>(ones) / static_cast<double>(total);
  const auto [lo, hi] = wilson_interval(ones, total, kZ99);
  BiasEstimate est;
  est.bias = std::abs(mean - 0.5);
  est.mean = mean;
  est.wilson_low = lo;
  est.wilson_high = hi;
  est.bias_low = (lo <= 0.5 && hi >= 0.5)
                     ? 0.0
                     : std::min(std::abs(lo - 0.5), std::abs(hi - 0.5));
  est.bias_high = std::max(std::abs(lo - 0.5), std::abs(hi - 0.5));
  est.samples = total;
  return est;
}

BiasEstimate estimate_bias(std::span<const std::uint8_t> bits) {
  std::uint64_t ones = 0;
  for (std::uint8_t b : bits) ones += (b != 0);
  return estimate_bias(ones, bits.size());
}

}  // namespace dirand
