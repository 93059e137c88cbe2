// Copyright 2026 the memword authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memword/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memword {

double hoeffding_bound(const HoeffdingInput& input) {
  if (input.n < 1) throw std::invalid_argument("need a positive sample count");
  if (!(input.epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (input.ranges.empty()) {
    throw std::invalid_argument("need at least one range");
  }
  if (input.ranges.size() != 1 &&
      input.ranges.size() != static_cast<std::size_t>(input.n)) {
    throw std::invalid_argument("range list must have length 1 or n");
  }
  double sum_sq = 0.0;
  for (const auto& [a, b] : input.ranges) {
    if (b < a) throw std::invalid_argument("range with b < a");
    sum_sq += (b - a) * (b - a);
  }
  if (input.ranges.size() == 1) {
    sum_sq *= static_cast<double>(input.n);
  }
  if (sum_sq == 0.0) {
    throw std::invalid_argument("all ranges degenerate");
  }
  const double n = static_cast<double>(input.n);
  const double mean_sq = sum_sq / n;
  return 2.0 * std::exp(-2.0 * n * input.epsilon * input.epsilon / mean_sq);
}

double geometric_weighted_tail(double x, std::int64_t h_start) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::invalid_argument("x must be in (0, 1)");
  }
  if (h_start < 0) throw std::invalid_argument("negative tail start");
  const double h = static_cast<double>(h_start);
  // x^H computed in log space so huge H underflows cleanly to 0
  const double xh = std::exp(h * std::log(x));
  const double one_minus = 1.0 - x;
  return xh * (h - (h - 1.0) * x) / (one_minus * one_minus);
}

double order_error_bound(std::int64_t n, double gamma, double beta) {
  if (n < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in (0, 1)");
  }
  if (!(beta > 0.0 && beta < (1.0 - gamma) / 2.0)) {
    throw std::invalid_argument("beta must be in (0, (1-gamma)/2)");
  }
  const double nd = static_cast<double>(n);
  const std::int64_t h_start =
      static_cast<std::int64_t>(std::floor(std::pow(nd, 1.0 - gamma)));
  const double x = std::exp(-0.5 * std::pow(nd, -2.0 * beta));
  return 4.0 * nd * nd * nd * geometric_weighted_tail(x, h_start);
}

double order_error_bound_clamped(std::int64_t n, double gamma, double beta) {
  return std::min(1.0, order_error_bound(n, gamma, beta));
}

}  // namespace memword
