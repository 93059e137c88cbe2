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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace memword {

struct HoeffdingInput {
  std::int64_t n = 0;                              // sample count
  std::vector<std::pair<double, double>> ranges;   // one per sample, or one
                                                   // shared range broadcast
  double epsilon = 0.0;
};

/// Two-sided tail bound 2 exp(-2 n eps^2 / ((1/n) sum (b_i - a_i)^2)) for the
/// deviation of a mean of bounded independent variables. May exceed 1; callers
/// clamp for probabilistic interpretation. Throws when every range is
/// degenerate or epsilon <= 0.
double hoeffding_bound(const HoeffdingInput& input);

/// sum_{h >= H} h x^h = x^H (H - (H-1) x) / (1-x)^2 for 0 < x < 1.
double geometric_weighted_tail(double x, std::int64_t h_start);

/// Union-style error bound on overestimating the order at horizon n:
/// 4 n^3 sum_{h >= floor(n^{1-gamma})} h exp(-0.5 n^{-2 beta} h), evaluated
/// through the closed-form tail. Vacuous (far above 1) at desk-scale n; it
/// becomes summable in n, which is what makes the estimator converge.
double order_error_bound(std::int64_t n, double gamma, double beta);

/// min(1, order_error_bound), the probabilistically meaningful view.
double order_error_bound_clamped(std::int64_t n, double gamma, double beta);

}  // namespace memword
