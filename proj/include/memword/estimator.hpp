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
#include <optional>
#include <utility>
#include <vector>

#include "memword/context_index.hpp"
#include "memword/seq.hpp"

namespace memword {

/// Estimation parameters. The support threshold is n^{1-gamma} and the
/// acceptance threshold n^{-beta}; beta must satisfy 0 < beta < (1-gamma)/2.
struct EstimatorParams {
  double gamma = 0.5;
  double beta = 0.2;
  std::vector<std::int64_t> checkpoints;  // horizons for order_trajectory

  EstimatorParams() = default;
  EstimatorParams(double gamma_, double beta_,
                  std::vector<std::int64_t> checkpoints_ = {});
};

/// n^{-beta} for horizon n >= 1.
double decision_threshold(std::int64_t horizon, double beta);

struct DiscrepancyReport {
  std::int64_t k = 0;
  double value = 0.0;  // in [0, 1]
  // maximizing (long conditioning word, next symbol); absent when every
  // support set over which the maximum runs is empty
  std::optional<std::pair<Word, Symbol>> witness;
};

/// Empirical conditional probability of x after context z over the indexed
/// prefix: (N-1)+/(D-1)+ where N counts (z,x) and D counts z over the
/// tabulated ranges, with 0/0 defined as 0. Always in [0, 1].
double empirical_conditional(const ContextIndex& index, const Word& z,
                             Symbol x);

/// Words of length k+1 occurring strictly more than the index threshold.
std::vector<Word> support_set(const ContextIndex& index, std::int64_t k);

/// Empirical discrepancy at context length k: the maximum over longer
/// contexts in the support sets of the gap between conditioning on the
/// length-k suffix and on the full context. Zero with no witness when the
/// first support set over which the maximum runs is empty.
DiscrepancyReport empirical_discrepancy(const ContextIndex& index,
                                        std::int64_t k);

/// Discrepancies for every k in [0, first empty support level); entries
/// beyond the returned vector are exactly zero.
std::vector<DiscrepancyReport> discrepancy_profile(const ContextIndex& index);

/// Smallest k in [0, n) whose discrepancy is at most n^{-beta}; n when no
/// such k exists; 0 for horizon 0.
std::int64_t order_estimate(const ContextIndex& index,
                            const EstimatorParams& params);

struct TrajectoryPoint {
  std::int64_t horizon;
  std::int64_t order;
};

/// One order estimate per checkpoint, each computed from scratch on the
/// prefix X_0..X_n. Checkpoints beyond the available data are rejected.
std::vector<TrajectoryPoint> order_trajectory(SeqView seq,
                                              const EstimatorParams& params);

/// Plug-in estimator for the length of the shortest stable context: the
/// smallest k such that some word of length k has at least one support
/// comparison and all of its comparisons stay within n^{-beta} (k = 0 is the
/// empty word); n when no word qualifies.
std::int64_t shortest_word_estimate(const ContextIndex& index,
                                    const EstimatorParams& params);

/// ceil(ratio^t) capped at max_horizon, deduplicated, ending exactly at
/// max_horizon.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t max_horizon,
                                                double ratio = 1.5);

/// Index over X_0..X_n pruned at the params' support threshold.
ContextIndex build_index(SeqView seq, std::int64_t horizon,
                         const EstimatorParams& params);

}  // namespace memword
