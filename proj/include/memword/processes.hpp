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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "memword/chain.hpp"
#include "memword/rng.hpp"
#include "memword/seq.hpp"

namespace memword {

// The countable-state chain used as the adversary's substrate: 0 -> 1 -> 2
// deterministically, and from s >= 2 either reset to 0 or climb to s+1 with
// probability 1/2 each. Stationary law: 1/4 on states 0 and 1, 2^{-s} above.

double ryabko_stationary(std::uint32_t state);

/// Stationary-start sample path of states; deterministic given the seed.
Sequence sample_ryabko(std::size_t length, std::uint64_t seed);
Sequence sample_ryabko(std::size_t length, Rng& rng);

/// A state-to-letter map stored as a finite table; identity above the table.
struct Relabeling {
  std::vector<Symbol> table;  // f(s) = table[s] for s < table.size()

  Symbol operator()(Symbol s) const {
    return s < table.size() ? table[s] : s;
  }
  /// Largest state the table covers; f is the identity strictly above it.
  std::uint64_t cutoff() const {
    return table.empty() ? 0 : table.size() - 1;
  }
  /// Glues states 0 and 1 to letter 0, identity elsewhere.
  static Relabeling initial() { return Relabeling{{0, 0}}; }
};

Sequence relabel(SeqView path, const Relabeling& f);

/// One folding step: keeps prev on [0, n_prev], mirrors the band
/// (n_prev, 2*n_prev - cut_prev] onto (cut_prev, n_prev] via
/// s -> 2*n_prev + 1 - s, and raises the cutoff to 2*n_prev - cut_prev.
/// Requires n_prev > cut_prev.
std::pair<Relabeling, std::uint64_t> fold_stage(const Relabeling& prev,
                                                std::uint64_t cut_prev,
                                                std::uint64_t n_prev);

/// Stationary-start sample of an explicit chain: the first `order` symbols
/// are one draw from the stationary block law (or the given block), the rest
/// follow the kernel.
Sequence sample_explicit(const ExplicitChain& chain, std::size_t length,
                         std::uint64_t seed,
                         const std::optional<Word>& initial_block = std::nullopt);

/// A pluggable estimator mapping a finite sample path to a value in
/// {0, 1, 2, ...}.
using EstimatorPlugin = std::function<std::int64_t(SeqView)>;

struct StageRecord {
  int stage = 0;                   // j
  std::uint64_t band_low = 0;      // N_j
  std::uint64_t sample_size = 0;   // accepted n_j
  std::int64_t horizon = 0;        // n_j - j, the evaluated sample horizon
  double target = 0.0;             // 1 - 2^{-(j+1)}
  double success = 0.0;            // empirical P(h = 1 | conditioning event)
  std::int64_t replicates = 0;
  std::int64_t draws = 0;          // windows sampled including rejected ones
};

struct StagePlan {
  std::vector<Relabeling> maps;        // f^(0) .. f^(J)
  std::vector<std::uint64_t> cutoffs;  // N_0 .. N_J
  std::vector<StageRecord> stages;     // one per completed horizon search
  bool completed = true;
  std::string failure;                 // set when a search hit the cap
  std::uint64_t seed = 0;
};

struct AdversaryOptions {
  int stages = 1;                    // number of horizon searches (J)
  std::int64_t replicates = 200;     // accepted Monte Carlo windows per test
  double margin = 0.05;              // added to each target before accepting
  std::uint64_t seed = 1;
  std::uint64_t horizon_cap = 1u << 20;
};

/// Stage-by-stage search for sample sizes at which the plug-in (clamped to
/// {1, 2}) answers 1 with conditional probability above 1 - 2^{-(j+1)} plus
/// the margin, conditioning on a letter pair 0 0 near the window start; each
/// accepted stage folds a fresh band of states onto existing letters. The
/// search doubles the sample size and reports failure with partial results
/// when the cap is exceeded.
StagePlan build_adversary(const EstimatorPlugin& h,
                          const AdversaryOptions& options);

std::string stage_plan_to_json(const StagePlan& plan);

/// Smallest plug-in value over the stopping times lambda_k with
/// n/2 < lambda_k < n, evaluated on the prefix X_0^{lambda_k}; nullopt when
/// no stopping time lands in the window.
std::optional<std::int64_t> stopping_reduction(
    const EstimatorPlugin& h, std::span<const std::int64_t> lambdas,
    SeqView seq, std::int64_t n);

// Observed variants of the countable-state chain used for convergence
// studies. Residue observation keeps the alphabet finite while the hidden
// height stays unbounded, so no finite context length is ever sufficient.
Sequence sample_ryabko_mod(std::size_t length, std::uint32_t modulus,
                           std::uint64_t seed);

struct FoldedObservation {
  Relabeling map;
  std::uint64_t cutoff = 0;   // N_J of the last fold
  Symbol overflow = 0;        // letter for states above the cutoff
};

/// Folding with the minimal legal schedule (n_j = N_j + j + 1) for the given
/// number of stages, observing every state above the final cutoff as one
/// overflow letter.
FoldedObservation tight_fold_observation(int stages);

Sequence sample_ryabko_folded(std::size_t length, int stages,
                              std::uint64_t seed);

}  // namespace memword
