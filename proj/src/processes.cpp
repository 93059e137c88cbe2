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

#include "memword/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace memword {

double ryabko_stationary(std::uint32_t state) {
  if (state <= 1) return 0.25;
  return std::pow(2.0, -static_cast<double>(state));
}

namespace {

std::uint32_t ryabko_initial_state(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.25) return 0;
  if (u < 0.5) return 1;
  double acc = 0.5;
  std::uint32_t s = 2;
  while (s < 64) {
    acc += std::pow(2.0, -static_cast<double>(s));
    if (u < acc) return s;
    ++s;
  }
  return s;
}

std::uint32_t ryabko_step(std::uint32_t s, Rng& rng) {
  if (s == 0) return 1;
  if (s == 1) return 2;
  return rng.uniform() < 0.5 ? 0 : s + 1;
}

}  // namespace

Sequence sample_ryabko(std::size_t length, Rng& rng) {
  Sequence path;
  path.reserve(length);
  if (length == 0) return path;
  std::uint32_t s = ryabko_initial_state(rng);
  for (std::size_t i = 0; i < length; ++i) {
    path.push_back(s);
    s = ryabko_step(s, rng);
  }
  return path;
}

Sequence sample_ryabko(std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  return sample_ryabko(length, rng);
}

Sequence relabel(SeqView path, const Relabeling& f) {
  Sequence out;
  out.reserve(path.size());
  for (Symbol s : path) out.push_back(f(s));
  return out;
}

std::pair<Relabeling, std::uint64_t> fold_stage(const Relabeling& prev,
                                                std::uint64_t cut_prev,
                                                std::uint64_t n_prev) {
  if (n_prev <= cut_prev) {
    throw std::invalid_argument("fold band is empty: need n_prev > cut_prev");
  }
  const std::uint64_t cut_next = 2 * n_prev - cut_prev;
  Relabeling next;
  next.table.resize(cut_next + 1);
  for (std::uint64_t s = 0; s <= n_prev; ++s) {
    next.table[s] = prev(static_cast<Symbol>(s));
  }
  for (std::uint64_t s = n_prev + 1; s <= cut_next; ++s) {
    next.table[s] = static_cast<Symbol>(2 * n_prev + 1 - s);
  }
  return {std::move(next), cut_next};
}

Sequence sample_explicit(const ExplicitChain& chain, std::size_t length,
                         std::uint64_t seed,
                         const std::optional<Word>& initial_block) {
  Rng rng(seed);
  Sequence out;
  out.reserve(length);
  if (length == 0) return out;

  const std::size_t a = static_cast<std::size_t>(chain.alphabet());
  const std::size_t order = static_cast<std::size_t>(chain.order());
  std::size_t ctx = 0;
  if (order > 0) {
    if (initial_block) {
      if (initial_block->size() != order) {
        throw ChainError("initial block must have length = order");
      }
      ctx = chain.context_id(*initial_block);
      if (chain.stationary()[ctx] <= 0.0) {
        throw ChainError("initial block has zero stationary probability");
      }
    } else {
      ctx = rng.pick(chain.stationary());
    }
    std::size_t c = ctx;
    Word block(order);
    for (std::size_t i = order; i-- > 0;) {
      block[i] = static_cast<Symbol>(c % a);
      c /= a;
    }
    for (std::size_t i = 0; i < order && out.size() < length; ++i) {
      out.push_back(block[i]);
    }
  }
  const std::size_t tail_mod =
      order > 0 ? chain.context_count() / a : 1;
  while (out.size() < length) {
    const Symbol y = static_cast<Symbol>(rng.pick(chain.row(ctx)));
    out.push_back(y);
    ctx = order > 0 ? (ctx % tail_mod) * a + y : 0;
  }
  return out;
}

namespace {

bool has_zero_pair(SeqView letters, std::size_t window) {
  // letters[i] = letters[i+1] = 0 for some i in [0, window]
  for (std::size_t i = 0; i <= window && i + 1 < letters.size(); ++i) {
    if (letters[i] == 0 && letters[i + 1] == 0) return true;
  }
  return false;
}

}  // namespace

StagePlan build_adversary(const EstimatorPlugin& h,
                          const AdversaryOptions& options) {
  if (options.stages < 0) throw std::invalid_argument("negative stage count");
  if (options.stages > 0 && options.replicates < 1) {
    throw std::invalid_argument("need at least one replicate");
  }
  StagePlan plan;
  plan.seed = options.seed;
  plan.maps.push_back(Relabeling::initial());
  plan.cutoffs.push_back(1);

  for (int j = 0; j < options.stages; ++j) {
    const Relabeling& f = plan.maps.back();
    const std::uint64_t band_low = plan.cutoffs.back();
    const double target = 1.0 - std::pow(0.5, j + 1);
    const std::size_t uj = static_cast<std::size_t>(j);

    std::uint64_t n = band_low + uj + 1;
    bool found = false;
    std::uint64_t attempt = 0;
    StageRecord rec;
    while (true) {
      std::int64_t hits = 0;
      std::int64_t draws = 0;
      for (std::int64_t r = 0; r < options.replicates; ++r) {
        Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(j),
                            attempt, static_cast<std::uint64_t>(r)));
        Sequence letters;
        // window covers indices -j .. n-j; condition on a 0 0 pair inside
        // [-j, 1]; acceptance probability is at least 1/4 per draw
        for (int guard = 0; guard < 100000; ++guard) {
          ++draws;
          const Sequence path = sample_ryabko(static_cast<std::size_t>(n) + 1, rng);
          letters = relabel(path, f);
          if (has_zero_pair(letters, uj)) break;
          letters.clear();
        }
        if (letters.empty()) {
          throw std::runtime_error("conditioning event never sampled");
        }
        const SeqView visible(letters.data() + uj, letters.size() - uj);
        std::int64_t v = h(visible);
        v = std::clamp<std::int64_t>(v, 1, 2);
        hits += (v == 1);
      }
      const double success =
          static_cast<double>(hits) / static_cast<double>(options.replicates);
      rec = StageRecord{j,
                        band_low,
                        n,
                        static_cast<std::int64_t>(n) - j,
                        target,
                        success,
                        options.replicates,
                        draws};
      if (success > target + options.margin) {
        found = true;
        break;
      }
      if (n > options.horizon_cap / 2) break;
      n *= 2;
      ++attempt;
    }
    plan.stages.push_back(rec);
    if (!found) {
      plan.completed = false;
      plan.failure = "stage " + std::to_string(j) +
                     ": no sample size within the cap reached the target";
      return plan;
    }
    auto [next, cut_next] = fold_stage(f, band_low, n);
    plan.maps.push_back(std::move(next));
    plan.cutoffs.push_back(cut_next);
  }
  return plan;
}

std::string stage_plan_to_json(const StagePlan& plan) {
  nlohmann::json doc;
  doc["seed"] = plan.seed;
  doc["completed"] = plan.completed;
  if (!plan.failure.empty()) doc["failure"] = plan.failure;
  nlohmann::json stages = nlohmann::json::array();
  for (const StageRecord& r : plan.stages) {
    stages.push_back({{"stage", r.stage},
                      {"band_low", r.band_low},
                      {"sample_size", r.sample_size},
                      {"horizon", r.horizon},
                      {"target", r.target},
                      {"success", r.success},
                      {"replicates", r.replicates},
                      {"draws", r.draws}});
  }
  doc["stages"] = stages;
  nlohmann::json maps = nlohmann::json::array();
  for (std::size_t i = 0; i < plan.maps.size(); ++i) {
    maps.push_back({{"cutoff", plan.cutoffs[i]},
                    {"table", plan.maps[i].table}});
  }
  doc["maps"] = maps;
  return doc.dump(2);
}

std::optional<std::int64_t> stopping_reduction(
    const EstimatorPlugin& h, std::span<const std::int64_t> lambdas,
    SeqView seq, std::int64_t n) {
  for (std::size_t i = 0; i + 1 < lambdas.size(); ++i) {
    if (lambdas[i] >= lambdas[i + 1]) {
      throw std::invalid_argument("stopping times must be strictly increasing");
    }
  }
  std::optional<std::int64_t> best;
  for (const std::int64_t lam : lambdas) {
    if (2 * lam <= n || lam >= n) continue;
    if (lam + 1 > static_cast<std::int64_t>(seq.size())) {
      throw std::invalid_argument("stopping time beyond the sample");
    }
    const std::int64_t v = h(seq.subspan(0, static_cast<std::size_t>(lam) + 1));
    if (!best || v < *best) best = v;
  }
  return best;
}

Sequence sample_ryabko_mod(std::size_t length, std::uint32_t modulus,
                           std::uint64_t seed) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  Sequence path = sample_ryabko(length, seed);
  for (Symbol& s : path) s %= modulus;
  return path;
}

FoldedObservation tight_fold_observation(int stages) {
  if (stages < 0) throw std::invalid_argument("negative stage count");
  Relabeling f = Relabeling::initial();
  std::uint64_t cut = 1;
  for (int j = 0; j < stages; ++j) {
    const std::uint64_t n = cut + static_cast<std::uint64_t>(j) + 1;
    auto [next, cut_next] = fold_stage(f, cut, n);
    f = std::move(next);
    cut = cut_next;
  }
  return FoldedObservation{std::move(f), cut,
                           static_cast<Symbol>(cut + 1)};
}

Sequence sample_ryabko_folded(std::size_t length, int stages,
                              std::uint64_t seed) {
  const FoldedObservation obs = tight_fold_observation(stages);
  Sequence path = sample_ryabko(length, seed);
  for (Symbol& s : path) {
    s = s <= obs.cutoff ? obs.map(s) : obs.overflow;
  }
  return path;
}

}  // namespace memword
