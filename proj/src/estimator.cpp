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

#include "memword/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace memword {

EstimatorParams::EstimatorParams(double gamma_, double beta_,
                                 std::vector<std::int64_t> checkpoints_)
    : gamma(gamma_), beta(beta_), checkpoints(std::move(checkpoints_)) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must be in (0, 1)");
  }
  if (!(beta > 0.0 && beta < (1.0 - gamma) / 2.0)) {
    throw std::invalid_argument("beta must be in (0, (1-gamma)/2)");
  }
  for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i) {
    if (checkpoints[i] >= checkpoints[i + 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
  if (!checkpoints.empty() && checkpoints.front() < 0) {
    throw std::invalid_argument("checkpoints must be nonnegative");
  }
}

double decision_threshold(std::int64_t horizon, double beta) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  return std::pow(static_cast<double>(horizon), -beta);
}

double empirical_conditional(const ContextIndex& index, const Word& z,
                             Symbol x) {
  std::int64_t numer_count = 0;
  std::int64_t denom_count = 0;
  if (z.empty()) {
    numer_count = index.count_full(Word{x});
    denom_count = index.horizon() + 1;
  } else {
    Word zx = z;
    zx.push_back(x);
    numer_count = index.count_full(zx);
    denom_count = index.count_head(z);
  }
  const std::int64_t num = std::max<std::int64_t>(numer_count - 1, 0);
  const std::int64_t den = std::max<std::int64_t>(denom_count - 1, 0);
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<Word> support_set(const ContextIndex& index, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  return index.frequent_words(static_cast<std::size_t>(k) + 1,
                              index.threshold());
}

namespace {

inline double truncated_ratio(std::int64_t numer_count,
                              std::int64_t denom_count) {
  const std::int64_t num = std::max<std::int64_t>(numer_count - 1, 0);
  const std::int64_t den = std::max<std::int64_t>(denom_count - 1, 0);
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

struct SweepState {
  // best discrepancy per context length k, with the maximizing level/id
  std::vector<double> best;
  std::vector<std::pair<std::size_t, std::uint32_t>> best_at;
  // per (k, suffix word id) maxima for the shortest-word plug-in; -1 = no
  // comparison seen
  bool want_local = false;
  std::vector<std::vector<double>> local;
};

// One pass over every level: each surviving word u = z x of length m
// contributes |p(x | suffix_k z) - p(x | z)| to every k <= m-2. Suffix
// counts come from the parent chain of u; the chain of z is resolved
// through the per-level lookup maps (all of its members survived pruning
// because their counts dominate u's).
void sweep(const ContextIndex& index, SweepState& st) {
  const std::size_t first_empty = index.first_empty_level();
  const std::size_t k_count = first_empty >= 3 ? first_empty - 2 : 0;
  st.best.assign(k_count, -1.0);
  st.best_at.assign(k_count, {0, 0});
  if (st.want_local) {
    st.local.clear();
    st.local.resize(k_count);
    for (std::size_t k = 1; k < k_count; ++k) {
      st.local[k].assign(index.level(k).size(), -1.0);
    }
  }
  if (k_count == 0) return;

  const std::int64_t n = index.horizon();
  std::vector<std::uint32_t> anc;   // anc[j] = id of the length-j suffix of u
  std::vector<std::uint32_t> zid;   // zid[j] = id of the length-j suffix of z
  std::vector<Symbol> u;

  for (std::size_t m = 2; m < first_empty; ++m) {
    const auto& lvl = index.level(m);
    for (std::uint32_t id = 0; id < lvl.size(); ++id) {
      anc.assign(m + 1, 0);
      anc[m] = id;
      for (std::size_t j = m; j > 1; --j) {
        anc[j - 1] = index.level(j)[anc[j]].parent;
      }
      u.assign(m, 0);
      for (std::size_t j = 1; j <= m; ++j) {
        u[m - j] = index.level(j)[anc[j]].first;
      }

      zid.assign(m, 0);
      for (std::size_t j = 1; j < m; ++j) {
        const auto found = index.extend(j, u[m - 1 - j], zid[j - 1]);
        if (!found) throw std::logic_error("pruned suffix of a kept word");
        zid[j] = *found;
      }

      const double p_long = truncated_ratio(
          lvl[id].count, index.level(m - 1)[zid[m - 1]].count_head);
      for (std::size_t k = 0; k + 2 <= m; ++k) {
        const double p_short =
            k == 0 ? truncated_ratio(index.level(1)[anc[1]].count, n + 1)
                   : truncated_ratio(index.level(k + 1)[anc[k + 1]].count,
                                     index.level(k)[zid[k]].count_head);
        const double d = std::fabs(p_short - p_long);
        if (d > st.best[k]) {
          st.best[k] = d;
          st.best_at[k] = {m, id};
        }
        if (st.want_local && k >= 1 && d > st.local[k][zid[k]]) {
          st.local[k][zid[k]] = d;
        }
      }
    }
  }
}

std::vector<DiscrepancyReport> reports_from(const ContextIndex& index,
                                            const SweepState& st) {
  std::vector<DiscrepancyReport> out(st.best.size());
  for (std::size_t k = 0; k < st.best.size(); ++k) {
    out[k].k = static_cast<std::int64_t>(k);
    if (st.best[k] >= 0.0) {
      out[k].value = st.best[k];
      Word u = index.word_at(st.best_at[k].first, st.best_at[k].second);
      const Symbol x = u.back();
      u.pop_back();
      out[k].witness = std::make_pair(std::move(u), x);
    }
  }
  return out;
}

}  // namespace

std::vector<DiscrepancyReport> discrepancy_profile(const ContextIndex& index) {
  SweepState st;
  sweep(index, st);
  return reports_from(index, st);
}

DiscrepancyReport empirical_discrepancy(const ContextIndex& index,
                                        std::int64_t k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const auto profile = discrepancy_profile(index);
  if (static_cast<std::size_t>(k) < profile.size()) {
    return profile[static_cast<std::size_t>(k)];
  }
  return DiscrepancyReport{k, 0.0, std::nullopt};
}

std::int64_t order_estimate(const ContextIndex& index,
                            const EstimatorParams& params) {
  const std::int64_t n = index.horizon();
  if (n == 0) return 0;
  if (std::fabs(index.threshold() - support_threshold(n, params.gamma)) >
      1e-12 * std::max(1.0, index.threshold())) {
    throw std::invalid_argument("index threshold does not match gamma");
  }
  const double thr = decision_threshold(n, params.beta);
  const auto profile = discrepancy_profile(index);
  for (std::int64_t k = 0; k < n; ++k) {
    const double d = static_cast<std::size_t>(k) < profile.size()
                         ? profile[static_cast<std::size_t>(k)].value
                         : 0.0;
    if (d <= thr) return k;
  }
  return n;
}

std::vector<TrajectoryPoint> order_trajectory(SeqView seq,
                                              const EstimatorParams& params) {
  std::vector<TrajectoryPoint> out;
  for (std::int64_t n : params.checkpoints) {
    if (n < 0 || n >= static_cast<std::int64_t>(seq.size())) {
      throw std::invalid_argument("checkpoint exceeds the available data");
    }
    const ContextIndex index = build_index(seq, n, params);
    out.push_back(TrajectoryPoint{n, order_estimate(index, params)});
  }
  return out;
}

std::int64_t shortest_word_estimate(const ContextIndex& index,
                                    const EstimatorParams& params) {
  const std::int64_t n = index.horizon();
  if (n == 0) return 0;
  const double thr = decision_threshold(n, params.beta);
  SweepState st;
  st.want_local = true;
  sweep(index, st);
  // k = 0 is the empty word; it qualifies only if it actually had support
  // comparisons (best >= 0), matching the convention that an estimator with
  // nothing to look at must fall back to n.
  for (std::size_t k = 0; k < st.best.size(); ++k) {
    if (k == 0) {
      if (st.best[0] >= 0.0 && st.best[0] <= thr) return 0;
      continue;
    }
    for (const double d : st.local[k]) {
      if (d >= 0.0 && d <= thr) return static_cast<std::int64_t>(k);
    }
  }
  return n;
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t max_horizon,
                                                double ratio) {
  if (max_horizon < 0) throw std::invalid_argument("negative horizon");
  if (!(ratio > 1.0)) throw std::invalid_argument("ratio must exceed 1");
  std::vector<std::int64_t> out;
  double v = 1.0;
  while (true) {
    const std::int64_t c = static_cast<std::int64_t>(std::ceil(v));
    if (c >= max_horizon) break;
    if (out.empty() || c > out.back()) out.push_back(c);
    v *= ratio;
  }
  out.push_back(max_horizon);
  return out;
}

ContextIndex build_index(SeqView seq, std::int64_t horizon,
                         const EstimatorParams& params) {
  return ContextIndex(seq, horizon, support_threshold(horizon, params.gamma));
}

}  // namespace memword
