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

#include "memword/context_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "memword/scan.hpp"

namespace memword {

double support_threshold(std::int64_t horizon, double gamma) {
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  double tau = std::pow(static_cast<double>(horizon), 1.0 - gamma);
  const double snapped = std::nearbyint(tau);
  if (std::fabs(tau - snapped) < 1e-9 * std::max(1.0, std::fabs(tau))) {
    tau = snapped;
  }
  return tau;
}

namespace {

constexpr std::uint64_t pack_key(Symbol first, std::uint32_t parent) {
  return (static_cast<std::uint64_t>(first) << 32) | parent;
}

}  // namespace

ContextIndex::ContextIndex(SeqView seq, std::int64_t horizon,
                           double threshold)
    : n_(horizon), tau_(threshold) {
  if (horizon < 0 || horizon >= static_cast<std::int64_t>(seq.size())) {
    throw std::invalid_argument("horizon outside the sequence");
  }
  seq_.assign(seq.begin(), seq.begin() + horizon + 1);
  build();
}

void ContextIndex::build() {
  // Local dense alphabet of the prefix, in symbol order.
  std::vector<Symbol> alpha(seq_.begin(), seq_.end());
  std::sort(alpha.begin(), alpha.end());
  alpha.erase(std::unique(alpha.begin(), alpha.end()), alpha.end());
  const std::size_t d_all = alpha.size();
  auto local_of = [&](Symbol s) {
    return static_cast<std::size_t>(
        std::lower_bound(alpha.begin(), alpha.end(), s) - alpha.begin());
  };

  // Level 1.
  std::vector<std::int64_t> cnt1(d_all, 0);
  for (Symbol s : seq_) ++cnt1[local_of(s)];
  std::vector<std::int32_t> rank1(d_all, -1);  // level-1 id per local symbol
  std::vector<Entry> lvl1;
  for (std::size_t d = 0; d < d_all; ++d) {
    if (static_cast<double>(cnt1[d]) > tau_) {
      rank1[d] = static_cast<std::int32_t>(lvl1.size());
      const std::int64_t at_n = (alpha[d] == seq_.back()) ? 1 : 0;
      lvl1.push_back(Entry{alpha[d], 0, cnt1[d], cnt1[d] - at_n});
    }
  }
  if (lvl1.empty()) return;
  levels_.push_back(std::move(lvl1));
  maps_.emplace_back();
  for (std::uint32_t id = 0; id < levels_[0].size(); ++id) {
    maps_[0].emplace(pack_key(levels_[0][id].first, 0), id);
  }

  // A frequent word's first symbol is itself a frequent 1-word, so left
  // extensions only need the level-1 survivors.
  const std::size_t d1 = levels_[0].size();
  std::vector<std::int32_t> rank1_of_pos(seq_.size());
  for (std::size_t t = 0; t < seq_.size(); ++t) {
    rank1_of_pos[t] = rank1[local_of(seq_[t])];
  }

  std::vector<std::int32_t> cur(seq_.size());  // id of the word ending at t
  for (std::size_t t = 0; t < seq_.size(); ++t) cur[t] = rank1_of_pos[t];
  std::vector<std::int32_t> nxt(seq_.size());

  for (std::size_t len = 2;; ++len) {
    const std::size_t prev_count = levels_.back().size();
    std::vector<std::int64_t> counts(prev_count * d1, 0);
    std::int64_t last_key = -1;
    for (std::size_t t = len - 1; t < seq_.size(); ++t) {
      const std::int32_t pid = cur[t];
      if (pid < 0) continue;
      const std::int32_t d = rank1_of_pos[t - len + 1];
      if (d < 0) continue;
      const std::size_t key = static_cast<std::size_t>(pid) * d1 + d;
      ++counts[key];
      if (t + 1 == seq_.size()) last_key = static_cast<std::int64_t>(key);
    }

    std::vector<Entry> lvl;
    std::vector<std::int32_t> id_of_key(prev_count * d1, -1);
    for (std::size_t key = 0; key < counts.size(); ++key) {
      if (static_cast<double>(counts[key]) > tau_) {
        id_of_key[key] = static_cast<std::int32_t>(lvl.size());
        const std::int64_t at_n =
            (static_cast<std::int64_t>(key) == last_key) ? 1 : 0;
        lvl.push_back(Entry{levels_[0][key % d1].first,
                            static_cast<std::uint32_t>(key / d1), counts[key],
                            counts[key] - at_n});
      }
    }
    if (lvl.empty()) break;

    maps_.emplace_back();
    auto& map = maps_.back();
    for (std::uint32_t id = 0; id < lvl.size(); ++id) {
      map.emplace(pack_key(lvl[id].first, lvl[id].parent), id);
    }
    levels_.push_back(std::move(lvl));

    std::fill(nxt.begin(), nxt.end(), -1);
    for (std::size_t t = len - 1; t < seq_.size(); ++t) {
      const std::int32_t pid = cur[t];
      if (pid < 0) continue;
      const std::int32_t d = rank1_of_pos[t - len + 1];
      if (d < 0) continue;
      nxt[t] = id_of_key[static_cast<std::size_t>(pid) * d1 + d];
    }
    cur.swap(nxt);
    if (len == seq_.size()) break;  // nothing longer fits
  }
}

const std::vector<ContextIndex::Entry>& ContextIndex::level(
    std::size_t len) const {
  if (len < 1 || len > levels_.size()) {
    throw std::out_of_range("level outside the nonempty range");
  }
  return levels_[len - 1];
}

std::optional<std::uint32_t> ContextIndex::find(const Word& w) const {
  const std::size_t len = w.size();
  if (len == 0 || len > levels_.size()) return std::nullopt;
  std::uint32_t id = 0;
  for (std::size_t j = 1; j <= len; ++j) {
    const auto it = maps_[j - 1].find(pack_key(w[len - j], j == 1 ? 0 : id));
    if (it == maps_[j - 1].end()) return std::nullopt;
    id = it->second;
  }
  return id;
}

std::optional<std::uint32_t> ContextIndex::extend(std::size_t child_len,
                                                  Symbol first,
                                                  std::uint32_t parent) const {
  if (child_len == 0 || child_len > levels_.size()) return std::nullopt;
  const auto& map = maps_[child_len - 1];
  const auto it = map.find(pack_key(first, child_len == 1 ? 0 : parent));
  if (it == map.end()) return std::nullopt;
  return it->second;
}

Word ContextIndex::word_at(std::size_t len, std::uint32_t id) const {
  Word w(len);
  std::uint32_t cur_id = id;
  for (std::size_t j = len; j >= 1; --j) {
    const Entry& e = levels_[j - 1][cur_id];
    w[len - j] = e.first;
    cur_id = e.parent;
  }
  return w;
}

std::int64_t ContextIndex::count(const Word& w, std::int64_t lo,
                                 std::int64_t hi) const {
  if (lo < 0 || hi > n_ || lo > hi) {
    throw std::invalid_argument("count range outside [0, n]");
  }
  if (w.empty()) return hi - lo + 1;
  const std::int64_t m = static_cast<std::int64_t>(w.size());
  if (lo <= m - 1) {
    if (hi == n_) return count_full(w);
    if (hi == n_ - 1) return count_head(w);
  }
  return scan::count_occurrences(prefix(), w, lo, hi);
}

std::int64_t ContextIndex::count_full(const Word& w) const {
  if (w.empty()) return n_ + 2;  // ends in [-1, n]
  if (const auto id = find(w)) return levels_[w.size() - 1][*id].count;
  return scan::count_occurrences(prefix(), w,
                                 static_cast<std::int64_t>(w.size()) - 1, n_);
}

std::int64_t ContextIndex::count_head(const Word& w) const {
  if (w.empty()) return n_ + 1;  // ends in [-1, n-1]
  if (const auto id = find(w)) return levels_[w.size() - 1][*id].count_head;
  return scan::count_occurrences(
      prefix(), w, static_cast<std::int64_t>(w.size()) - 1, n_ - 1);
}

std::vector<Word> ContextIndex::frequent_words(std::size_t len,
                                               double tau) const {
  if (len == 0) throw std::invalid_argument("word length must be positive");
  if (tau < tau_) {
    throw std::invalid_argument(
        "queried threshold below the index pruning threshold");
  }
  std::vector<Word> out;
  if (len > levels_.size()) return out;
  const auto& lvl = levels_[len - 1];
  for (std::uint32_t id = 0; id < lvl.size(); ++id) {
    if (static_cast<double>(lvl[id].count) > tau) {
      out.push_back(word_at(len, id));
    }
  }
  return out;
}

std::vector<std::int64_t> ContextIndex::occurrence_times(
    const Word& w, std::int64_t anchor, Direction dir) const {
  return memword::occurrence_times(prefix(), w, anchor, dir);
}

}  // namespace memword
