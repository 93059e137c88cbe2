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
#include <unordered_map>
#include <vector>

#include "memword/seq.hpp"

namespace memword {

/// n^{1-gamma}, snapped to the nearest integer when within 1e-9 of one so that
/// strict comparisons behave like the exact mathematical threshold (9^{1/2}
/// must exclude counts of exactly 3).
double support_threshold(std::int64_t horizon, double gamma);

/// Exact occurrence counts of words over the prefix X_0..X_n, built level by
/// level. Level L holds every word of length L occurring strictly more than
/// the threshold, found by extending the surviving words of level L-1 one
/// symbol to the left. The pruning is exact: a word's count never exceeds the
/// count of any of its suffixes, so nothing above the threshold is missed.
///
/// Two end-position ranges are tabulated per word because the estimation
/// formulas count supports over ends in [L-1, n] but conditioning contexts
/// over ends in [L-1, n-1].
///
/// Immutable after construction; safe to share read-only across threads.
class ContextIndex {
 public:
  ContextIndex(SeqView seq, std::int64_t horizon, double threshold);

  std::int64_t horizon() const { return n_; }
  double threshold() const { return tau_; }
  SeqView prefix() const { return {seq_.data(), seq_.size()}; }

  struct Entry {
    Symbol first;          // leftmost symbol of the word
    std::uint32_t parent;  // id of the length-(L-1) suffix at the level below
    std::int64_t count;       // end positions in [L-1, n]
    std::int64_t count_head;  // end positions in [L-1, n-1]
  };

  /// Smallest length L >= 1 whose table is empty; all longer levels are empty
  /// too.
  std::size_t first_empty_level() const { return levels_.size() + 1; }

  /// Level table for words of length len (1 <= len <= deepest nonempty level).
  const std::vector<Entry>& level(std::size_t len) const;

  /// Id of w within level |w|, if w passed the threshold.
  std::optional<std::uint32_t> find(const Word& w) const;

  /// Id of the length-child_len word formed by prepending `first` to the
  /// length-(child_len-1) word with id `parent` (parent ignored for
  /// child_len == 1).
  std::optional<std::uint32_t> extend(std::size_t child_len, Symbol first,
                                      std::uint32_t parent) const;

  Word word_at(std::size_t len, std::uint32_t id) const;

  /// Exact count of end positions t in [lo, hi] (0 <= lo <= hi <= n) with
  /// X_{t-|w|+1}^t = w. The empty word matches every position in range.
  /// Answered from the tables when [lo, hi] is one of the tabulated ranges
  /// and w survived pruning, otherwise by a direct scan.
  std::int64_t count(const Word& w, std::int64_t lo, std::int64_t hi) const;

  std::int64_t count_full(const Word& w) const;  // ends in [|w|-1, n]
  std::int64_t count_head(const Word& w) const;  // ends in [|w|-1, n-1]

  /// Words of length len occurring strictly more than tau times. Only
  /// tau >= threshold() can be answered exactly from the pruned tables;
  /// smaller values throw std::invalid_argument.
  std::vector<Word> frequent_words(std::size_t len, double tau) const;

  /// End positions of w strictly after/before the anchor within the prefix,
  /// ordered by increasing distance.
  std::vector<std::int64_t> occurrence_times(const Word& w, std::int64_t anchor,
                                             Direction dir) const;

 private:
  std::vector<Symbol> seq_;  // owned copy of the prefix X_0..X_n
  std::int64_t n_ = 0;
  double tau_ = 0.0;
  std::vector<std::vector<Entry>> levels_;  // levels_[L-1] = level L
  // per level: (first << 32 | parent) -> id
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> maps_;

  void build();
};

}  // namespace memword
