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
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace memword {

/// Symbols are dense nonnegative ids; the alphabet is realized lazily, so
/// there is no declared upper bound.
using Symbol = std::uint32_t;

/// A finite conditioning context. The empty word is valid and acts as the
/// length-0 context.
using Word = std::vector<Symbol>;

/// A sample path X_0..X_n (length n+1).
using Sequence = std::vector<Symbol>;

using SeqView = std::span<const Symbol>;

enum class Direction { forward, backward };

struct LoadedSequence {
  Sequence symbols;                      // dense ids, assigned on first appearance
  std::vector<std::int64_t> raw_of_id;   // original file value for each dense id
};

/// Reads whitespace/newline-separated nonnegative decimal integers, in order,
/// no header. Raw values are remapped to dense ids on first appearance.
LoadedSequence read_sequence_file(const std::filesystem::path& path);

/// Writes one symbol per line.
void write_sequence_file(const std::filesystem::path& path, SeqView seq);

std::string word_str(const Word& w);
Word parse_word(const std::string& text);

/// All end positions t with seq[t-|w|+1..t] == w, ascending. The empty word
/// matches every position.
std::vector<std::int64_t> occurrence_ends(SeqView seq, const Word& w);

/// Successive end positions of w strictly after (forward) or strictly before
/// (backward) the anchor, ordered by increasing distance. Empty when no
/// further occurrence exists.
std::vector<std::int64_t> occurrence_times(SeqView seq, const Word& w,
                                           std::int64_t anchor, Direction dir);

/// Counts of the symbol immediately following each occurrence of w (occurrences
/// ending at the last position have no successor and are skipped).
std::map<Symbol, std::int64_t> successor_histogram(SeqView seq, const Word& w);

}  // namespace memword
