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

#include "memword/seq.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace memword {

LoadedSequence read_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open sequence file: " + path.string());
  }
  LoadedSequence out;
  std::unordered_map<std::int64_t, Symbol> id_of_raw;
  std::int64_t raw = 0;
  while (in >> raw) {
    if (raw < 0) {
      throw std::runtime_error("negative symbol in " + path.string());
    }
    auto [it, inserted] =
        id_of_raw.try_emplace(raw, static_cast<Symbol>(out.raw_of_id.size()));
    if (inserted) out.raw_of_id.push_back(raw);
    out.symbols.push_back(it->second);
  }
  if (!in.eof()) {
    throw std::runtime_error("malformed token in " + path.string());
  }
  return out;
}

void write_sequence_file(const std::filesystem::path& path, SeqView seq) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write sequence file: " + path.string());
  }
  std::string buf;
  buf.reserve(1 << 16);
  char tmp[16];
  for (Symbol s : seq) {
    auto [p, ec] = std::to_chars(tmp, tmp + sizeof(tmp), s);
    (void)ec;
    buf.append(tmp, p);
    buf.push_back('\n');
    if (buf.size() > (1 << 16) - 32) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

std::string word_str(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(w[i]);
  }
  return s;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::int64_t v = 0;
  while (in >> v) {
    if (v < 0) throw std::invalid_argument("negative symbol in word");
    w.push_back(static_cast<Symbol>(v));
  }
  if (!in.eof()) throw std::invalid_argument("malformed word: " + text);
  return w;
}

std::vector<std::int64_t> occurrence_ends(SeqView seq, const Word& w) {
  std::vector<std::int64_t> ends;
  const std::int64_t len = static_cast<std::int64_t>(seq.size());
  const std::int64_t m = static_cast<std::int64_t>(w.size());
  if (m == 0) {
    ends.resize(seq.size());
    for (std::int64_t t = 0; t < len; ++t) ends[t] = t;
    return ends;
  }
  for (std::int64_t t = m - 1; t < len; ++t) {
    bool match = true;
    for (std::int64_t j = 0; j < m; ++j) {
      if (seq[t - m + 1 + j] != w[j]) {
        match = false;
        break;
      }
    }
    if (match) ends.push_back(t);
  }
  return ends;
}

std::vector<std::int64_t> occurrence_times(SeqView seq, const Word& w,
                                           std::int64_t anchor,
                                           Direction dir) {
  const std::int64_t len = static_cast<std::int64_t>(seq.size());
  const std::int64_t m = static_cast<std::int64_t>(w.size());
  auto matches = [&](std::int64_t t) {
    if (t < m - 1 || t >= len) return false;
    for (std::int64_t j = 0; j < m; ++j) {
      if (seq[t - m + 1 + j] != w[j]) return false;
    }
    return true;
  };
  std::vector<std::int64_t> out;
  if (dir == Direction::forward) {
    for (std::int64_t t = anchor + 1; t < len; ++t) {
      if (matches(t)) out.push_back(t);
    }
  } else {
    for (std::int64_t t = anchor - 1; t >= m - 1; --t) {
      if (matches(t)) out.push_back(t);
    }
  }
  return out;
}

std::map<Symbol, std::int64_t> successor_histogram(SeqView seq, const Word& w) {
  std::map<Symbol, std::int64_t> hist;
  for (std::int64_t t : occurrence_ends(seq, w)) {
    if (t + 1 < static_cast<std::int64_t>(seq.size())) {
      ++hist[seq[t + 1]];
    }
  }
  return hist;
}

}  // namespace memword
