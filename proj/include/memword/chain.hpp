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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "memword/seq.hpp"

namespace memword {

struct ChainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MemoryWordReport {
  std::vector<Word> minimal_words;
  std::int64_t longest_minimal_length = 0;   // the chain's effective order
  std::int64_t shortest_memory_length = 0;
};

/// Unique stationary law of the K-block shift induced by the kernel
/// (row-major [context][symbol], contexts base-A encoded oldest-first).
/// Throws ChainError when the positive-transition graph has more than one
/// recurrent class, i.e. no unique stationary law exists.
std::vector<double> stationary_block_law(std::span<const double> kernel,
                                         std::int64_t order,
                                         std::int64_t alphabet);

/// An explicit finite-alphabet Markov chain of a declared order, with its
/// stationary block law solved at construction. This is the exact ground
/// truth used to verify everything the empirical machinery estimates.
class ExplicitChain {
 public:
  ExplicitChain(std::int64_t order, std::int64_t alphabet,
                std::vector<double> kernel);

  static ExplicitChain from_json_file(const std::filesystem::path& path);
  std::string to_json() const;

  std::int64_t order() const { return order_; }
  std::int64_t alphabet() const { return alphabet_; }
  std::size_t context_count() const { return contexts_; }
  std::span<const double> row(std::size_t context) const;
  std::size_t context_id(const Word& w) const;  // requires |w| == order
  const std::vector<double>& stationary() const { return pi_; }

  /// P(X_0^{|w|-1} = w) under the stationary law. Computed in double
  /// precision; use positive_probability for long paths.
  double word_probability(const Word& w) const;
  bool positive_probability(SeqView w) const;

  /// Exact P(X_1 = x | trailing context w); reads the kernel row when
  /// |w| >= order, marginalizes the stationary law otherwise. Throws
  /// ChainError when p(w) = 0.
  double exact_conditional(const Word& w, Symbol x) const;

  /// True iff conditioning on any positive-probability left extension of w
  /// (up to total length = order, which is exhaustive for an explicit chain)
  /// never moves the next-symbol law by more than the comparison tolerance.
  bool is_memory_word(const Word& w) const;

  /// Enumerates positive-probability words up to the declared order,
  /// classifies them, and reports the minimal ones together with the two
  /// extremal lengths.
  MemoryWordReport memory_word_report() const;

  /// Worst-case conditional gap between length-k contexts and any longer
  /// extension; exactly 0 for k >= the effective order.
  double exact_discrepancy(std::int64_t k) const;

  /// Length of the shortest suffix of seq that is a memory word; the full
  /// length when no suffix qualifies (possible only for paths shorter than
  /// the order). Throws ChainError on zero-probability paths.
  std::int64_t suffix_memory_length(SeqView seq) const;

  /// All positive-probability words of the given length (length <= order+1
  /// kept cheap; longer lengths grow as A^len).
  std::vector<Word> positive_words(std::size_t len) const;

  /// Conditional comparison tolerance used by the memory-word classifier.
  static constexpr double kConditionalTol = 1e-9;

 private:
  std::int64_t order_ = 0;
  std::int64_t alphabet_ = 0;
  std::size_t contexts_ = 1;  // alphabet^order
  std::vector<double> kernel_;
  std::vector<double> pi_;
};

}  // namespace memword
