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

#include <doctest.h>

#include <cmath>
#include <set>

#include "memword/chain.hpp"
#include "memword/processes.hpp"
#include "memword/seq.hpp"

using namespace memword;

namespace {

// rows (0.9, 0.1) and (0.2, 0.8)
ExplicitChain order1_chain() {
  return ExplicitChain(1, 2, {0.9, 0.1, 0.2, 0.8});
}

// p(1 | . 1) = 0.5, p(1 | 0 0) = 0.1, p(1 | 1 0) = 0.9
ExplicitChain order2_vlmc() {
  return ExplicitChain(2, 2,
                       {0.9, 0.1,    // context 0 0
                        0.5, 0.5,    // context 0 1
                        0.1, 0.9,    // context 1 0
                        0.5, 0.5});  // context 1 1
}

}  // namespace

TEST_CASE("stationary block law") {
  const auto fair = stationary_block_law(std::vector<double>{0.5, 0.5, 0.5, 0.5}, 1, 2);
  CHECK(fair[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fair[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto skew = stationary_block_law(std::vector<double>{0.9, 0.1, 0.2, 0.8}, 1, 2);
  CHECK(std::fabs(skew[0] - 2.0 / 3.0) < 1e-12);
  CHECK(std::fabs(skew[1] - 1.0 / 3.0) < 1e-12);

  CHECK_THROWS_AS(
      stationary_block_law(std::vector<double>{1.0, 0.0, 0.0, 1.0}, 1, 2),
      ChainError);
}

TEST_CASE("kernel validation") {
  CHECK_THROWS_AS(ExplicitChain(1, 2, {0.9, 0.2, 0.2, 0.8}), ChainError);
  CHECK_THROWS_AS(ExplicitChain(1, 2, {1.1, -0.1, 0.2, 0.8}), ChainError);
  CHECK_THROWS_AS(ExplicitChain(10, 4, std::vector<double>(100, 0.0)),
                  ChainError);  // alphabet^order over the enumeration cap
}

TEST_CASE("exact conditionals") {
  const ExplicitChain chain = order1_chain();
  CHECK(chain.exact_conditional(Word{0}, 0) == 0.9);
  CHECK(std::fabs(chain.exact_conditional(Word{}, 0) - 2.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(chain.exact_conditional(Word{2}, 0), ChainError);

  // conditioning deeper than the order reads the same kernel row
  CHECK(chain.exact_conditional(Word{1, 1, 0}, 0) == 0.9);
}

TEST_CASE("memory word classification") {
  const ExplicitChain order1 = order1_chain();
  CHECK(order1.is_memory_word(Word{0}));
  CHECK(order1.is_memory_word(Word{1}));
  CHECK(!order1.is_memory_word(Word{}));

  const ExplicitChain vlmc = order2_vlmc();
  CHECK(vlmc.is_memory_word(Word{1}));
  CHECK(!vlmc.is_memory_word(Word{0}));

  const ExplicitChain iid(0, 2, {0.3, 0.7});
  CHECK(iid.is_memory_word(Word{}));
}

TEST_CASE("memory word report") {
  const MemoryWordReport vlmc = order2_vlmc().memory_word_report();
  CHECK(std::set<Word>(vlmc.minimal_words.begin(), vlmc.minimal_words.end()) ==
        std::set<Word>{{1}, {0, 0}, {1, 0}});
  CHECK(vlmc.longest_minimal_length == 2);
  CHECK(vlmc.shortest_memory_length == 1);

  const MemoryWordReport order1 = order1_chain().memory_word_report();
  CHECK(std::set<Word>(order1.minimal_words.begin(),
                       order1.minimal_words.end()) ==
        std::set<Word>{{0}, {1}});
  CHECK(order1.longest_minimal_length == 1);
  CHECK(order1.shortest_memory_length == 1);

  const MemoryWordReport iid = ExplicitChain(0, 3, {0.2, 0.3, 0.5})
                                   .memory_word_report();
  CHECK(iid.minimal_words == std::vector<Word>{{}});
  CHECK(iid.longest_minimal_length == 0);
  CHECK(iid.shortest_memory_length == 0);
}

TEST_CASE("a declared order above the effective one is detected") {
  // rows ignore the second-back symbol entirely
  const ExplicitChain chain(2, 2,
                            {0.7, 0.3,    // 0 0
                             0.4, 0.6,    // 0 1
                             0.7, 0.3,    // 1 0
                             0.4, 0.6});  // 1 1
  CHECK(chain.memory_word_report().longest_minimal_length == 1);
  CHECK(chain.exact_discrepancy(1) == 0.0);
}

TEST_CASE("exact discrepancies") {
  const ExplicitChain order1 = order1_chain();
  CHECK(std::fabs(order1.exact_discrepancy(0) - 7.0 / 15.0) < 1e-12);
  CHECK(order1.exact_discrepancy(1) == 0.0);
  CHECK(order1.exact_discrepancy(5) == 0.0);

  const ExplicitChain vlmc = order2_vlmc();
  CHECK(vlmc.exact_discrepancy(1) > 0.0);
  CHECK(vlmc.exact_discrepancy(2) == 0.0);
}

TEST_CASE("discrepancy vanishes exactly when every k-word is a memory word") {
  const ExplicitChain chains[] = {order1_chain(), order2_vlmc(),
                                  ExplicitChain(0, 2, {0.5, 0.5})};
  for (const ExplicitChain& chain : chains) {
    for (std::int64_t k = 0; k <= chain.order(); ++k) {
      bool all_memory = true;
      for (const Word& w : chain.positive_words(static_cast<std::size_t>(k))) {
        all_memory = all_memory && chain.is_memory_word(w);
      }
      CHECK((chain.exact_discrepancy(k) == 0.0) == all_memory);
    }
  }
}

TEST_CASE("left extensions of memory words stay memory words") {
  const ExplicitChain chains[] = {order1_chain(), order2_vlmc()};
  for (const ExplicitChain& chain : chains) {
    for (std::size_t len = 0;
         len <= static_cast<std::size_t>(chain.order()) + 1; ++len) {
      for (const Word& w : chain.positive_words(len)) {
        if (w.empty()) continue;
        const Word suffix(w.begin() + 1, w.end());
        if (chain.is_memory_word(suffix)) {
          CHECK(chain.is_memory_word(w));
        }
      }
    }
  }
}

TEST_CASE("suffix memory length") {
  const ExplicitChain vlmc = order2_vlmc();
  CHECK(vlmc.suffix_memory_length(Sequence{0, 0, 1}) == 1);
  CHECK(vlmc.suffix_memory_length(Sequence{0, 1, 0, 0}) == 2);

  const ExplicitChain iid(0, 2, {0.5, 0.5});
  CHECK(iid.suffix_memory_length(Sequence{0, 1, 1}) == 0);

  const ExplicitChain sticky(1, 2, {1.0, 0.0, 0.5, 0.5});
  CHECK_THROWS_AS(sticky.suffix_memory_length(Sequence{0, 1}), ChainError);
}

TEST_CASE("letters after a memory word are iid with the exact conditional") {
  const ExplicitChain vlmc = order2_vlmc();
  const Sequence path = sample_explicit(vlmc, 100000, 12345);
  const Word w{1};  // a memory word
  const auto hist = successor_histogram(path, w);
  std::int64_t total = 0;
  for (const auto& [sym, cnt] : hist) total += cnt;
  REQUIRE(total > 1000);
  for (Symbol y : {Symbol{0}, Symbol{1}}) {
    const double freq = hist.count(y)
                            ? static_cast<double>(hist.at(y)) / static_cast<double>(total)
                            : 0.0;
    CHECK(std::fabs(freq - vlmc.exact_conditional(w, y)) < 0.03);
  }
}
