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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "memword/estimator.hpp"
#include "memword/rng.hpp"

using namespace memword;

namespace {

Sequence alternating(std::size_t len) {
  Sequence s(len);
  for (std::size_t i = 0; i < len; ++i) s[i] = static_cast<Symbol>(i % 2);
  return s;
}

// Unpruned reference: every count is a fresh windowed scan, the i-loop runs
// to the formal bound, and nothing is shared with the indexed path.
namespace brute {

std::int64_t count(const Sequence& seq, std::int64_t n, const Word& w,
                   std::int64_t lo, std::int64_t hi) {
  if (w.empty()) return hi - lo + 1;
  const std::int64_t m = static_cast<std::int64_t>(w.size());
  std::int64_t c = 0;
  for (std::int64_t t = std::max(lo, m - 1); t <= std::min(hi, n); ++t) {
    c += std::equal(w.begin(), w.end(), seq.begin() + (t - m + 1));
  }
  return c;
}

double phat(const Sequence& seq, std::int64_t n, const Word& z, Symbol x) {
  std::int64_t numer = 0;
  std::int64_t denom = 0;
  if (z.empty()) {
    numer = count(seq, n, Word{x}, 0, n);
    denom = n + 1;
  } else {
    Word zx = z;
    zx.push_back(x);
    const std::int64_t m = static_cast<std::int64_t>(z.size());
    numer = count(seq, n, zx, m, n);
    denom = count(seq, n, z, m - 1, n - 1);
  }
  const std::int64_t nn = std::max<std::int64_t>(numer - 1, 0);
  const std::int64_t dd = std::max<std::int64_t>(denom - 1, 0);
  return dd == 0 ? 0.0 : static_cast<double>(nn) / static_cast<double>(dd);
}

std::set<Word> support(const Sequence& seq, std::int64_t n, std::int64_t k,
                       double tau) {
  std::set<Word> out;
  const std::int64_t len = k + 1;
  for (std::int64_t t = len - 1; t <= n; ++t) {
    const Word w(seq.begin() + (t - len + 1), seq.begin() + t + 1);
    if (static_cast<double>(count(seq, n, w, len - 1, n)) > tau) {
      out.insert(w);
    }
  }
  return out;
}

double delta(const Sequence& seq, std::int64_t n, std::int64_t k, double tau) {
  double best = 0.0;
  bool any = false;
  for (std::int64_t i = 1; i <= n; ++i) {
    if (k + i + 1 > n + 1) break;  // no window of that length exists
    const auto sup = support(seq, n, k + i, tau);
    if (i == 1 && sup.empty()) return 0.0;  // smallest maximized set empty
    for (const Word& zx : sup) {
      const Word z(zx.begin(), zx.end() - 1);
      const Symbol x = zx.back();
      const Word suffix(z.end() - k, z.end());
      const double d = std::fabs(phat(seq, n, suffix, x) - phat(seq, n, z, x));
      any = true;
      best = std::max(best, d);
    }
  }
  return any ? best : 0.0;
}

std::int64_t chi(const Sequence& seq, std::int64_t n, double gamma,
                 double beta) {
  if (n == 0) return 0;
  const double tau = support_threshold(n, gamma);
  const double thr = decision_threshold(n, beta);
  for (std::int64_t k = 0; k < n; ++k) {
    if (delta(seq, n, k, tau) <= thr) return k;
  }
  return n;
}

}  // namespace brute

}  // namespace

TEST_CASE("empirical conditionals match the worked examples") {
  const Sequence seq = alternating(10);
  const ContextIndex index(seq, 9, support_threshold(9, 0.5));
  CHECK(empirical_conditional(index, Word{0}, 1) == 1.0);
  CHECK(empirical_conditional(index, Word{2, 2}, 0) == 0.0);  // never occurs

  const Sequence rep = {0, 0, 1, 0, 0, 1, 0, 0, 1, 0};
  const ContextIndex index2(rep, 9, support_threshold(9, 0.5));
  CHECK(empirical_conditional(index2, Word{0}, 0) == 0.4);
}

TEST_CASE("support sets match the worked examples") {
  const Sequence seq = alternating(10);
  const ContextIndex index(seq, 9, support_threshold(9, 0.5));
  const auto s1 = support_set(index, 1);
  CHECK(std::set<Word>(s1.begin(), s1.end()) ==
        std::set<Word>{{0, 1}, {1, 0}});
  CHECK(support_set(index, 4).empty());

  const Sequence one = {0};
  const ContextIndex tiny(one, 0, support_threshold(0, 0.5));
  CHECK(support_set(tiny, 1).empty());
  CHECK(support_set(tiny, 3).empty());
}

TEST_CASE("empirical discrepancy on the alternating sequence") {
  const Sequence seq = alternating(10);
  const ContextIndex index(seq, 9, support_threshold(9, 0.5));
  const auto d0 = empirical_discrepancy(index, 0);
  CHECK(d0.value == 5.0 / 9.0);
  REQUIRE(d0.witness.has_value());
  const auto d1 = empirical_discrepancy(index, 1);
  CHECK(d1.value == 0.0);
  CHECK(d1.witness.has_value());  // comparisons existed, all equal
  const auto d9 = empirical_discrepancy(index, 9);
  CHECK(d9.value == 0.0);
  CHECK(!d9.witness.has_value());  // no support set at that depth
}

TEST_CASE("order estimates match the worked examples") {
  const EstimatorParams params(0.5, 0.2);
  {
    const Sequence seq = alternating(10);
    const ContextIndex index = build_index(seq, 9, params);
    CHECK(order_estimate(index, params) == 0);
  }
  {
    const Sequence seq = alternating(100);
    const ContextIndex index = build_index(seq, 99, params);
    CHECK(order_estimate(index, params) == 1);
  }
  {
    const Sequence seq = {0};
    const ContextIndex index = build_index(seq, 0, params);
    CHECK(order_estimate(index, params) == 0);
  }
}

TEST_CASE("order trajectory over explicit checkpoints") {
  const Sequence seq = alternating(100);
  const EstimatorParams params(0.5, 0.2, {9, 99});
  const auto traj = order_trajectory(seq, params);
  REQUIRE(traj.size() == 2);
  CHECK(traj[0].horizon == 9);
  CHECK(traj[0].order == 0);
  CHECK(traj[1].horizon == 99);
  CHECK(traj[1].order == 1);

  const EstimatorParams empty_params(0.5, 0.2, {});
  CHECK(order_trajectory(seq, empty_params).empty());

  const EstimatorParams too_far(0.5, 0.2, {100});
  CHECK_THROWS_AS(order_trajectory(seq, too_far), std::invalid_argument);
}

TEST_CASE("shortest-word plug-in") {
  const EstimatorParams params(0.5, 0.2);
  {
    const Sequence seq = alternating(100);
    const ContextIndex index = build_index(seq, 99, params);
    CHECK(shortest_word_estimate(index, params) == 1);
  }
  {
    // n = 1 with nothing frequent: no word has a comparison, fall back to n
    const Sequence seq = {0, 1};
    const ContextIndex index = build_index(seq, 1, params);
    CHECK(shortest_word_estimate(index, params) == 1);
  }
  {
    // long iid-looking fair coin: the empty word qualifies
    Rng rng(99);
    Sequence seq(20000);
    for (auto& s : seq) s = static_cast<Symbol>(rng.bits() % 2);
    const std::int64_t n = static_cast<std::int64_t>(seq.size()) - 1;
    const ContextIndex index = build_index(seq, n, params);
    CHECK(shortest_word_estimate(index, params) == 0);
  }
}

TEST_CASE("pruned estimation equals the unpruned brute force bit-exactly") {
  Rng rng(2026);
  const double gammas[] = {0.4, 0.5, 0.6};
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t len = 2 + rng.bits() % 119;
    const Symbol alpha = 2 + static_cast<Symbol>(rng.bits() % 2);
    Sequence seq(len);
    for (auto& s : seq) s = static_cast<Symbol>(rng.bits() % alpha);
    const double gamma = gammas[rep % 3];
    const double beta = 0.8 * (1.0 - gamma) / 2.0;
    const EstimatorParams params(gamma, beta);
    const std::int64_t n = static_cast<std::int64_t>(len) - 1;
    const ContextIndex index = build_index(seq, n, params);
    const double tau = support_threshold(n, gamma);

    const auto profile = discrepancy_profile(index);
    for (std::int64_t k = 0;
         k < static_cast<std::int64_t>(profile.size()) + 2; ++k) {
      const double fast = k < static_cast<std::int64_t>(profile.size())
                              ? profile[static_cast<std::size_t>(k)].value
                              : 0.0;
      CHECK(fast == brute::delta(seq, n, k, tau));
    }
    CHECK(order_estimate(index, params) == brute::chi(seq, n, gamma, beta));
  }
}

TEST_CASE("probabilities and discrepancies stay in range") {
  Rng rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t len = 2 + rng.bits() % 200;
    Sequence seq(len);
    for (auto& s : seq) s = static_cast<Symbol>(rng.bits() % 3);
    const std::int64_t n = static_cast<std::int64_t>(len) - 1;
    const EstimatorParams params(0.5, 0.2);
    const ContextIndex index = build_index(seq, n, params);
    for (int q = 0; q < 10; ++q) {
      Word z(rng.bits() % 4);
      for (auto& s : z) s = static_cast<Symbol>(rng.bits() % 3);
      const double p =
          empirical_conditional(index, z, static_cast<Symbol>(rng.bits() % 3));
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
    for (const auto& r : discrepancy_profile(index)) {
      CHECK(r.value >= 0.0);
      CHECK(r.value <= 1.0);
    }
    const std::int64_t chi = order_estimate(index, params);
    CHECK(chi >= 0);
    CHECK(chi <= n);
  }
}

TEST_CASE("raising beta never lowers the order estimate") {
  Rng rng(31);
  for (int rep = 0; rep < 15; ++rep) {
    const std::size_t len = 10 + rng.bits() % 150;
    Sequence seq(len);
    for (auto& s : seq) s = static_cast<Symbol>(rng.bits() % 2);
    const std::int64_t n = static_cast<std::int64_t>(len) - 1;
    std::int64_t prev = -1;
    for (const double beta : {0.05, 0.1, 0.15, 0.2, 0.24}) {
      const EstimatorParams params(0.5, beta);
      const ContextIndex index = build_index(seq, n, params);
      const std::int64_t chi = order_estimate(index, params);
      CHECK(chi >= prev);
      prev = chi;
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(EstimatorParams(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorParams(1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorParams(0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorParams(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EstimatorParams(0.5, 0.2, {5, 5}), std::invalid_argument);
  CHECK_NOTHROW(EstimatorParams(0.5, 0.2, {0, 9, 99}));
}

TEST_CASE("geometric checkpoints") {
  const auto cp = geometric_checkpoints(100, 1.5);
  CHECK(cp.front() == 1);
  CHECK(cp.back() == 100);
  CHECK(std::is_sorted(cp.begin(), cp.end()));
  CHECK(std::adjacent_find(cp.begin(), cp.end()) == cp.end());
  CHECK(geometric_checkpoints(0) == std::vector<std::int64_t>{0});
}
