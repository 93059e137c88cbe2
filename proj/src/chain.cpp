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

#include "memword/chain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace memword {

namespace {

constexpr std::size_t kMaxContexts = 512;

std::size_t checked_context_count(std::int64_t order, std::int64_t alphabet) {
  if (order < 0) throw ChainError("order must be nonnegative");
  if (alphabet < 1) throw ChainError("alphabet must be positive");
  std::size_t contexts = 1;
  for (std::int64_t i = 0; i < order; ++i) {
    contexts *= static_cast<std::size_t>(alphabet);
    if (contexts > kMaxContexts) {
      throw ChainError("kernel too large: alphabet^order exceeds " +
                       std::to_string(kMaxContexts));
    }
  }
  return contexts;
}

// Unique recurrent class of the positive-transition graph, or an error.
// Communication is decided by pairwise reachability; a class is recurrent
// when no positive edge leaves it.
std::vector<std::size_t> recurrent_class(std::span<const double> kernel,
                                         std::size_t contexts,
                                         std::size_t alphabet,
                                         std::size_t tail_mod) {
  const std::size_t n = contexts;
  auto step = [&](std::size_t s, std::size_t y) {
    return (s % tail_mod) * alphabet + y;
  };
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack = {s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < alphabet; ++y) {
        if (kernel[v * alphabet + y] > 0.0) {
          const std::size_t w = step(v, y);
          if (!reach[s][w]) {
            reach[s][w] = true;
            stack.push_back(w);
          }
        }
      }
    }
  }
  std::vector<int> cls(n, -1);
  int n_classes = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] >= 0) continue;
    const int c = n_classes++;
    for (std::size_t t = s; t < n; ++t) {
      if (reach[s][t] && reach[t][s]) cls[t] = c;
    }
  }
  std::vector<bool> closed(static_cast<std::size_t>(n_classes), true);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t y = 0; y < alphabet; ++y) {
      if (kernel[s * alphabet + y] > 0.0 &&
          cls[step(s, y)] != cls[s]) {
        closed[static_cast<std::size_t>(cls[s])] = false;
      }
    }
  }
  std::vector<int> recurrent;
  for (int c = 0; c < n_classes; ++c) {
    if (closed[static_cast<std::size_t>(c)]) recurrent.push_back(c);
  }
  if (recurrent.size() != 1) {
    throw ChainError("reducible kernel: " + std::to_string(recurrent.size()) +
                     " recurrent classes, stationary law is not unique");
  }
  std::vector<std::size_t> members;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] == recurrent[0]) members.push_back(s);
  }
  return members;
}

}  // namespace

std::vector<double> stationary_block_law(std::span<const double> kernel,
                                         std::int64_t order,
                                         std::int64_t alphabet) {
  const std::size_t contexts = checked_context_count(order, alphabet);
  const std::size_t a = static_cast<std::size_t>(alphabet);
  if (kernel.size() != contexts * a) {
    throw ChainError("kernel size does not match alphabet^order rows");
  }
  for (std::size_t s = 0; s < contexts; ++s) {
    double sum = 0.0;
    for (std::size_t y = 0; y < a; ++y) {
      const double p = kernel[s * a + y];
      if (p < 0.0) throw ChainError("negative kernel entry");
      sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12) {
      throw ChainError("kernel row " + std::to_string(s) +
                       " sums to " + std::to_string(sum));
    }
  }
  if (order == 0) return {1.0};

  const std::size_t tail_mod = contexts / a;  // alphabet^(order-1)
  const auto members =
      recurrent_class(kernel, contexts, a, tail_mod);
  const std::size_t r = members.size();
  std::vector<std::int64_t> local(contexts, -1);
  for (std::size_t i = 0; i < r; ++i) local[members[i]] = static_cast<std::int64_t>(i);

  // Solve pi P = pi, sum pi = 1 on the recurrent class: rows of
  // (P^T - I), with the last equation replaced by normalization.
  std::vector<double> mat(r * r, 0.0);
  std::vector<double> rhs(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t s = members[i];
    for (std::size_t y = 0; y < a; ++y) {
      const double p = kernel[s * a + y];
      if (p > 0.0) {
        const std::size_t t = (s % tail_mod) * a + y;
        mat[static_cast<std::size_t>(local[t]) * r + i] += p;
      }
    }
    mat[i * r + i] -= 1.0;
  }
  for (std::size_t j = 0; j < r; ++j) mat[(r - 1) * r + j] = 1.0;
  rhs[r - 1] = 1.0;

  // Gaussian elimination with partial pivoting.
  std::vector<double> x(rhs);
  for (std::size_t col = 0; col < r; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < r; ++i) {
      if (std::fabs(mat[i * r + col]) > std::fabs(mat[piv * r + col])) piv = i;
    }
    if (std::fabs(mat[piv * r + col]) < 1e-14) {
      throw ChainError("singular stationary system");
    }
    if (piv != col) {
      for (std::size_t j = 0; j < r; ++j) std::swap(mat[piv * r + j], mat[col * r + j]);
      std::swap(x[piv], x[col]);
    }
    for (std::size_t i = col + 1; i < r; ++i) {
      const double f = mat[i * r + col] / mat[col * r + col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < r; ++j) mat[i * r + j] -= f * mat[col * r + j];
      x[i] -= f * x[col];
    }
  }
  for (std::size_t i = r; i-- > 0;) {
    double v = x[i];
    for (std::size_t j = i + 1; j < r; ++j) v -= mat[i * r + j] * x[j];
    x[i] = v / mat[i * r + i];
  }

  std::vector<double> pi(contexts, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    const double v = std::max(x[i], 0.0);
    pi[members[i]] = v;
    total += v;
  }
  for (double& v : pi) v /= total;

  // residual check against the block shift
  double residual = 0.0;
  std::vector<double> next(contexts, 0.0);
  for (std::size_t s = 0; s < contexts; ++s) {
    if (pi[s] == 0.0) continue;
    for (std::size_t y = 0; y < a; ++y) {
      next[(s % tail_mod) * a + y] += pi[s] * kernel[s * a + y];
    }
  }
  for (std::size_t s = 0; s < contexts; ++s) {
    residual = std::max(residual, std::fabs(next[s] - pi[s]));
  }
  if (residual > 1e-12) {
    throw ChainError("stationary solve residual " + std::to_string(residual));
  }
  return pi;
}

ExplicitChain::ExplicitChain(std::int64_t order, std::int64_t alphabet,
                             std::vector<double> kernel)
    : order_(order),
      alphabet_(alphabet),
      contexts_(checked_context_count(order, alphabet)),
      kernel_(std::move(kernel)) {
  pi_ = stationary_block_law(kernel_, order_, alphabet_);
}

std::span<const double> ExplicitChain::row(std::size_t context) const {
  return {kernel_.data() + context * static_cast<std::size_t>(alphabet_),
          static_cast<std::size_t>(alphabet_)};
}

std::size_t ExplicitChain::context_id(const Word& w) const {
  if (static_cast<std::int64_t>(w.size()) != order_) {
    throw ChainError("context length must equal the order");
  }
  std::size_t id = 0;
  for (Symbol s : w) {
    if (static_cast<std::int64_t>(s) >= alphabet_) {
      throw ChainError("symbol outside the alphabet");
    }
    id = id * static_cast<std::size_t>(alphabet_) + s;
  }
  return id;
}

double ExplicitChain::word_probability(const Word& w) const {
  const std::size_t m = w.size();
  const std::size_t a = static_cast<std::size_t>(alphabet_);
  for (Symbol s : w) {
    if (static_cast<std::int64_t>(s) >= alphabet_) return 0.0;
  }
  if (m == 0) return 1.0;
  if (static_cast<std::int64_t>(m) <= order_) {
    std::size_t mod = 1;
    for (std::size_t i = 0; i < m; ++i) mod *= a;
    std::size_t target = 0;
    for (Symbol s : w) target = target * a + s;
    double p = 0.0;
    for (std::size_t ctx = target; ctx < contexts_; ctx += mod) p += pi_[ctx];
    return p;
  }
  std::size_t ctx = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) {
    ctx = ctx * a + w[i];
  }
  double p = pi_[ctx];
  const std::size_t tail_mod = order_ > 0 ? contexts_ / a : 1;
  for (std::size_t j = static_cast<std::size_t>(order_); j < m; ++j) {
    if (p == 0.0) return 0.0;
    p *= kernel_[ctx * a + w[j]];
    ctx = order_ > 0 ? (ctx % tail_mod) * a + w[j] : 0;
  }
  return p;
}

bool ExplicitChain::positive_probability(SeqView w) const {
  const std::size_t m = w.size();
  const std::size_t a = static_cast<std::size_t>(alphabet_);
  for (Symbol s : w) {
    if (static_cast<std::int64_t>(s) >= alphabet_) return false;
  }
  if (m == 0) return true;
  if (static_cast<std::int64_t>(m) <= order_) {
    return word_probability(Word(w.begin(), w.end())) > 0.0;
  }
  std::size_t ctx = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(order_); ++i) {
    ctx = ctx * a + w[i];
  }
  if (pi_[ctx] <= 0.0) return false;
  const std::size_t tail_mod = order_ > 0 ? contexts_ / a : 1;
  for (std::size_t j = static_cast<std::size_t>(order_); j < m; ++j) {
    if (kernel_[ctx * a + w[j]] <= 0.0) return false;
    ctx = order_ > 0 ? (ctx % tail_mod) * a + w[j] : 0;
  }
  return true;
}

double ExplicitChain::exact_conditional(const Word& w, Symbol x) const {
  if (static_cast<std::int64_t>(x) >= alphabet_) {
    throw ChainError("symbol outside the alphabet");
  }
  const std::size_t m = w.size();
  if (static_cast<std::int64_t>(m) >= order_) {
    if (!positive_probability(w)) {
      throw ChainError("zero-probability conditioning word");
    }
    Word tail(w.end() - static_cast<std::ptrdiff_t>(order_), w.end());
    return kernel_[context_id(tail) * static_cast<std::size_t>(alphabet_) + x];
  }
  const double pw = word_probability(w);
  if (pw <= 0.0) throw ChainError("zero-probability conditioning word");
  Word wx = w;
  wx.push_back(x);
  return word_probability(wx) / pw;
}

bool ExplicitChain::is_memory_word(const Word& w) const {
  if (!positive_probability(w)) {
    throw ChainError("zero-probability word");
  }
  const std::size_t m = w.size();
  if (static_cast<std::int64_t>(m) >= order_) return true;

  std::vector<double> base(static_cast<std::size_t>(alphabet_));
  for (std::int64_t y = 0; y < alphabet_; ++y) {
    base[static_cast<std::size_t>(y)] =
        exact_conditional(w, static_cast<Symbol>(y));
  }
  const std::size_t a = static_cast<std::size_t>(alphabet_);
  for (std::size_t total = m + 1;
       total <= static_cast<std::size_t>(order_); ++total) {
    const std::size_t ext = total - m;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < ext; ++i) combos *= a;
    for (std::size_t code = 0; code < combos; ++code) {
      Word u(total);
      std::size_t c = code;
      for (std::size_t i = ext; i-- > 0;) {
        u[i] = static_cast<Symbol>(c % a);
        c /= a;
      }
      std::copy(w.begin(), w.end(), u.begin() + static_cast<std::ptrdiff_t>(ext));
      if (!positive_probability(u)) continue;
      for (std::int64_t y = 0; y < alphabet_; ++y) {
        Word uy = u;
        uy.push_back(static_cast<Symbol>(y));
        if (word_probability(uy) <= 0.0) continue;
        const double q = exact_conditional(u, static_cast<Symbol>(y));
        if (std::fabs(q - base[static_cast<std::size_t>(y)]) >
            kConditionalTol) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<Word> ExplicitChain::positive_words(std::size_t len) const {
  const std::size_t a = static_cast<std::size_t>(alphabet_);
  double combos = 1.0;
  for (std::size_t i = 0; i < len; ++i) combos *= static_cast<double>(a);
  if (combos > 1e5) throw ChainError("too many words to enumerate");
  std::vector<Word> out;
  const std::size_t total = static_cast<std::size_t>(combos);
  for (std::size_t code = 0; code < total; ++code) {
    Word w(len);
    std::size_t c = code;
    for (std::size_t i = len; i-- > 0;) {
      w[i] = static_cast<Symbol>(c % a);
      c /= a;
    }
    if (word_probability(w) > 0.0) out.push_back(std::move(w));
  }
  return out;
}

MemoryWordReport ExplicitChain::memory_word_report() const {
  std::map<Word, bool> memory;
  for (std::size_t len = 0; len <= static_cast<std::size_t>(order_); ++len) {
    for (const Word& w : positive_words(len)) {
      memory[w] = is_memory_word(w);
    }
  }
  MemoryWordReport report;
  std::int64_t shortest = -1;
  for (const auto& [w, is_mem] : memory) {
    if (!is_mem) continue;
    if (shortest < 0 ||
        static_cast<std::int64_t>(w.size()) < shortest) {
      shortest = static_cast<std::int64_t>(w.size());
    }
    bool suffix_is_memory = false;
    for (std::size_t cut = 1; cut <= w.size() && !suffix_is_memory; ++cut) {
      const Word suffix(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
      const auto it = memory.find(suffix);
      if (it != memory.end() && it->second) suffix_is_memory = true;
    }
    if (!suffix_is_memory) {
      report.longest_minimal_length =
          std::max(report.longest_minimal_length,
                   static_cast<std::int64_t>(w.size()));
      report.minimal_words.push_back(w);
    }
  }
  report.shortest_memory_length = std::max<std::int64_t>(shortest, 0);
  return report;
}

double ExplicitChain::exact_discrepancy(std::int64_t k) const {
  if (k < 0) throw ChainError("k must be nonnegative");
  if (k >= order_) return 0.0;
  double best = 0.0;
  for (std::int64_t m = k + 1; m <= order_; ++m) {
    for (const Word& u : positive_words(static_cast<std::size_t>(m))) {
      const Word tail(u.end() - static_cast<std::ptrdiff_t>(k), u.end());
      for (std::int64_t y = 0; y < alphabet_; ++y) {
        Word uy = u;
        uy.push_back(static_cast<Symbol>(y));
        if (word_probability(uy) <= 0.0) continue;
        const double d =
            std::fabs(exact_conditional(tail, static_cast<Symbol>(y)) -
                      exact_conditional(u, static_cast<Symbol>(y)));
        best = std::max(best, d);
      }
    }
  }
  return best;
}

std::int64_t ExplicitChain::suffix_memory_length(SeqView seq) const {
  if (!positive_probability(seq)) {
    throw ChainError("zero-probability sample path");
  }
  const std::int64_t len = static_cast<std::int64_t>(seq.size());
  const std::int64_t cap = std::min(len, order_);
  for (std::int64_t k = 0; k <= cap; ++k) {
    const Word w(seq.end() - k, seq.end());
    if (is_memory_word(w)) return k;
  }
  return len;  // paths shorter than the order may have no memory suffix
}

ExplicitChain ExplicitChain::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ChainError("cannot open chain spec: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ChainError("invalid JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.contains("order") || !doc.contains("alphabet") ||
      !doc.contains("kernel")) {
    throw ChainError("chain spec needs order, alphabet, kernel");
  }
  const std::int64_t order = doc["order"].get<std::int64_t>();
  const std::int64_t alphabet = doc["alphabet"].get<std::int64_t>();
  const std::size_t contexts = checked_context_count(order, alphabet);
  std::vector<double> kernel(contexts * static_cast<std::size_t>(alphabet),
                             -1.0);
  const auto& rows = doc["kernel"];
  if (!rows.is_object()) throw ChainError("kernel must map contexts to rows");
  std::size_t seen = 0;
  for (const auto& [key, value] : rows.items()) {
    Word ctx;
    try {
      ctx = parse_word(key);
    } catch (const std::exception&) {
      throw ChainError("bad context key: " + key);
    }
    if (static_cast<std::int64_t>(ctx.size()) != order) {
      throw ChainError("context key '" + key + "' has wrong length");
    }
    std::size_t id = 0;
    for (Symbol s : ctx) {
      if (static_cast<std::int64_t>(s) >= alphabet) {
        throw ChainError("context key '" + key + "' outside the alphabet");
      }
      id = id * static_cast<std::size_t>(alphabet) + s;
    }
    if (!value.is_array() ||
        value.size() != static_cast<std::size_t>(alphabet)) {
      throw ChainError("row '" + key + "' must list one probability per symbol");
    }
    for (std::size_t y = 0; y < value.size(); ++y) {
      kernel[id * static_cast<std::size_t>(alphabet) + y] =
          value[y].get<double>();
    }
    ++seen;
  }
  if (seen != contexts) {
    throw ChainError("chain spec lists " + std::to_string(seen) +
                     " contexts, expected " + std::to_string(contexts));
  }
  return ExplicitChain(order, alphabet, std::move(kernel));
}

std::string ExplicitChain::to_json() const {
  nlohmann::json doc;
  doc["order"] = order_;
  doc["alphabet"] = alphabet_;
  nlohmann::json rows = nlohmann::json::object();
  const std::size_t a = static_cast<std::size_t>(alphabet_);
  for (std::size_t ctx = 0; ctx < contexts_; ++ctx) {
    Word w(static_cast<std::size_t>(order_));
    std::size_t c = ctx;
    for (std::size_t i = w.size(); i-- > 0;) {
      w[i] = static_cast<Symbol>(c % a);
      c /= a;
    }
    rows[word_str(w)] = std::vector<double>(kernel_.begin() + static_cast<std::ptrdiff_t>(ctx * a),
                                            kernel_.begin() + static_cast<std::ptrdiff_t>((ctx + 1) * a));
  }
  doc["kernel"] = rows;
  return doc.dump(2);
}

}  // namespace memword
