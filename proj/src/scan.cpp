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

#include "memword/scan.hpp"

#include <cassert>
#include <cstdlib>
#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#define MEMWORD_X86 1
#include <immintrin.h>
#else
#define MEMWORD_X86 0
#endif

namespace memword::scan {

namespace {

inline void clamp_range(SeqView seq, SeqView word, std::int64_t& lo,
                        std::int64_t& hi) {
  const std::int64_t m = static_cast<std::int64_t>(word.size());
  if (lo < m - 1) lo = m - 1;
  const std::int64_t last = static_cast<std::int64_t>(seq.size()) - 1;
  if (hi > last) hi = last;
}

}  // namespace

std::int64_t count_occurrences_scalar(SeqView seq, SeqView word,
                                      std::int64_t lo, std::int64_t hi) {
  assert(!word.empty());
  clamp_range(seq, word, lo, hi);
  const std::int64_t m = static_cast<std::int64_t>(word.size());
  std::int64_t count = 0;
  for (std::int64_t t = lo; t <= hi; ++t) {
    const Symbol* p = seq.data() + (t - m + 1);
    bool match = true;
    for (std::int64_t j = 0; j < m; ++j) {
      if (p[j] != word[j]) {
        match = false;
        break;
      }
    }
    count += match;
  }
  return count;
}

#if MEMWORD_X86

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

// Vectorized over 8 consecutive end positions: one compare per word symbol,
// AND-combined, then a popcount of the lane mask.
__attribute__((target("avx2"))) std::int64_t count_occurrences_avx2(
    SeqView seq, SeqView word, std::int64_t lo, std::int64_t hi) {
  assert(!word.empty());
  clamp_range(seq, word, lo, hi);
  const std::int64_t m = static_cast<std::int64_t>(word.size());
  std::int64_t count = 0;
  std::int64_t t = lo;
  for (; t + 7 <= hi; t += 8) {
    const Symbol* base = seq.data() + (t - m + 1);
    __m256i acc = _mm256_set1_epi32(-1);
    for (std::int64_t j = 0; j < m; ++j) {
      const __m256i lane =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base + j));
      const __m256i ref = _mm256_set1_epi32(static_cast<int>(word[j]));
      acc = _mm256_and_si256(acc, _mm256_cmpeq_epi32(lane, ref));
    }
    const unsigned mask =
        static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(acc)));
    count += __builtin_popcount(mask);
  }
  if (t <= hi) count += count_occurrences_scalar(seq, word, t, hi);
  return count;
}

#else

bool avx2_supported() { return false; }

std::int64_t count_occurrences_avx2(SeqView, SeqView, std::int64_t,
                                    std::int64_t) {
  throw std::runtime_error("AVX2 backend not available on this platform");
}

#endif

namespace {

Backend pick_default_backend() {
  if (const char* env = std::getenv("MEMWORD_SCAN_BACKEND")) {
    const std::string_view v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = pick_default_backend();

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) {
    throw std::runtime_error("AVX2 not supported on this CPU");
  }
  g_backend = b;
}

std::int64_t count_occurrences(SeqView seq, SeqView word, std::int64_t lo,
                               std::int64_t hi) {
  if (g_backend == Backend::avx2) {
    return count_occurrences_avx2(seq, word, lo, hi);
  }
  return count_occurrences_scalar(seq, word, lo, hi);
}

}  // namespace memword::scan
