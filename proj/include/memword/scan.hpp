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

#include "memword/seq.hpp"

// Windowed occurrence counting over symbol arrays. A scalar reference kernel
// and an AVX2 variant are both compiled in; the active one is selected at
// runtime (CPU probe, overridable via MEMWORD_SCAN_BACKEND=scalar|avx2).
// The variants are equivalence-tested against each other and against a naive
// nested loop in the test suite.

namespace memword::scan {

enum class Backend { scalar, avx2 };

Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unsupported here
bool avx2_supported();

/// Number of end positions t in [lo, hi] with seq[t-|w|+1..t] == w.
/// Requires |w| >= 1; lo is clamped to |w|-1 and hi to the last index.
std::int64_t count_occurrences(SeqView seq, SeqView word, std::int64_t lo,
                               std::int64_t hi);

std::int64_t count_occurrences_scalar(SeqView seq, SeqView word,
                                      std::int64_t lo, std::int64_t hi);
std::int64_t count_occurrences_avx2(SeqView seq, SeqView word, std::int64_t lo,
                                    std::int64_t hi);

}  // namespace memword::scan
