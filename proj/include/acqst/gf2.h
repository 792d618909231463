// Copyright 2026 The ACQST Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACQST_GF2_H
#define ACQST_GF2_H

#include <bit>
#include <vector>

#include "acqst/common.h"

namespace acqst {

/// Rank over GF(2) of a set of bit words, by elimination on leading bits.
inline int gf2_rank(std::vector<Word> words) {
    int rank = 0;
    for (std::size_t i = 0; i < words.size(); i++) {
        Word pivot = words[i];
        if (pivot == 0) {
            continue;
        }
        rank++;
        Word lead = Word{1} << (63 - std::countl_zero(pivot));
        for (std::size_t k = i + 1; k < words.size(); k++) {
            if (words[k] & lead) {
                words[k] ^= pivot;
            }
        }
    }
    return rank;
}

/// True when no non-empty subset of `words` XORs to zero.
inline bool gf2_independent(const std::vector<Word> &words) {
    return gf2_rank(words) == static_cast<int>(words.size());
}

}  // namespace acqst

#endif  // ACQST_GF2_H
