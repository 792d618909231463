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

#ifndef ACQST_COMMON_H
#define ACQST_COMMON_H

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace acqst {

using Complex = std::complex<double>;

/// Outcome words and masks. Measured qubits occupy the high bits, auxiliary
/// bits the low bits; q1 is the most significant measured bit and f1 sits at
/// bit position n_f - 1.
using Word = std::uint64_t;

inline constexpr int kMaxWordBits = 64;

inline int popcount(Word w) { return std::popcount(w); }
inline int parity(Word w) { return std::popcount(w) & 1; }

/// Bit position of measured qubit k (1-based) inside an n-bit basis index.
inline constexpr int qubit_bit(int n, int k) { return n - k; }

/// Bit of qubit k (1-based) in basis index `index` of an n-qubit register.
inline constexpr int qubit_value(Word index, int n, int k) {
    return static_cast<int>((index >> qubit_bit(n, k)) & 1u);
}

inline std::string to_bitstring(Word w, int width) {
    std::string s(static_cast<size_t>(width), '0');
    for (int b = 0; b < width; b++) {
        if ((w >> b) & 1u) {
            s[static_cast<size_t>(width - 1 - b)] = '1';
        }
    }
    return s;
}

inline Word from_bitstring(const std::string &s) {
    if (s.empty() || s.size() > static_cast<size_t>(kMaxWordBits)) {
        throw std::invalid_argument("bitstring length out of range: '" + s + "'");
    }
    Word w = 0;
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("not a bitstring: '" + s + "'");
        }
        w = (w << 1) | static_cast<Word>(c == '1');
    }
    return w;
}

}  // namespace acqst

#endif  // ACQST_COMMON_H
