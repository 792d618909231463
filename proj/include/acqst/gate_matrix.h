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

#ifndef ACQST_GATE_MATRIX_H
#define ACQST_GATE_MATRIX_H

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqst/common.h"
#include "acqst/gf2.h"
#include "json.hpp"

namespace acqst {

using IndexSeq = std::vector<int>;

/// Symmetric n x n matrix of auxiliary-bit index sequences (1-based indices
/// in 1..n_f). Diagonal (k, k) lists the controlled-S targets of measured
/// qubit k and must be exactly [k]; off-diagonal (a, b) lists the CCZ targets
/// shared by qubits a and b.
///
/// Empty off-diagonal sequences are representable so that invalid circuits
/// can be built and rejected by `validate`.
class GateMatrix {
  public:
    GateMatrix() = default;

    GateMatrix(int n, int n_f, std::vector<std::vector<IndexSeq>> entries)
        : n_(n), n_f_(n_f), entries_(std::move(entries)) {
        if (n < 1) {
            throw std::invalid_argument("gate matrix needs at least one qubit");
        }
        if (n_f < n) {
            throw std::invalid_argument("auxiliary count must be at least the qubit count");
        }
        if (n + n_f > kMaxWordBits) {
            throw std::invalid_argument("qubit plus auxiliary count exceeds 64");
        }
        if (entries_.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("gate matrix row count does not match n");
        }
        for (int r = 0; r < n; r++) {
            if (entries_[r].size() != static_cast<std::size_t>(n)) {
                throw std::invalid_argument("gate matrix column count does not match n");
            }
            for (int c = 0; c < n; c++) {
                const IndexSeq &seq = entries_[r][c];
                for (int idx : seq) {
                    if (idx < 1 || idx > n_f) {
                        throw std::invalid_argument("auxiliary index " + std::to_string(idx) +
                                                    " outside 1.." + std::to_string(n_f));
                    }
                }
                IndexSeq sorted = seq;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                    throw std::invalid_argument("repeated auxiliary index in one sequence");
                }
            }
            if (entries_[r][r] != IndexSeq{r + 1}) {
                throw std::invalid_argument("diagonal entry " + std::to_string(r + 1) + " must be [" +
                                            std::to_string(r + 1) + "]");
            }
        }
        for (int r = 0; r < n; r++) {
            for (int c = r + 1; c < n; c++) {
                IndexSeq a = entries_[r][c];
                IndexSeq b = entries_[c][r];
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b) {
                    throw std::invalid_argument("gate matrix is not symmetric");
                }
            }
        }
    }

    int n() const { return n_; }
    int n_f() const { return n_f_; }
    /// Zero-based access.
    const IndexSeq &at(int r, int c) const { return entries_[r][c]; }
    const std::vector<std::vector<IndexSeq>> &entries() const { return entries_; }

    bool operator==(const GateMatrix &) const = default;

  private:
    int n_ = 0;
    int n_f_ = 0;
    std::vector<std::vector<IndexSeq>> entries_;
};

/// Gate matrix with each sequence packed into an n_f-bit word. Auxiliary index
/// k maps to bit position n_f - k, so index 1 is the most significant bit.
struct BinaryGateMatrix {
    int n = 0;
    int n_f = 0;
    std::vector<std::vector<Word>> rows;

    Word at(int r, int c) const { return rows[r][c]; }
};

inline Word aux_bit(int n_f, int index) { return Word{1} << (n_f - index); }

inline BinaryGateMatrix to_binary(const GateMatrix &gm) {
    BinaryGateMatrix b{gm.n(), gm.n_f(), std::vector<std::vector<Word>>(gm.n(), std::vector<Word>(gm.n(), 0))};
    for (int r = 0; r < gm.n(); r++) {
        for (int c = 0; c < gm.n(); c++) {
            for (int idx : gm.at(r, c)) {
                if (idx < 1 || idx > gm.n_f()) {
                    throw std::invalid_argument("auxiliary index out of range");
                }
                b.rows[r][c] |= aux_bit(gm.n_f(), idx);
            }
        }
    }
    return b;
}

inline std::vector<int> cyclic_generator_row(int n) {
    if (n < 2) {
        throw std::invalid_argument("cyclic construction needs n >= 2");
    }
    std::vector<int> row;
    for (int k = 1; k <= n; k++) {
        row.push_back(k);
        if (k < n) {
            row.push_back(n + k);
        }
    }
    return row;
}

/// Generator row stacked with its n - 1 left cyclic shifts, truncated to the
/// first n columns. n_f = 2n - 1.
inline GateMatrix build_cyclic_gate_matrix(int n) {
    std::vector<int> g = cyclic_generator_row(n);
    int len = static_cast<int>(g.size());
    std::vector<std::vector<IndexSeq>> e(n, std::vector<IndexSeq>(n));
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            e[r][c] = {g[(r + c) % len]};
        }
    }
    return GateMatrix(n, len, e);
}

/// Diagonal k holds [k]; every upper-triangular cell gets its own fresh index.
inline GateMatrix build_max_single_gate_matrix(int n) {
    if (n < 1) {
        throw std::invalid_argument("max-single construction needs n >= 1");
    }
    std::vector<std::vector<IndexSeq>> e(n, std::vector<IndexSeq>(n));
    int next = n;
    for (int r = 0; r < n; r++) {
        e[r][r] = {r + 1};
        for (int c = r + 1; c < n; c++) {
            next++;
            e[r][c] = {next};
            e[c][r] = {next};
        }
    }
    return GateMatrix(n, next, e);
}

struct ValidationResult {
    bool valid = true;
    /// Lexicographically smallest failing row subset, 1-based and sorted.
    std::vector<int> failing_rows;
};

inline constexpr int kMaxValidateQubits = 20;

namespace detail {

inline std::vector<int> subset_rows(std::uint32_t mask) {
    std::vector<int> rows;
    for (int r = 0; mask >> r; r++) {
        if ((mask >> r) & 1u) {
            rows.push_back(r + 1);
        }
    }
    return rows;
}

/// Walks every non-empty subset of the leading k rows in Gray-code order and
/// checks the leading k columns of the XOR-combined row. With `first_only`
/// the walk stops at the first failure.
inline ValidationResult validate_leading(const BinaryGateMatrix &b, int k, bool first_only) {
    ValidationResult res;
    std::vector<Word> combined(static_cast<std::size_t>(k), 0);
    std::uint32_t total = std::uint32_t{1} << k;
    std::uint32_t prev_gray = 0;
    for (std::uint32_t step = 1; step < total; step++) {
        std::uint32_t gray = step ^ (step >> 1);
        int flipped = std::countr_zero(gray ^ prev_gray);
        prev_gray = gray;
        for (int c = 0; c < k; c++) {
            combined[c] ^= b.rows[flipped][c];
        }
        if (gf2_independent(combined)) {
            continue;
        }
        std::vector<int> rows = subset_rows(gray);
        if (res.valid || rows < res.failing_rows) {
            res.failing_rows = std::move(rows);
        }
        res.valid = false;
        if (first_only) {
            break;
        }
    }
    return res;
}

}  // namespace detail

/// A binary gate matrix is valid when, for every non-empty subset S of rows,
/// the n words obtained by XOR-ing the rows in S column by column are
/// linearly independent over GF(2).
inline ValidationResult validate(const BinaryGateMatrix &b) {
    if (b.n > kMaxValidateQubits) {
        throw std::invalid_argument("exhaustive validation limited to n <= 20");
    }
    return detail::validate_leading(b, b.n, false);
}

inline bool is_valid(const BinaryGateMatrix &b) {
    if (b.n > kMaxValidateQubits) {
        throw std::invalid_argument("exhaustive validation limited to n <= 20");
    }
    return detail::validate_leading(b, b.n, true).valid;
}

inline ValidationResult validate(const GateMatrix &gm) { return validate(to_binary(gm)); }
inline bool is_valid(const GateMatrix &gm) { return is_valid(to_binary(gm)); }

enum class SearchStatus { Found, ProvenAbsent, BudgetExhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::ProvenAbsent;
    std::optional<GateMatrix> matrix;
    std::uint64_t nodes = 0;
};

inline const char *to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found:
            return "found";
        case SearchStatus::ProvenAbsent:
            return "proven-absent";
        case SearchStatus::BudgetExhausted:
            return "budget-exhausted";
    }
    return "?";
}

inline constexpr int kMaxSearchQubits = 5;

/// Backtracking search over single-index gate matrices with diagonal 1..n.
/// Upper cells are filled column by column; once column k is complete the
/// leading k x k block is validated, which is a necessary condition for the
/// full matrix.
inline SearchResult search_gate_matrix(int n, int n_f, std::uint64_t node_budget) {
    if (n < 1 || n > kMaxSearchQubits) {
        throw std::invalid_argument("search supports 1 <= n <= 5");
    }
    if (n_f < n || n + n_f > kMaxWordBits) {
        throw std::invalid_argument("auxiliary count out of range for search");
    }
    BinaryGateMatrix b{n, n_f, std::vector<std::vector<Word>>(n, std::vector<Word>(n, 0))};
    std::vector<std::vector<int>> idx(n, std::vector<int>(n, 0));
    for (int k = 0; k < n; k++) {
        b.rows[k][k] = aux_bit(n_f, k + 1);
        idx[k][k] = k + 1;
    }
    std::vector<std::pair<int, int>> cells;
    for (int c = 1; c < n; c++) {
        for (int r = 0; r < c; r++) {
            cells.emplace_back(r, c);
        }
    }
    SearchResult result;
    bool budget_hit = false;

    auto recurse = [&](auto &&self, std::size_t pos) -> bool {
        if (pos == cells.size()) {
            return detail::validate_leading(b, n, true).valid;
        }
        auto [r, c] = cells[pos];
        for (int v = 1; v <= n_f; v++) {
            if (result.nodes >= node_budget) {
                budget_hit = true;
                return false;
            }
            result.nodes++;
            b.rows[r][c] = b.rows[c][r] = aux_bit(n_f, v);
            idx[r][c] = idx[c][r] = v;
            bool column_done = r + 1 == c;
            if (column_done && !detail::validate_leading(b, c + 1, true).valid) {
                continue;
            }
            if (self(self, pos + 1)) {
                return true;
            }
            if (budget_hit) {
                return false;
            }
        }
        b.rows[r][c] = b.rows[c][r] = 0;
        return false;
    };

    if (recurse(recurse, 0)) {
        std::vector<std::vector<IndexSeq>> e(n, std::vector<IndexSeq>(n));
        for (int r = 0; r < n; r++) {
            for (int c = 0; c < n; c++) {
                e[r][c] = {idx[r][c]};
            }
        }
        result.status = SearchStatus::Found;
        result.matrix = GateMatrix(n, n_f, e);
    } else {
        result.status = budget_hit ? SearchStatus::BudgetExhausted : SearchStatus::ProvenAbsent;
    }
    return result;
}

inline nlohmann::json to_json(const GateMatrix &gm) {
    return {{"n", gm.n()}, {"n_f", gm.n_f()}, {"entries", gm.entries()}};
}

inline GateMatrix gate_matrix_from_json(const nlohmann::json &j) {
    return GateMatrix(j.at("n").get<int>(), j.at("n_f").get<int>(),
                      j.at("entries").get<std::vector<std::vector<IndexSeq>>>());
}

}  // namespace acqst

#endif  // ACQST_GATE_MATRIX_H
