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

#ifndef ACQST_TOMOGRAPHY_H
#define ACQST_TOMOGRAPHY_H

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqst/common.h"
#include "acqst/density_matrix.h"
#include "acqst/gate_matrix.h"
#include "acqst/parallel.h"
#include "acqst/simulator.h"

namespace acqst {

/// Bit masks that classify outcomes for the density-matrix entry (i, j).
/// The phase of outcome qf is (-1)^popcount(qf & LF) * i^popcount(qf & Lf).
struct MaskPair {
    Word L = 0;   ///< i xor j, n bits.
    Word F1 = 0;  ///< n_f bits.
    Word F2 = 0;  ///< n_f bits.
    Word F = 0;   ///< F1 xor F2.
    Word LF = 0;  ///< (L << n_f) | F.
    Word Lf = 0;  ///< L << (n_f - n).
};

/// Requires the diagonal convention A_kk = [k]; GateMatrix enforces it.
inline MaskPair compute_masks(const BinaryGateMatrix &b, Word i, Word j) {
    Word d = Word{1} << b.n;
    if (!(j < i && i < d)) {
        throw std::invalid_argument("mask indices must satisfy 0 <= j < i < 2^n");
    }
    for (int k = 0; k < b.n; k++) {
        if (b.rows[k][k] != aux_bit(b.n_f, k + 1)) {
            throw std::invalid_argument("diagonal of gate matrix must be [k] on row k");
        }
    }
    MaskPair m;
    m.L = i ^ j;
    auto has = [&](Word x, int row) { return ((x >> qubit_bit(b.n, row + 1)) & 1u) != 0; };
    for (int r = 0; r < b.n; r++) {
        if (!has(m.L, r)) {
            continue;
        }
        for (int c = 0; c < b.n; c++) {
            if (has(j, c)) {
                m.F1 ^= b.rows[r][c];
            }
            if (c < r && has(m.L, c)) {
                m.F2 ^= b.rows[r][c];
            }
        }
    }
    m.F = m.F1 ^ m.F2;
    m.LF = (m.L << b.n_f) | m.F;
    m.Lf = m.L << (b.n_f - b.n);
    return m;
}

/// Phase exponent of outcome qf under the masks, as a power of i in 0..3.
inline int mask_phase_exponent(const MaskPair &m, Word qf) {
    return (2 * parity(qf & m.LF) + popcount(qf & m.Lf)) & 3;
}

/// Class index 0..3 for +alpha, -alpha, +beta, -beta from a phase exponent:
/// 1 -> +alpha, -1 -> -alpha, -i -> +beta, +i -> -beta.
inline constexpr int kClassOfExponent[4] = {0, 3, 1, 2};

struct FourWaySplit {
    double N1 = 0, N2 = 0, N3 = 0, N4 = 0;
    double n_alpha() const { return N1 + N2; }
    double n_beta() const { return N3 + N4; }
    double total() const { return N1 + N2 + N3 + N4; }
    double &operator[](int cls) { return cls == 0 ? N1 : cls == 1 ? N2 : cls == 2 ? N3 : N4; }
};

inline FourWaySplit classify_counts(const CountsTable &counts, const MaskPair &m) {
    FourWaySplit s;
    for (const auto &[qf, c] : counts.entries) {
        s[kClassOfExponent[mask_phase_exponent(m, qf)]] += c;
    }
    return s;
}

struct OffDiagEstimate {
    double alpha = 0;
    double beta = 0;
    double var_alpha = 0;
    double var_beta = 0;
};

/// Conditional estimator: alpha = N1 / (N1 + N2) - 1/2, zero when no alpha
/// events were seen; likewise for beta.
inline OffDiagEstimate estimate_offdiag(const FourWaySplit &s, double total_shots) {
    OffDiagEstimate e;
    e.alpha = s.n_alpha() > 0 ? s.N1 / s.n_alpha() - 0.5 : 0.0;
    e.beta = s.n_beta() > 0 ? s.N3 / s.n_beta() - 0.5 : 0.0;
    if (total_shots > 0) {
        e.var_alpha = (1.0 - 4.0 * e.alpha * e.alpha) / (2.0 * total_shots);
        e.var_beta = (1.0 - 4.0 * e.beta * e.beta) / (2.0 * total_shots);
    }
    return e;
}

/// Direct frequency estimator (N1 - N2) / N, kept for comparison.
inline OffDiagEstimate estimate_offdiag_frequency(const FourWaySplit &s, double total_shots) {
    OffDiagEstimate e;
    if (total_shots > 0) {
        e.alpha = (s.N1 - s.N2) / total_shots;
        e.beta = (s.N3 - s.N4) / total_shots;
    }
    return e;
}

enum class Allocation { FrobeniusOptimal, OneToFour };

struct SampleSplit {
    std::uint64_t diag = 0;
    std::uint64_t offdiag = 0;
};

/// Splits a shot budget between the diagonal run and the off-diagonal run,
/// 1:d by default or 1:4. Halves round up.
inline SampleSplit allocate_samples(std::uint64_t total, std::uint64_t d,
                                    Allocation mode = Allocation::FrobeniusOptimal) {
    if (d < 1 || total < d + 1) {
        throw std::invalid_argument("total shots must be at least d + 1");
    }
    std::uint64_t parts = mode == Allocation::OneToFour ? 5 : 1 + d;
    std::uint64_t diag = (2 * total + parts) / (2 * parts);
    return {diag, total - diag};
}

struct ReconstructionDiagnostics {
    double min_eigenvalue = 0;
    /// Row-major over i > j pairs in loop order (i ascending, j ascending).
    std::vector<double> var_alpha;
    std::vector<double> var_beta;
};

struct Reconstruction {
    DensityMatrix rho;
    ReconstructionDiagnostics diagnostics;
};

/// Fills the diagonal from direct-measurement frequencies and every i > j
/// entry from the masked four-way split of the auxiliary-circuit counts.
inline Reconstruction reconstruct_with_diagnostics(const CountsTable &offdiag, const CountsTable &diag,
                                                   const GateMatrix &gm) {
    if (offdiag.n != gm.n() || offdiag.n_f != gm.n_f()) {
        throw std::invalid_argument("off-diagonal counts do not match the gate matrix dimensions");
    }
    if (diag.n != gm.n() || diag.n_f != 0) {
        throw std::invalid_argument("diagonal counts must have n qubits and no auxiliary bits");
    }
    BinaryGateMatrix b = to_binary(gm);
    std::size_t d = std::size_t{1} << gm.n();
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    if (diag.shots > 0) {
        for (const auto &[x, c] : diag.entries) {
            m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = c / diag.shots;
        }
    }
    std::size_t pairs = d * (d - 1) / 2;
    ReconstructionDiagnostics diagn;
    diagn.var_alpha.resize(pairs);
    diagn.var_beta.resize(pairs);
    parallel_for(d - 1, [&](std::size_t t) {
        Word i = t + 1;
        std::size_t base = i * (i - 1) / 2;
        for (Word j = 0; j < i; j++) {
            FourWaySplit s = classify_counts(offdiag, compute_masks(b, i, j));
            OffDiagEstimate e = estimate_offdiag(s, offdiag.shots);
            auto ii = static_cast<Eigen::Index>(i);
            auto jj = static_cast<Eigen::Index>(j);
            m(ii, jj) = Complex(e.alpha, e.beta);
            m(jj, ii) = Complex(e.alpha, -e.beta);
            diagn.var_alpha[base + j] = e.var_alpha;
            diagn.var_beta[base + j] = e.var_beta;
        }
    });
    DensityMatrix rho(gm.n(), m, Check::Hermitian);
    diagn.min_eigenvalue = rho.min_eigenvalue();
    return {std::move(rho), std::move(diagn)};
}

inline DensityMatrix reconstruct(const CountsTable &offdiag, const CountsTable &diag, const GateMatrix &gm) {
    return reconstruct_with_diagnostics(offdiag, diag, gm).rho;
}

/// Precomputed class index for every (pair, outcome), for repeated
/// classification of dense histograms over a fixed gate matrix.
class ClassTable {
  public:
    explicit ClassTable(const GateMatrix &gm) : n_(gm.n()), n_f_(gm.n_f()) {
        if (n_ + n_f_ > kMaxExactWidth) {
            throw std::invalid_argument("class table limited to n + n_f <= 24");
        }
        BinaryGateMatrix b = to_binary(gm);
        std::size_t d = std::size_t{1} << n_;
        outcomes_ = std::size_t{1} << (n_ + n_f_);
        for (Word i = 1; i < d; i++) {
            for (Word j = 0; j < i; j++) {
                pairs_.emplace_back(i, j);
            }
        }
        cls_.resize(pairs_.size() * outcomes_);
        parallel_for(pairs_.size(), [&](std::size_t p) {
            MaskPair m = compute_masks(b, pairs_[p].first, pairs_[p].second);
            for (Word o = 0; o < outcomes_; o++) {
                cls_[p * outcomes_ + o] = static_cast<std::uint8_t>(kClassOfExponent[mask_phase_exponent(m, o)]);
            }
        });
    }

    std::size_t pair_count() const { return pairs_.size(); }
    std::size_t outcome_count() const { return outcomes_; }
    const std::pair<Word, Word> &pair(std::size_t p) const { return pairs_[p]; }
    int cls(std::size_t p, Word outcome) const { return cls_[p * outcomes_ + outcome]; }

    /// Splits of every pair for a dense histogram, restricted to the listed
    /// non-zero outcomes.
    template <typename T>
    void classify(const std::vector<T> &hist, std::vector<FourWaySplit> &out) const {
        std::vector<std::pair<Word, double>> nz;
        for (std::size_t o = 0; o < hist.size(); o++) {
            if (hist[o] != T{0}) {
                nz.emplace_back(static_cast<Word>(o), static_cast<double>(hist[o]));
            }
        }
        out.assign(pairs_.size(), FourWaySplit{});
        for (std::size_t p = 0; p < pairs_.size(); p++) {
            const std::uint8_t *row = &cls_[p * outcomes_];
            double acc[4] = {0, 0, 0, 0};
            for (const auto &[o, c] : nz) {
                acc[row[o]] += c;
            }
            out[p] = {acc[0], acc[1], acc[2], acc[3]};
        }
    }

  private:
    int n_;
    int n_f_;
    std::size_t outcomes_ = 0;
    std::vector<std::pair<Word, Word>> pairs_;
    std::vector<std::uint8_t> cls_;
};

/// Gate matrix used by default for an n-qubit run: the cyclic construction,
/// or the one-qubit matrix [[1]] when n = 1.
inline GateMatrix default_gate_matrix(int n) {
    return n >= 2 ? build_cyclic_gate_matrix(n) : build_max_single_gate_matrix(n);
}

}  // namespace acqst

#endif  // ACQST_TOMOGRAPHY_H
