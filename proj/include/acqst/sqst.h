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

#ifndef ACQST_SQST_H
#define ACQST_SQST_H

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "acqst/density_matrix.h"
#include "acqst/parallel.h"
#include "acqst/rng.h"
#include "acqst/simulator.h"

namespace acqst {

/// Local Pauli-basis tomography over all 3^n settings. A setting assigns
/// X, Y or Z to every qubit; setting index digit k (base 3, qubit 1 most
/// significant) is 0 for X, 1 for Y, 2 for Z.
inline constexpr int kMaxSqstQubits = 6;

inline std::size_t pow3(int n) {
    std::size_t r = 1;
    for (int k = 0; k < n; k++) {
        r *= 3;
    }
    return r;
}

inline std::vector<int> setting_bases(std::size_t setting, int n) {
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int k = n - 1; k >= 0; k--) {
        b[static_cast<std::size_t>(k)] = static_cast<int>(setting % 3);
        setting /= 3;
    }
    return b;
}

/// Outcome distributions of every setting. X is measured after H and Y after
/// H S^dagger.
inline std::vector<std::vector<double>> sqst_setting_probabilities(const DensityMatrix &rho) {
    int n = rho.n();
    if (n > kMaxSqstQubits) {
        throw std::invalid_argument("local Pauli tomography limited to n <= 6");
    }
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix rot[3];
    rot[0] = CMatrix(2, 2);
    rot[0] << s, s, s, -s;
    rot[1] = CMatrix(2, 2);
    rot[1] << Complex(s, 0), Complex(0, -s), Complex(s, 0), Complex(0, s);
    rot[2] = CMatrix::Identity(2, 2);
    std::size_t settings = pow3(n);
    std::vector<std::vector<double>> out(settings);
    parallel_for(settings, [&](std::size_t st) {
        std::vector<int> bases = setting_bases(st, n);
        CMatrix u = CMatrix::Ones(1, 1);
        for (int k = 0; k < n; k++) {
            const CMatrix &r = rot[bases[static_cast<std::size_t>(k)]];
            CMatrix next(u.rows() * 2, u.cols() * 2);
            for (Eigen::Index a = 0; a < u.rows(); a++) {
                for (Eigen::Index c = 0; c < u.cols(); c++) {
                    next.block(2 * a, 2 * c, 2, 2) = u(a, c) * r;
                }
            }
            u = next;
        }
        CMatrix m = u * rho.matrix() * u.adjoint();
        out[st].resize(rho.dim());
        for (std::size_t x = 0; x < rho.dim(); x++) {
            out[st][x] = m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real();
        }
    });
    return out;
}

/// Linear inversion from per-setting outcome frequencies. Each Pauli string
/// expectation is averaged over every setting that agrees with it on its
/// non-identity positions.
inline DensityMatrix sqst_reconstruct(int n, const std::vector<std::vector<double>> &freqs) {
    std::size_t d = std::size_t{1} << n;
    std::size_t settings = pow3(n);
    if (freqs.size() != settings) {
        throw std::invalid_argument("expected one frequency vector per setting");
    }
    // Pauli string index: base-4 digit per qubit, 0 = I, 1 = X, 2 = Y, 3 = Z.
    std::size_t paulis = d * d;
    std::vector<double> sum(paulis, 0.0);
    std::vector<double> hits(paulis, 0.0);
    std::vector<double> w(d);
    for (std::size_t st = 0; st < settings; st++) {
        std::vector<int> bases = setting_bases(st, n);
        w = freqs[st];
        if (w.size() != d) {
            throw std::invalid_argument("frequency vector has wrong length");
        }
        for (int b = 0; b < n; b++) {
            std::size_t stride = std::size_t{1} << b;
            for (std::size_t base = 0; base < d; base += 2 * stride) {
                for (std::size_t k = base; k < base + stride; k++) {
                    double a = w[k];
                    double c = w[k + stride];
                    w[k] = a + c;
                    w[k + stride] = a - c;
                }
            }
        }
        // w[T] is the expectation of the product of Z outcomes over positions T.
        for (std::size_t t = 0; t < d; t++) {
            std::size_t idx = 0;
            for (int k = 1; k <= n; k++) {
                int digit = qubit_value(t, n, k) ? bases[static_cast<std::size_t>(k - 1)] + 1 : 0;
                idx = idx * 4 + static_cast<std::size_t>(digit);
            }
            sum[idx] += w[t];
            hits[idx] += 1.0;
        }
    }
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t p = 0; p < paulis; p++) {
        double expv = sum[p] / hits[p];
        Word xmask = 0, zmask = 0;
        int ycount = 0;
        std::size_t rest = p;
        for (int k = n; k >= 1; k--) {
            int digit = static_cast<int>(rest % 4);
            rest /= 4;
            Word bit = Word{1} << qubit_bit(n, k);
            if (digit == 1 || digit == 2) {
                xmask |= bit;
            }
            if (digit == 2 || digit == 3) {
                zmask |= bit;
            }
            ycount += digit == 2;
        }
        Complex yphase = phase_from_exponent(ycount & 3);
        for (Word c = 0; c < d; c++) {
            Word r = c ^ xmask;
            double sign = parity(c & zmask) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += expv * sign * yphase;
        }
    }
    m /= static_cast<double>(d);
    return make_density_matrix(n, m, Check::Hermitian);
}

/// Samples `shots_per_setting` shots in every setting from precomputed
/// setting distributions and reconstructs.
inline DensityMatrix sqst_from_probabilities(int n, const std::vector<std::vector<double>> &probs,
                                             std::uint64_t shots_per_setting, Rng &rng) {
    std::vector<std::vector<double>> freqs(probs.size());
    for (std::size_t st = 0; st < probs.size(); st++) {
        Sampler s(probs[st]);
        std::vector<double> hist;
        s.sample_into(shots_per_setting, rng, hist);
        for (auto &h : hist) {
            h /= static_cast<double>(shots_per_setting);
        }
        freqs[st] = std::move(hist);
    }
    return sqst_reconstruct(n, freqs);
}

inline DensityMatrix sqst_tomography(const DensityMatrix &rho, std::uint64_t shots_per_setting, std::uint64_t seed) {
    if (shots_per_setting == 0) {
        throw std::invalid_argument("shots per setting must be positive");
    }
    Rng rng = make_rng(seed, 0);
    return sqst_from_probabilities(rho.n(), sqst_setting_probabilities(rho), shots_per_setting, rng);
}

/// Infinite-shot limit of local Pauli tomography.
inline DensityMatrix sqst_exact(const DensityMatrix &rho) {
    return sqst_reconstruct(rho.n(), sqst_setting_probabilities(rho));
}

}  // namespace acqst

#endif  // ACQST_SQST_H
