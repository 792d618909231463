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

#ifndef ACQST_PURITY_H
#define ACQST_PURITY_H

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqst/density_matrix.h"
#include "acqst/gate_matrix.h"
#include "acqst/simulator.h"
#include "acqst/tomography.h"

namespace acqst {

inline double sum_sq_counts(const CountsTable &c) {
    double s = 0;
    for (const auto &e : c.entries) {
        s += e.second * e.second;
    }
    return s;
}

/// Unbiased estimate of sum_i P_i^2 from direct-measurement counts:
/// (sum N_i^2 - N) / (N (N - 1)).
inline double purity_p_part(const CountsTable &diag) {
    double n = diag.shots;
    if (n < 2) {
        throw std::invalid_argument("P part needs at least two shots");
    }
    return (sum_sq_counts(diag) - n) / (n * (n - 1));
}

/// Off-diagonal part from the squared counts of the auxiliary circuit:
/// 2^(n + n_f) (sum N^2 - N) / (N (N - 1)) - 1.
inline double purity_method1_ab(const CountsTable &c) {
    double n = c.shots;
    if (n < 2) {
        throw std::invalid_argument("method 1 needs at least two shots");
    }
    return std::ldexp((sum_sq_counts(c) - n) / (n * (n - 1)), c.width()) - 1.0;
}

struct Method2Result {
    double ab_part = 0;
    /// Number of alpha or beta halves that saw fewer than two events.
    std::size_t degenerate_halves = 0;
};

/// Half-term 1/2 - 2 N1 N2 / (Na (Na - 1)), an unbiased estimate of 2 alpha^2.
inline double method2_half(double a, double b, std::size_t &degenerate) {
    double tot = a + b;
    if (tot < 2) {
        degenerate++;
        return 0.0;
    }
    return 0.5 - 2.0 * a * b / (tot * (tot - 1));
}

inline double method2_column(const FourWaySplit &s, std::size_t &degenerate) {
    return method2_half(s.N1, s.N2, degenerate) + method2_half(s.N3, s.N4, degenerate);
}

/// Off-diagonal part as the sum over i > j of per-column products of the
/// conditional class counts.
inline Method2Result purity_method2_detail(const CountsTable &c, const GateMatrix &gm) {
    if (c.n != gm.n() || c.n_f != gm.n_f()) {
        throw std::invalid_argument("counts do not match the gate matrix dimensions");
    }
    BinaryGateMatrix b = to_binary(gm);
    Method2Result r;
    std::size_t d = std::size_t{1} << gm.n();
    for (Word i = 1; i < d; i++) {
        for (Word j = 0; j < i; j++) {
            r.ab_part += method2_column(classify_counts(c, compute_masks(b, i, j)), r.degenerate_halves);
        }
    }
    return r;
}

inline double purity_method2_ab(const CountsTable &c, const GateMatrix &gm) {
    return purity_method2_detail(c, gm).ab_part;
}

/// Exact variance of sum_i N_i^2 under multinomial sampling, from the power
/// sums S2 = sum P^2 and S3 = sum P^3.
inline double variance_sum_sq_counts(double n, double s2, double s3) {
    return 2 * n * (n - 1) * s2 - 2 * n * (n - 1) * (2 * n - 3) * s2 * s2 + 4 * n * (n - 1) * (n - 2) * s3;
}

/// Exact variance of the method 1 estimate given the outcome distribution.
inline double method1_variance_exact(const ProbabilityTable &t, double n) {
    double s2 = 0, s3 = 0;
    for (double p : t.p) {
        double q = std::max(0.0, p);
        s2 += q * q;
        s3 += q * q * q;
    }
    double scale = std::ldexp(1.0, t.n + t.n_f) / (n * (n - 1));
    return scale * scale * variance_sum_sq_counts(n, s2, s3);
}

/// General upper bound on the method 1 variance.
inline double method1_variance_bound(int n_qubits, int n_f, double n, double ab) {
    double nn = n * (n - 1);
    return 2 * std::ldexp(1.0, n_qubits + n_f) * (1 + ab) / nn - (4 * n - 6) * (1 + ab) * (1 + ab) / nn +
           std::ldexp(1.0, n_qubits) * 4 * (n - 2) * (1 + ab) / nn;
}

/// Method 1 variance for GHZ-like states, whose cubic power sum carries no
/// cubic off-diagonal terms.
inline double method1_variance_ghz(int n_qubits, int n_f, double n, double ab) {
    double nn = n * (n - 1);
    return 2 * std::ldexp(1.0, n_qubits + n_f) * (1 + ab) / nn - (4 * n - 6) * (1 + ab) * (1 + ab) / nn +
           4 * (n - 2) * (1 + 3 * ab) / nn;
}

/// Exact variance of the P part estimate.
inline double p_part_variance(double n, double s2, double s3) {
    return 2.0 / (n * (n - 1)) * (s2 - (2 * n - 3) * s2 * s2 + 2 * (n - 2) * s3);
}

inline double p_part_variance(const DensityMatrix &rho, double n) {
    double s2 = 0, s3 = 0;
    for (std::size_t k = 0; k < rho.dim(); k++) {
        double p = std::max(0.0, rho.diag(k));
        s2 += p * p;
        s3 += p * p * p;
    }
    return p_part_variance(n, s2, s3);
}

/// Approximate method 2 variance, assuming independent columns.
inline double method2_variance_approx(int n_qubits, double n, double ab) {
    double d = std::ldexp(1.0, n_qubits);
    return 2 * (d * d - d) / (n * n) + 4.0 / n * ab;
}

enum class PurityMethod { SquaredCounts = 1, ConditionalProducts = 2 };

struct PurityEstimate {
    double p_part = 0;
    double ab_part = 0;
    double total = 0;
    PurityMethod method = PurityMethod::SquaredCounts;
    /// Model variance of the ab part evaluated at the estimated ab part:
    /// the general bound for method 1, the independent-column value for
    /// method 2.
    double ab_variance_model = 0;
    /// P part variance evaluated with the empirical frequencies.
    double p_variance_model = 0;
    std::size_t degenerate_halves = 0;
};

inline PurityEstimate purity_estimate(const CountsTable &counts, const CountsTable &diag, const GateMatrix &gm,
                                      PurityMethod method) {
    if (diag.n != gm.n() || diag.n_f != 0) {
        throw std::invalid_argument("diagonal counts must have n qubits and no auxiliary bits");
    }
    PurityEstimate e;
    e.method = method;
    e.p_part = purity_p_part(diag);
    if (method == PurityMethod::SquaredCounts) {
        if (counts.n != gm.n() || counts.n_f != gm.n_f()) {
            throw std::invalid_argument("counts do not match the gate matrix dimensions");
        }
        e.ab_part = purity_method1_ab(counts);
        e.ab_variance_model = method1_variance_bound(gm.n(), gm.n_f(), counts.shots, e.ab_part);
    } else {
        Method2Result r = purity_method2_detail(counts, gm);
        e.ab_part = r.ab_part;
        e.degenerate_halves = r.degenerate_halves;
        e.ab_variance_model = method2_variance_approx(gm.n(), counts.shots, e.ab_part);
    }
    e.total = e.p_part + e.ab_part;
    double s2 = 0, s3 = 0;
    for (const auto &[x, c] : diag.entries) {
        double p = c / diag.shots;
        s2 += p * p;
        s3 += p * p * p;
    }
    e.p_variance_model = p_part_variance(diag.shots, s2, s3);
    return e;
}

struct HeisenbergRow {
    std::uint64_t shots = 0;
    double delta_p = 0;
    double inv_delta_p = 0;
};

/// Method 2 error versus shot count. For every N in `shot_list` the circuit
/// is sampled `reps` times; the P part is taken at its exact value so that
/// the error isolates the auxiliary-circuit estimate, and delta p is the
/// root-mean-square deviation from the exact purity.
inline std::vector<HeisenbergRow> heisenberg_sweep(const DensityMatrix &rho, const GateMatrix &gm,
                                                   const std::vector<std::uint64_t> &shot_list, std::size_t reps,
                                                   std::uint64_t seed) {
    if (reps == 0) {
        throw std::invalid_argument("reps must be positive");
    }
    ProbabilityTable t = exact_outcome_probabilities(rho, gm);
    Sampler sampler(t.p);
    ClassTable table(gm);
    double truth = purity_exact(rho);
    double p_part = purity_p_part_exact(rho);
    std::vector<HeisenbergRow> rows;
    for (std::size_t s = 0; s < shot_list.size(); s++) {
        std::uint64_t shots = shot_list[s];
        std::vector<double> sq(reps);
        parallel_for(reps, [&](std::size_t r) {
            Rng rng = make_rng(derive_seed(seed, s), r);
            std::vector<std::uint32_t> hist;
            sampler.sample_into(shots, rng, hist);
            std::vector<FourWaySplit> splits;
            table.classify(hist, splits);
            std::size_t degenerate = 0;
            double ab = 0;
            for (const auto &sp : splits) {
                ab += method2_column(sp, degenerate);
            }
            double err = p_part + ab - truth;
            sq[r] = err * err;
        });
        double mse = 0;
        for (double v : sq) {
            mse += v;
        }
        double dp = std::sqrt(mse / static_cast<double>(reps));
        rows.push_back({shots, dp, dp > 0 ? 1.0 / dp : 0.0});
    }
    return rows;
}

}  // namespace acqst

#endif  // ACQST_PURITY_H
