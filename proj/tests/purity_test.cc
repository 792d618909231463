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

#include "acqst/purity.h"

#include <functional>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace acqst;

namespace {

// Calls f(counts, probability) for every length-`shots` outcome sequence.
void enumerate_sequences(const std::vector<double> &p, int shots,
                         const std::function<void(const std::vector<double> &, double)> &f) {
    std::vector<double> counts(p.size(), 0.0);
    std::function<void(int, double)> rec = [&](int depth, double prob) {
        if (depth == shots) {
            f(counts, prob);
            return;
        }
        for (std::size_t k = 0; k < p.size(); k++) {
            counts[k] += 1;
            rec(depth + 1, prob * p[k]);
            counts[k] -= 1;
        }
    };
    rec(0, 1.0);
}

CountsTable table_from(int n, int n_f, const std::vector<double> &dense) {
    return CountsTable::from_dense(n, n_f, dense);
}

}  // namespace

TEST(purity, p_part_small_example) {
    // Outcome 0 three times, outcome 1 once: 6 ordered equal pairs out of 12.
    CountsTable c{1, 0, 4, {{0, 3}, {1, 1}}};
    ASSERT_DOUBLE_EQ(purity_p_part(c), 0.5);
    CountsTable one{1, 0, 1, {{0, 1}}};
    ASSERT_THROW(purity_p_part(one), std::invalid_argument);
}

TEST(purity, p_part_unbiased_and_variance_by_enumeration) {
    std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
    const int shots = 5;
    double mean = 0, second = 0;
    enumerate_sequences(p, shots, [&](const std::vector<double> &c, double w) {
        double v = purity_p_part(table_from(2, 0, c));
        mean += w * v;
        second += w * v * v;
    });
    double s2 = 0, s3 = 0;
    for (double q : p) {
        s2 += q * q;
        s3 += q * q * q;
    }
    ASSERT_NEAR(mean, s2, 1e-14);
    ASSERT_NEAR(second - mean * mean, p_part_variance(shots, s2, s3), 1e-14);
}

TEST(purity, sum_sq_variance_by_enumeration) {
    std::vector<double> p = {0.05, 0.15, 0.25, 0.55};
    const int shots = 6;
    double mean = 0, second = 0;
    enumerate_sequences(p, shots, [&](const std::vector<double> &c, double w) {
        double v = 0;
        for (double x : c) {
            v += x * x;
        }
        mean += w * v;
        second += w * v * v;
    });
    double s2 = 0, s3 = 0;
    for (double q : p) {
        s2 += q * q;
        s3 += q * q * q;
    }
    ASSERT_NEAR(second - mean * mean, variance_sum_sq_counts(shots, s2, s3), 1e-10);
}

TEST(purity, method1_unbiased_by_enumeration) {
    GateMatrix g = build_max_single_gate_matrix(1);
    DensityMatrix rho = random_density_matrix(1, 2, 12);
    ProbabilityTable t = exact_outcome_probabilities(rho, g);
    const int shots = 4;
    double mean = 0, second = 0;
    enumerate_sequences(t.p, shots, [&](const std::vector<double> &c, double w) {
        double v = purity_method1_ab(table_from(1, g.n_f(), c));
        mean += w * v;
        second += w * v * v;
    });
    ASSERT_NEAR(mean, purity_ab_part_exact(rho), 1e-13);
    ASSERT_NEAR(second - mean * mean, method1_variance_exact(t, shots), 1e-12);
}

TEST(purity, method2_unbiased_by_enumeration_when_halves_full) {
    // With beta = 0 every outcome pattern is reachable; average only the
    // alpha half conditioned on a fixed alpha-class total.
    const double a1 = 0.3, a2 = 0.1;
    const int t = 5;
    double mean = 0, total = 0;
    enumerate_sequences({a1, a2}, t, [&](const std::vector<double> &c, double w) {
        std::size_t deg = 0;
        mean += w * method2_half(c[0], c[1], deg);
        total += w;
    });
    double q1 = a1 / (a1 + a2);
    // 2 alpha^2 with alpha = q1 - 1/2.
    ASSERT_NEAR(mean / total, 2 * (q1 - 0.5) * (q1 - 0.5), 1e-14);
}

TEST(purity, method2_degenerate_halves) {
    std::size_t deg = 0;
    ASSERT_EQ(method2_half(1, 0, deg), 0.0);
    ASSERT_EQ(method2_half(0, 0, deg), 0.0);
    ASSERT_EQ(deg, 2u);
    ASSERT_DOUBLE_EQ(method2_half(2, 0, deg), 0.5);
    ASSERT_DOUBLE_EQ(method2_half(1, 1, deg), -0.5);
    ASSERT_EQ(deg, 2u);
    GateMatrix g = build_cyclic_gate_matrix(2);
    CountsTable single{2, 3, 1, {{0, 1}}};
    Method2Result r = purity_method2_detail(single, g);
    ASSERT_EQ(r.degenerate_halves, 12u);
    ASSERT_EQ(r.ab_part, 0.0);
}

TEST(purity, plug_in_limits) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 8; trial++) {
        int n = 1 + trial % 3;
        GateMatrix g = trial % 2 ? build_max_single_gate_matrix(n) : default_gate_matrix(n);
        DensityMatrix rho = random_density_matrix(n, 1 + trial % 3 % (1 << n), 500 + trial);
        const double shots = 1e13;
        CountsTable off = scaled_counts(exact_outcome_probabilities(rho, g), shots);
        CountsTable diag = scaled_counts(diagonal_probabilities(rho), shots);
        ASSERT_NEAR(purity_p_part(diag), purity_p_part_exact(rho), 1e-9);
        ASSERT_NEAR(purity_method1_ab(off), purity_ab_part_exact(rho), 1e-9);
        ASSERT_NEAR(purity_method2_ab(off, g), purity_ab_part_exact(rho), 1e-9);
        PurityEstimate e1 = purity_estimate(off, diag, g, PurityMethod::SquaredCounts);
        PurityEstimate e2 = purity_estimate(off, diag, g, PurityMethod::ConditionalProducts);
        ASSERT_NEAR(e1.total, purity_exact(rho), 1e-9);
        ASSERT_NEAR(e2.total, purity_exact(rho), 1e-9);
        ASSERT_EQ(e1.method, PurityMethod::SquaredCounts);
        ASSERT_EQ(e2.method, PurityMethod::ConditionalProducts);
    }
}

TEST(purity, variance_formulas) {
    for (int n = 2; n <= 3; n++) {
        GateMatrix g = build_cyclic_gate_matrix(n);
        for (double shots : {50.0, 400.0}) {
            DensityMatrix ghz = make_ghz(n);
            ProbabilityTable tg = exact_outcome_probabilities(ghz, g);
            double ab = purity_ab_part_exact(ghz);
            ASSERT_NEAR(method1_variance_exact(tg, shots), method1_variance_ghz(n, g.n_f(), shots, ab),
                        1e-12 * method1_variance_exact(tg, shots));
            for (int seed = 0; seed < 5; seed++) {
                DensityMatrix rho = random_density_matrix(n, 1 + seed % 2, 900 + seed);
                ProbabilityTable t = exact_outcome_probabilities(rho, g);
                ASSERT_LE(method1_variance_exact(t, shots),
                          method1_variance_bound(n, g.n_f(), shots, purity_ab_part_exact(rho)) * (1 + 1e-12));
            }
        }
    }
    ASSERT_DOUBLE_EQ(method2_variance_approx(2, 100, 0.5), 2 * 12 / 1e4 + 0.02);
}

TEST(purity, input_checks) {
    GateMatrix g = build_cyclic_gate_matrix(2);
    CountsTable off{2, 3, 10, {{0, 10}}};
    CountsTable diag{2, 0, 10, {{0, 10}}};
    ASSERT_THROW(purity_estimate(off, off, g, PurityMethod::SquaredCounts), std::invalid_argument);
    ASSERT_THROW(purity_estimate(diag, diag, g, PurityMethod::SquaredCounts), std::invalid_argument);
    ASSERT_THROW(purity_method2_ab(diag, g), std::invalid_argument);
}

TEST(purity, heisenberg_sweep_scaling) {
    DensityMatrix rho = apply_dephasing(make_uniform_superposition(2), 1, 0.1);
    GateMatrix g = build_max_single_gate_matrix(2);
    auto rows = heisenberg_sweep(rho, g, {400, 1600}, 400, 7);
    ASSERT_EQ(rows.size(), 2u);
    ASSERT_EQ(rows[0].shots, 400u);
    ASSERT_DOUBLE_EQ(rows[0].inv_delta_p, 1.0 / rows[0].delta_p);
    // Four times the shots roughly quarters the error when the 1/N term dominates,
    // and at least halves it.
    ASSERT_LT(rows[1].delta_p, rows[0].delta_p / 1.8);
    auto again = heisenberg_sweep(rho, g, {400, 1600}, 400, 7);
    ASSERT_EQ(again[1].delta_p, rows[1].delta_p);
    ASSERT_THROW(heisenberg_sweep(rho, g, {400}, 0, 7), std::invalid_argument);
}
