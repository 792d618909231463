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

#include "acqst/simulator.h"

#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

using namespace acqst;
using acqst_test::two_qubit_table_matrix;

TEST(simulator, build_circuit_counts) {
    CircuitSpec a = build_circuit(build_cyclic_gate_matrix(2));
    ASSERT_EQ(a.count(GateKind::H), 2u);
    ASSERT_EQ(a.count(GateKind::CS), 2u);
    ASSERT_EQ(a.count(GateKind::CCZ), 1u);
    CircuitSpec b = build_circuit(two_qubit_table_matrix());
    ASSERT_EQ(b.count(GateKind::H), 2u);
    ASSERT_EQ(b.count(GateKind::CS), 2u);
    ASSERT_EQ(b.count(GateKind::CCZ), 2u);
    CircuitSpec c = build_circuit(build_cyclic_gate_matrix(3));
    ASSERT_EQ(c.count(GateKind::H), 3u);
    ASSERT_EQ(c.count(GateKind::CS), 3u);
    ASSERT_EQ(c.count(GateKind::CCZ), 3u);
    for (int n = 2; n <= 6; n++) {
        ASSERT_EQ(build_circuit(build_cyclic_gate_matrix(n)).gates.size(),
                  static_cast<std::size_t>(2 * n + n * (n - 1) / 2));
    }
}

TEST(simulator, single_cs_phases) {
    GateMatrix g(1, 1, {{{1}}});
    // Column (1, 0): Hadamard gives (-1)^q, the controlled S gives i^f.
    for (Word q = 0; q < 2; q++) {
        for (Word f = 0; f < 2; f++) {
            ASSERT_EQ(gate_phase_exponent(g, 1, 0, (q << 1) | f), static_cast<int>((2 * q + f) % 4));
        }
    }
    ProbabilityTable t = exact_outcome_probabilities(make_ghz(1), g);
    ASSERT_NEAR(t.p[0b00], 0.5, 1e-15);
    ASSERT_NEAR(t.p[0b01], 0.25, 1e-15);
    ASSERT_NEAR(t.p[0b10], 0.0, 1e-15);
    ASSERT_NEAR(t.p[0b11], 0.25, 1e-15);
}

TEST(simulator, gate_phase_rules_on_basis_components) {
    GateMatrix g = two_qubit_table_matrix();
    // Controlled S, qubit k to auxiliary k: i^(i_k f_k) (-i)^(j_k f_k).
    // CCZ on both qubits: (-1)^((i_1 i_2 + j_1 j_2) f_m) for each auxiliary.
    // Hadamard: (-1)^(i_k q_k) (-1)^(j_k q_k).
    for (Word i = 0; i < 4; i++) {
        for (Word j = 0; j < 4; j++) {
            if (i <= j) {
                continue;
            }
            for (Word o = 0; o < 16; o++) {
                int q1 = (o >> 3) & 1, q2 = (o >> 2) & 1, f1 = (o >> 1) & 1, f2 = o & 1;
                int i1 = (i >> 1) & 1, i2 = i & 1, j1 = (j >> 1) & 1, j2 = j & 1;
                Complex ph = std::pow(Complex(0, 1), i1 * f1) * std::pow(Complex(0, -1), j1 * f1) *
                             std::pow(Complex(0, 1), i2 * f2) * std::pow(Complex(0, -1), j2 * f2) *
                             std::pow(-1.0, (i1 * i2 + j1 * j2) * (f1 + f2)) * std::pow(-1.0, (i1 + j1) * q1) *
                             std::pow(-1.0, (i2 + j2) * q2);
                Complex got = phase_from_exponent(gate_phase_exponent(g, i, j, o));
                ASSERT_NEAR(std::abs(ph - got), 0.0, 1e-12);
            }
        }
    }
}

TEST(simulator, two_qubit_table_symbols) {
    GateMatrix g = two_qubit_table_matrix();
    const char *labels[4] = {"+a", "-b", "-a", "+b"};
    for (int o = 0; o < 16; o++) {
        auto terms = acqst_test::parse_table_row(acqst_test::two_qubit_table()[o]);
        ASSERT_EQ(terms.size(), 6u);
        for (const auto &t : terms) {
            int e = gate_phase_exponent(g, t.i, t.j, static_cast<Word>(o));
            std::string expect = std::string(t.sign > 0 ? "+" : "-") + t.part;
            ASSERT_EQ(labels[e], expect) << "outcome " << o << " column " << t.i << t.j;
        }
    }
}

TEST(simulator, two_qubit_table_numeric) {
    GateMatrix g = two_qubit_table_matrix();
    for (std::uint64_t seed = 0; seed < 10; seed++) {
        DensityMatrix rho = random_density_matrix(2, 1 + static_cast<int>(seed % 4), seed);
        ProbabilityTable t = exact_outcome_probabilities(rho, g);
        for (int o = 0; o < 16; o++) {
            ASSERT_NEAR(t.p[o], acqst_test::two_qubit_table_probability(rho, o), 1e-12);
        }
    }
}

TEST(simulator, exact_examples) {
    GateMatrix g = two_qubit_table_matrix();
    ProbabilityTable mixed = exact_outcome_probabilities(make_maximally_mixed(2), g);
    for (double p : mixed.p) {
        ASSERT_NEAR(p, 1.0 / 16, 1e-15);
    }
    CVector v(4);
    v << 1, 1, 0, 0;
    v /= std::sqrt(2.0);
    ProbabilityTable t = exact_outcome_probabilities(PureState(2, v).projector(), g);
    ASSERT_NEAR(t.p[0], 1.0 / 8, 1e-15);
    ASSERT_NEAR(t.sum(), 1.0, 1e-12);
    ASSERT_THROW(exact_outcome_probabilities(make_ghz(3), g), std::invalid_argument);
}

TEST(simulator, selective_sums) {
    GateMatrix g = two_qubit_table_matrix();
    DensityMatrix rho = random_density_matrix(2, 2, 77);
    ProbabilityTable t = exact_outcome_probabilities(rho, g);
    double plus_a = t.p[0b0000] + t.p[0b0010] + t.p[0b1000] + t.p[0b1010];
    double minus_a = t.p[0b0100] + t.p[0b0110] + t.p[0b1100] + t.p[0b1110];
    double plus_b = t.p[0b0101] + t.p[0b0111] + t.p[0b1101] + t.p[0b1111];
    double minus_b = t.p[0b0001] + t.p[0b0011] + t.p[0b1001] + t.p[0b1011];
    ASSERT_NEAR(plus_a, 0.25 + rho.alpha(1, 0) / 2, 1e-12);
    ASSERT_NEAR(minus_a, 0.25 - rho.alpha(1, 0) / 2, 1e-12);
    ASSERT_NEAR(plus_b, 0.25 + rho.beta(1, 0) / 2, 1e-12);
    ASSERT_NEAR(minus_b, 0.25 - rho.beta(1, 0) / 2, 1e-12);
}

TEST(simulator, closed_form_matches_statevector) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; trial++) {
        int n = 1 + trial % 3;
        GateMatrix g = n == 1 ? build_max_single_gate_matrix(1)
                              : (trial % 2 ? build_cyclic_gate_matrix(n) : acqst_test::random_gate_matrix(rng, n, n + 2));
        DensityMatrix rho = random_density_matrix(n, 1 + trial % (1 << n), 100 + trial);
        ProbabilityTable t = exact_outcome_probabilities(rho, g);
        ASSERT_NEAR(t.sum(), 1.0, 1e-10);
        for (Word o = 0; o < t.size(); o++) {
            ASSERT_NEAR(closed_form_probability(rho, g, o), t.p[o], 1e-12);
        }
    }
}

TEST(simulator, diagonal_state_is_uniform) {
    CMatrix m = CMatrix::Zero(8, 8);
    for (int k = 0; k < 8; k++) {
        m(k, k) = (k + 1) / 36.0;
    }
    DensityMatrix rho(3, m);
    GateMatrix g = build_cyclic_gate_matrix(3);
    ProbabilityTable t = exact_outcome_probabilities(rho, g);
    for (Word o = 0; o < t.size(); o++) {
        ASSERT_NEAR(t.p[o], 1.0 / 256, 1e-15);
        ASSERT_NEAR(closed_form_probability(rho, g, o), 1.0 / 256, 1e-15);
    }
}

TEST(simulator, sample_counts_basics) {
    ProbabilityTable u{2, 2, std::vector<double>(16, 1.0 / 16)};
    ASSERT_TRUE(sample_counts(u, 0, 1).entries.empty());
    CountsTable a = sample_counts(u, 160000, 9);
    CountsTable b = sample_counts(u, 160000, 9);
    ASSERT_EQ(a.entries, b.entries);
    ASSERT_EQ(a.shots, 160000);
    double sigma = std::sqrt(160000 * (1.0 / 16) * (15.0 / 16));
    for (Word o = 0; o < 16; o++) {
        ASSERT_NEAR(a.count(o), 10000, 5 * sigma);
    }
    // Small-shot path uses per-shot draws.
    CountsTable c = sample_counts(u, 40, 2);
    ASSERT_EQ(c.shots, 40);
}

TEST(simulator, sampler_both_paths_match_distribution) {
    std::vector<double> w = {0.5, 0.25, 0.125, 0.125, -1e-17};
    Sampler s(w);
    Rng rng(4);
    std::vector<double> per_shot, bulk;
    for (int k = 0; k < 20000; k++) {
        s.sample_into(4, rng, per_shot);
    }
    s.sample_into(80000, rng, bulk);
    ASSERT_EQ(per_shot[4], 0.0);
    ASSERT_EQ(bulk[4], 0.0);
    for (std::size_t k = 0; k < 4; k++) {
        double sigma = std::sqrt(80000 * w[k] * (1 - w[k]));
        ASSERT_NEAR(per_shot[k], 80000 * w[k], 5 * sigma);
        ASSERT_NEAR(bulk[k], 80000 * w[k], 5 * sigma);
    }
}

TEST(simulator, sample_diagonal) {
    CMatrix z = CMatrix::Zero(8, 8);
    z(0, 0) = 1;
    CountsTable c = sample_diagonal(DensityMatrix(3, z), 100, 1);
    ASSERT_EQ(c.n_f, 0);
    ASSERT_EQ(c.entries.size(), 1u);
    ASSERT_EQ(c.count(0), 100);
    CountsTable g = sample_diagonal(make_ghz(2), 1000, 2);
    ASSERT_EQ(g.count(0) + g.count(3), 1000);
    DensityMatrix r = random_density_matrix(2, 4, 5);
    CountsTable rc = sample_diagonal(r, 100000, 3);
    for (Word k = 0; k < 4; k++) {
        double p = r.diag(k);
        ASSERT_NEAR(rc.count(k), 100000 * p, 5 * std::sqrt(100000 * p * (1 - p)));
    }
}

TEST(simulator, classical_exact_matches_quantum) {
    std::mt19937_64 rng(8);
    for (int n = 2; n <= 3; n++) {
        for (int trial = 0; trial < 4; trial++) {
            GateMatrix g = trial == 0 ? build_cyclic_gate_matrix(n)
                                      : (trial == 1 ? build_max_single_gate_matrix(n)
                                                    : acqst_test::random_gate_matrix(rng, n, n + 1));
            DensityMatrix rho = random_density_matrix(n, 2, 50 + trial);
            ProbabilityTable q = exact_outcome_probabilities(rho, g);
            ProbabilityTable c = classical_exact_distribution(rho, g);
            for (Word o = 0; o < q.size(); o++) {
                ASSERT_NEAR(q.p[o], c.p[o], 1e-12);
            }
        }
    }
}

TEST(simulator, classical_sampling_statistics) {
    GateMatrix g = build_cyclic_gate_matrix(2);
    DensityMatrix rho = random_density_matrix(2, 2, 12);
    const std::uint64_t shots = 200000;
    CountsTable c = sample_classical_scheme(rho, g, shots, 21);
    ASSERT_EQ(c.shots, shots);
    ASSERT_EQ(sample_classical_scheme(rho, g, shots, 21).entries, c.entries);
    ProbabilityTable q = exact_outcome_probabilities(rho, g);
    double chi2 = 0;
    int cells = 0;
    for (Word o = 0; o < q.size(); o++) {
        double e = q.p[o] * shots;
        if (e > 0) {
            chi2 += (c.count(o) - e) * (c.count(o) - e) / e;
            cells++;
        }
    }
    // Chi-square with cells - 1 degrees of freedom; mean + 5 standard deviations.
    double dof = cells - 1;
    ASSERT_LT(chi2, dof + 5 * std::sqrt(2 * dof));
    for (int m = 1; m <= g.n_f(); m++) {
        double ones = 0;
        for (const auto &[o, v] : c.entries) {
            if ((o >> (g.n_f() - m)) & 1u) {
                ones += v;
            }
        }
        ASSERT_NEAR(ones, shots / 2.0, 5 * std::sqrt(shots / 4.0));
    }
}

TEST(simulator, classical_zero_aux_is_plain_hadamard_layer) {
    GateMatrix g = build_cyclic_gate_matrix(2);
    DensityMatrix rho = random_density_matrix(2, 3, 6);
    std::vector<double> p = classical_conditional_distribution(eigen_ensemble(rho), g, 0);
    CMatrix h(4, 4);
    h << 1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1;
    h /= 2.0;
    CMatrix out = h * rho.matrix() * h.adjoint();
    for (int k = 0; k < 4; k++) {
        ASSERT_NEAR(p[k], out(k, k).real(), 1e-12);
    }
}

TEST(simulator, cancellation_oracle) {
    ASSERT_TRUE(verify_cancellation_oracle(two_qubit_table_matrix()));
    ASSERT_TRUE(verify_cancellation_oracle(build_cyclic_gate_matrix(2)));
    ASSERT_TRUE(verify_cancellation_oracle(build_cyclic_gate_matrix(3)));
    ASSERT_FALSE(verify_cancellation_oracle(GateMatrix(2, 3, {{{1}, {}}, {{}, {2}}})));
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 40; trial++) {
        int n = 2 + trial % 2;
        GateMatrix g = acqst_test::random_gate_matrix(rng, n, n + static_cast<int>(rng() % 3));
        ASSERT_EQ(verify_cancellation_oracle(g), validate(g).valid) << trial;
    }
}

TEST(simulator, counts_json_round_trip) {
    CountsTable c = sample_counts(exact_outcome_probabilities(make_ghz(2), build_cyclic_gate_matrix(2)), 500, 3);
    nlohmann::json j = nlohmann::json::parse(to_json(c).dump());
    ASSERT_EQ(j["shots"], 500);
    ASSERT_TRUE(j["counts"].begin().key().size() == 5);
    CountsTable back = counts_from_json(j);
    ASSERT_EQ(back.entries, c.entries);
    ASSERT_EQ(back.shots, 500);
    j["shots"] = 501;
    ASSERT_THROW(counts_from_json(j), std::invalid_argument);
}
