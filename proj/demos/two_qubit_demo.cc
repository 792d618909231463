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

// Two-qubit walk-through: sample both circuits for a random state,
// reconstruct it and estimate its purity.

#include <cstdio>

#include "acqst/acqst.h"

int main() {
    using namespace acqst;
    const std::uint64_t shots = 100000;
    DensityMatrix rho = random_density_matrix(2, 2, 2026);
    GateMatrix gm = build_cyclic_gate_matrix(2);

    std::printf("gate matrix: %s\n", to_json(gm).dump().c_str());
    CircuitSpec circuit = build_circuit(gm);
    std::printf("circuit: %zu H, %zu CS, %zu CCZ on %d qubits + %d auxiliaries\n", circuit.count(GateKind::H),
                circuit.count(GateKind::CS), circuit.count(GateKind::CCZ), circuit.n, circuit.n_f);

    SampleSplit split = allocate_samples(shots, rho.dim());
    CountsTable diag = sample_diagonal(rho, split.diag, 1);
    CountsTable off = sample_counts(exact_outcome_probabilities(rho, gm), split.offdiag, 2);
    Reconstruction r = reconstruct_with_diagnostics(off, diag, gm);

    std::printf("\n%-6s %-24s %-24s\n", "entry", "true", "estimate");
    for (std::size_t i = 0; i < rho.dim(); i++) {
        for (std::size_t j = 0; j <= i; j++) {
            Complex t = rho(i, j), e = r.rho(i, j);
            std::printf("(%zu,%zu)  %+.4f %+.4fi        %+.4f %+.4fi\n", i, j, t.real(), t.imag(), e.real(),
                        e.imag());
        }
    }
    std::printf("\nsquared Frobenius error %.3g (bound %.3g)\n", frobenius_sq_distance(r.rho, rho),
                frobenius_bound(4, static_cast<double>(shots)));
    std::printf("minimum eigenvalue of estimate %.3g\n", r.diagnostics.min_eigenvalue);

    PurityEstimate p1 = purity_estimate(off, diag, gm, PurityMethod::SquaredCounts);
    PurityEstimate p2 = purity_estimate(off, diag, gm, PurityMethod::ConditionalProducts);
    std::printf("\npurity: exact %.5f, method 1 %.5f, method 2 %.5f\n", purity_exact(rho), p1.total, p2.total);
    return 0;
}
