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

#ifndef ACQST_SIMULATOR_H
#define ACQST_SIMULATOR_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqst/common.h"
#include "acqst/density_matrix.h"
#include "acqst/gate_matrix.h"
#include "acqst/parallel.h"
#include "acqst/rng.h"
#include "json.hpp"

namespace acqst {

enum class GateKind { H, CS, CCZ };

/// Qubit numbers are 1-based measured-qubit labels; `aux` is a 1-based
/// auxiliary index.
struct Gate {
    GateKind kind;
    int q1 = 0;
    int q2 = 0;
    int aux = 0;
};

/// Gate list of the auxiliary-correlated circuit: controlled-S gates from the
/// diagonal sequences, CCZ gates from the upper-triangular sequences, then a
/// Hadamard on every measured qubit. Auxiliaries start in |+>.
struct CircuitSpec {
    int n = 0;
    int n_f = 0;
    std::vector<Gate> gates;

    std::size_t count(GateKind k) const {
        return static_cast<std::size_t>(
            std::count_if(gates.begin(), gates.end(), [k](const Gate &g) { return g.kind == k; }));
    }
};

inline CircuitSpec build_circuit(const GateMatrix &gm) {
    CircuitSpec c{gm.n(), gm.n_f(), {}};
    for (int k = 0; k < gm.n(); k++) {
        for (int a : gm.at(k, k)) {
            c.gates.push_back({GateKind::CS, k + 1, 0, a});
        }
    }
    for (int r = 0; r < gm.n(); r++) {
        for (int s = r + 1; s < gm.n(); s++) {
            for (int a : gm.at(r, s)) {
                c.gates.push_back({GateKind::CCZ, r + 1, s + 1, a});
            }
        }
    }
    for (int k = 1; k <= gm.n(); k++) {
        c.gates.push_back({GateKind::H, k, 0, 0});
    }
    return c;
}

/// Outcome layout shared by every table: the n measured bits sit above the
/// n_f auxiliary bits, q1 most significant, f1 at bit n_f - 1.
inline int outcome_qubit_bit(int n, int n_f, int k) { return n_f + n - k; }
inline int outcome_aux_bit(int n_f, int m) { return n_f - m; }

struct ProbabilityTable {
    int n = 0;
    int n_f = 0;
    std::vector<double> p;

    std::size_t size() const { return p.size(); }
    double sum() const { return std::accumulate(p.begin(), p.end(), 0.0); }
};

/// Outcome counts. Counts are stored as doubles so that scaled exact
/// probabilities can stand in for an infinite-shot experiment.
struct CountsTable {
    int n = 0;
    int n_f = 0;
    double shots = 0;
    /// Sorted by outcome, zero counts omitted.
    std::vector<std::pair<Word, double>> entries;

    int width() const { return n + n_f; }

    double count(Word outcome) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), outcome,
                                   [](const auto &e, Word w) { return e.first < w; });
        return (it != entries.end() && it->first == outcome) ? it->second : 0.0;
    }

    static CountsTable from_dense(int n, int n_f, const std::vector<double> &dense) {
        CountsTable t{n, n_f, 0, {}};
        for (std::size_t k = 0; k < dense.size(); k++) {
            if (dense[k] != 0) {
                t.entries.emplace_back(static_cast<Word>(k), dense[k]);
                t.shots += dense[k];
            }
        }
        return t;
    }

    std::vector<double> to_dense() const {
        if (width() > 30) {
            throw std::invalid_argument("outcome space too large for a dense table");
        }
        std::vector<double> d(std::size_t{1} << width(), 0.0);
        for (const auto &[w, c] : entries) {
            d[w] = c;
        }
        return d;
    }
};

/// Infinite-shot stand-in: probabilities scaled by `shots`.
inline CountsTable scaled_counts(const ProbabilityTable &t, double shots) {
    std::vector<double> d(t.p.size());
    for (std::size_t k = 0; k < d.size(); k++) {
        d[k] = std::max(0.0, t.p[k]) * shots;
    }
    CountsTable c = CountsTable::from_dense(t.n, t.n_f, d);
    c.shots = shots;
    return c;
}

inline nlohmann::json to_json(const CountsTable &c) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto &[w, v] : c.entries) {
        std::string key = to_bitstring(w, c.width());
        if (v == std::floor(v) && v < 9.0e15) {
            counts[key] = static_cast<std::int64_t>(v);
        } else {
            counts[key] = v;
        }
    }
    nlohmann::json j = {{"n", c.n}, {"n_f", c.n_f}, {"counts", counts}};
    if (c.shots == std::floor(c.shots) && c.shots < 9.0e15) {
        j["shots"] = static_cast<std::int64_t>(c.shots);
    } else {
        j["shots"] = c.shots;
    }
    return j;
}

inline CountsTable counts_from_json(const nlohmann::json &j) {
    CountsTable c;
    c.n = j.at("n").get<int>();
    c.n_f = j.at("n_f").get<int>();
    if (c.n < 1 || c.n_f < 0 || c.n + c.n_f > kMaxWordBits) {
        throw std::invalid_argument("counts JSON has invalid dimensions");
    }
    std::map<Word, double> m;
    double total = 0;
    for (const auto &[key, val] : j.at("counts").items()) {
        if (static_cast<int>(key.size()) != c.width()) {
            throw std::invalid_argument("counts key '" + key + "' has wrong width");
        }
        double v = val.get<double>();
        if (v < 0) {
            throw std::invalid_argument("negative count for '" + key + "'");
        }
        m[from_bitstring(key)] += v;
        total += v;
    }
    c.entries.assign(m.begin(), m.end());
    c.shots = j.at("shots").get<double>();
    if (std::abs(c.shots - total) > 1e-9 * std::max(1.0, total)) {
        throw std::invalid_argument("counts do not sum to shots");
    }
    return c;
}

inline constexpr int kMaxExactWidth = 24;

namespace detail {

/// In-place Hadamard on bit `bit` of a statevector, without normalization.
inline void hadamard_unnormalized(std::vector<Complex> &psi, int bit) {
    std::size_t stride = std::size_t{1} << bit;
    for (std::size_t base = 0; base < psi.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; k++) {
            Complex a = psi[k];
            Complex b = psi[k + stride];
            psi[k] = a + b;
            psi[k + stride] = a - b;
        }
    }
}

}  // namespace detail

/// Evolves one system statevector, tensored with |+>^n_f, through the circuit
/// gate by gate and returns the outcome amplitudes.
inline std::vector<Complex> evolve_statevector(const CircuitSpec &c, const CVector &psi_sys) {
    int width = c.n + c.n_f;
    std::size_t dim = std::size_t{1} << width;
    std::size_t naux = std::size_t{1} << c.n_f;
    double aux_amp = 1.0 / std::sqrt(static_cast<double>(naux));
    std::vector<Complex> psi(dim);
    for (std::size_t x = 0; x < static_cast<std::size_t>(psi_sys.size()); x++) {
        for (std::size_t f = 0; f < naux; f++) {
            psi[(x << c.n_f) | f] = psi_sys(static_cast<Eigen::Index>(x)) * aux_amp;
        }
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const Gate &g : c.gates) {
        switch (g.kind) {
            case GateKind::CS: {
                Word m = (Word{1} << outcome_qubit_bit(c.n, c.n_f, g.q1)) |
                         (Word{1} << outcome_aux_bit(c.n_f, g.aux));
                for (std::size_t k = 0; k < dim; k++) {
                    if ((k & m) == m) {
                        psi[k] *= Complex(0, 1);
                    }
                }
                break;
            }
            case GateKind::CCZ: {
                Word m = (Word{1} << outcome_qubit_bit(c.n, c.n_f, g.q1)) |
                         (Word{1} << outcome_qubit_bit(c.n, c.n_f, g.q2)) |
                         (Word{1} << outcome_aux_bit(c.n_f, g.aux));
                for (std::size_t k = 0; k < dim; k++) {
                    if ((k & m) == m) {
                        psi[k] = -psi[k];
                    }
                }
                break;
            }
            case GateKind::H:
                detail::hadamard_unnormalized(psi, outcome_qubit_bit(c.n, c.n_f, g.q1));
                for (auto &a : psi) {
                    a *= inv_sqrt2;
                }
                break;
        }
    }
    return psi;
}

/// Exact outcome distribution of the quantum-ancilla circuit, from the
/// eigendecomposition of rho.
inline ProbabilityTable exact_outcome_probabilities(const DensityMatrix &rho, const GateMatrix &gm) {
    if (rho.n() != gm.n()) {
        throw std::invalid_argument("state and gate matrix have different qubit counts");
    }
    if (gm.n() + gm.n_f() > kMaxExactWidth) {
        throw std::invalid_argument("exact simulation limited to n + n_f <= 24");
    }
    CircuitSpec c = build_circuit(gm);
    Ensemble e = eigen_ensemble(rho);
    std::size_t dim = std::size_t{1} << (c.n + c.n_f);
    std::vector<std::vector<double>> partial(e.states.size());
    parallel_for(e.states.size(), [&](std::size_t k) {
        std::vector<Complex> psi = evolve_statevector(c, e.states[k]);
        partial[k].resize(dim);
        for (std::size_t x = 0; x < dim; x++) {
            partial[k][x] = e.weights[k] * std::norm(psi[x]);
        }
    });
    ProbabilityTable t{c.n, c.n_f, std::vector<double>(dim, 0.0)};
    for (const auto &part : partial) {
        for (std::size_t x = 0; x < dim; x++) {
            t.p[x] += part[x];
        }
    }
    return t;
}

/// Exponent e (phase = i^e, 0 <= e < 4) multiplying rho_ij in the probability
/// of `outcome`, assembled from the per-gate rules: Hadamard contributes
/// (-1)^((i_k xor j_k) q_k), a controlled-S from qubit k to auxiliary m
/// contributes i^((i_k - j_k) f_m), and a CCZ on qubits a, b with auxiliary m
/// contributes (-1)^((i_a i_b + j_a j_b) f_m).
inline int gate_phase_exponent(const GateMatrix &gm, Word i, Word j, Word outcome) {
    int n = gm.n();
    int n_f = gm.n_f();
    auto ib = [&](Word x, int k) { return static_cast<int>((x >> qubit_bit(n, k)) & 1u); };
    auto qb = [&](int k) { return static_cast<int>((outcome >> outcome_qubit_bit(n, n_f, k)) & 1u); };
    auto fb = [&](int m) { return static_cast<int>((outcome >> outcome_aux_bit(n_f, m)) & 1u); };
    int e = 0;
    for (int k = 1; k <= n; k++) {
        e += 2 * ((ib(i, k) ^ ib(j, k)) & qb(k));
        for (int m : gm.at(k - 1, k - 1)) {
            e += (ib(i, k) - ib(j, k)) * fb(m);
        }
    }
    for (int a = 1; a <= n; a++) {
        for (int b = a + 1; b <= n; b++) {
            for (int m : gm.at(a - 1, b - 1)) {
                e += 2 * (ib(i, a) * ib(i, b) + ib(j, a) * ib(j, b)) * fb(m);
            }
        }
    }
    return ((e % 4) + 4) % 4;
}

inline Complex phase_from_exponent(int e) {
    static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[e & 3];
}

/// Probability of one outcome from the expansion
/// 1/2^M + (2/2^M) Re sum_{i>j} rho_ij phase(i, j, outcome), M = n + n_f.
inline double closed_form_probability(const DensityMatrix &rho, const GateMatrix &gm, Word outcome) {
    if (rho.n() != gm.n()) {
        throw std::invalid_argument("state and gate matrix have different qubit counts");
    }
    double scale = std::ldexp(1.0, -(gm.n() + gm.n_f()));
    double acc = 0;
    for (Word i = 1; i < rho.dim(); i++) {
        for (Word j = 0; j < i; j++) {
            acc += (rho(i, j) * phase_from_exponent(gate_phase_exponent(gm, i, j, outcome))).real();
        }
    }
    return scale * (1.0 + 2.0 * acc);
}

/// Draws from a fixed discrete distribution. Small negative entries from
/// floating-point error are clamped to zero.
class Sampler {
  public:
    explicit Sampler(const std::vector<double> &weights) : n_(weights.size()) {
        if (weights.empty()) {
            throw std::invalid_argument("cannot sample from an empty distribution");
        }
        w_.resize(n_);
        double total = 0;
        for (std::size_t k = 0; k < n_; k++) {
            w_[k] = std::max(0.0, weights[k]);
            total += w_[k];
        }
        if (!(total > 0)) {
            throw std::invalid_argument("distribution has zero total weight");
        }
        for (auto &x : w_) {
            x /= total;
        }
        build_alias();
    }

    std::size_t size() const { return n_; }

    std::size_t draw(Rng &rng) const {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double x = u(rng) * static_cast<double>(n_);
        std::size_t k = std::min(static_cast<std::size_t>(x), n_ - 1);
        return (x - static_cast<double>(k)) < prob_[k] ? k : alias_[k];
    }

    /// Multinomial histogram of `shots` draws, added into `hist`.
    template <typename T>
    void sample_into(std::uint64_t shots, Rng &rng, std::vector<T> &hist) const {
        hist.resize(n_, T{0});
        if (shots > 4 * static_cast<std::uint64_t>(n_)) {
            // Sequential conditional binomials.
            std::uint64_t left = shots;
            double mass = 1.0;
            for (std::size_t k = 0; k < n_ && left > 0; k++) {
                if (k + 1 == n_ || mass <= 0) {
                    hist[k] += static_cast<T>(left);
                    break;
                }
                double p = std::clamp(w_[k] / mass, 0.0, 1.0);
                std::binomial_distribution<std::uint64_t> b(left, p);
                std::uint64_t c = b(rng);
                hist[k] += static_cast<T>(c);
                left -= c;
                mass -= w_[k];
            }
            return;
        }
        for (std::uint64_t s = 0; s < shots; s++) {
            hist[draw(rng)] += T{1};
        }
    }

  private:
    void build_alias() {
        prob_.assign(n_, 0.0);
        alias_.assign(n_, 0);
        std::vector<double> scaled(n_);
        std::vector<std::size_t> small, large;
        for (std::size_t k = 0; k < n_; k++) {
            scaled[k] = w_[k] * static_cast<double>(n_);
            (scaled[k] < 1.0 ? small : large).push_back(k);
        }
        while (!small.empty() && !large.empty()) {
            std::size_t s = small.back();
            small.pop_back();
            std::size_t l = large.back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if (scaled[l] < 1.0) {
                large.pop_back();
                small.push_back(l);
            }
        }
        for (std::size_t k : large) {
            prob_[k] = 1.0;
            alias_[k] = k;
        }
        for (std::size_t k : small) {
            prob_[k] = 1.0;
            alias_[k] = k;
        }
    }

    std::size_t n_;
    std::vector<double> w_;
    std::vector<double> prob_;
    std::vector<std::size_t> alias_;
};

inline CountsTable sample_counts(const ProbabilityTable &t, std::uint64_t shots, std::uint64_t seed) {
    CountsTable c{t.n, t.n_f, 0, {}};
    if (shots == 0) {
        return c;
    }
    Sampler s(t.p);
    Rng rng = make_rng(seed, 0);
    std::vector<double> hist;
    s.sample_into(shots, rng, hist);
    c = CountsTable::from_dense(t.n, t.n_f, hist);
    return c;
}

/// Outcome distribution of a direct computational-basis measurement.
inline ProbabilityTable diagonal_probabilities(const DensityMatrix &rho) {
    ProbabilityTable t{rho.n(), 0, std::vector<double>(rho.dim())};
    for (std::size_t k = 0; k < rho.dim(); k++) {
        t.p[k] = rho.diag(k);
    }
    return t;
}

inline CountsTable sample_diagonal(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed) {
    return sample_counts(diagonal_probabilities(rho), shots, seed);
}

/// Phase exponents (powers of i) that the classically controlled gates apply
/// to each system basis state when the auxiliary bits equal f.
inline std::vector<int> classical_phase_exponents(const GateMatrix &gm, Word f) {
    int n = gm.n();
    int n_f = gm.n_f();
    std::size_t d = std::size_t{1} << n;
    auto fb = [&](int m) { return static_cast<int>((f >> outcome_aux_bit(n_f, m)) & 1u); };
    std::vector<int> e(d, 0);
    for (std::size_t x = 0; x < d; x++) {
        int acc = 0;
        for (int a = 1; a <= n; a++) {
            if (!qubit_value(x, n, a)) {
                continue;
            }
            for (int m : gm.at(a - 1, a - 1)) {
                acc += fb(m);
            }
            for (int b = a + 1; b <= n; b++) {
                if (!qubit_value(x, n, b)) {
                    continue;
                }
                for (int m : gm.at(a - 1, b - 1)) {
                    acc += 2 * fb(m);
                }
            }
        }
        e[x] = acc & 3;
    }
    return e;
}

/// Measured-qubit distribution for fixed auxiliary bits f, via phase gates and
/// a fast Walsh-Hadamard transform on each eigenvector.
inline std::vector<double> classical_conditional_distribution(const Ensemble &ens, const GateMatrix &gm,
                                                              Word f) {
    int n = gm.n();
    std::size_t d = std::size_t{1} << n;
    std::vector<int> e = classical_phase_exponents(gm, f);
    std::vector<double> p(d, 0.0);
    std::vector<Complex> psi(d);
    for (std::size_t k = 0; k < ens.states.size(); k++) {
        for (std::size_t x = 0; x < d; x++) {
            psi[x] = ens.states[k](static_cast<Eigen::Index>(x)) * phase_from_exponent(e[x]);
        }
        for (int b = 0; b < n; b++) {
            detail::hadamard_unnormalized(psi, b);
        }
        for (std::size_t x = 0; x < d; x++) {
            p[x] += ens.weights[k] * std::norm(psi[x]) / static_cast<double>(d);
        }
    }
    return p;
}

inline constexpr int kMaxClassicalQubits = 12;
inline constexpr int kMaxClassicalExactAux = 12;

/// Classical-ancilla scheme: each shot draws f uniformly, applies the
/// f-activated S and CZ gates and the Hadamard layer, then measures q. Shots
/// are tallied by f first; every distinct f gets its own RNG stream.
inline CountsTable sample_classical_scheme(const DensityMatrix &rho, const GateMatrix &gm, std::uint64_t shots,
                                           std::uint64_t seed) {
    if (rho.n() != gm.n()) {
        throw std::invalid_argument("state and gate matrix have different qubit counts");
    }
    if (gm.n() > kMaxClassicalQubits) {
        throw std::invalid_argument("classical scheme sampling limited to n <= 12");
    }
    CountsTable c{gm.n(), gm.n_f(), 0, {}};
    if (shots == 0) {
        return c;
    }
    Rng rng = make_rng(seed, 0);
    std::map<Word, std::uint64_t> per_f;
    Word f_mask = gm.n_f() == 64 ? ~Word{0} : (Word{1} << gm.n_f()) - 1;
    for (std::uint64_t s = 0; s < shots; s++) {
        per_f[rng() & f_mask]++;
    }
    std::vector<std::pair<Word, std::uint64_t>> groups(per_f.begin(), per_f.end());
    Ensemble ens = eigen_ensemble(rho);
    std::vector<std::vector<std::pair<Word, double>>> out(groups.size());
    parallel_for(groups.size(), [&](std::size_t g) {
        auto [f, count] = groups[g];
        Sampler sampler(classical_conditional_distribution(ens, gm, f));
        Rng local = make_rng(seed, f + 1);
        std::vector<std::uint64_t> hist;
        sampler.sample_into(count, local, hist);
        for (std::size_t q = 0; q < hist.size(); q++) {
            if (hist[q]) {
                out[g].emplace_back((static_cast<Word>(q) << gm.n_f()) | f, static_cast<double>(hist[q]));
            }
        }
    });
    for (auto &part : out) {
        c.entries.insert(c.entries.end(), part.begin(), part.end());
    }
    std::sort(c.entries.begin(), c.entries.end());
    c.shots = static_cast<double>(shots);
    return c;
}

/// Exact distribution of the classical-ancilla scheme, enumerating every f and
/// conjugating the full density matrix by the f-activated phases and the
/// Hadamard layer.
inline ProbabilityTable classical_exact_distribution(const DensityMatrix &rho, const GateMatrix &gm) {
    if (rho.n() != gm.n()) {
        throw std::invalid_argument("state and gate matrix have different qubit counts");
    }
    if (gm.n_f() > kMaxClassicalExactAux || gm.n() > 10) {
        throw std::invalid_argument("classical exact enumeration limited to n_f <= 12");
    }
    int n = gm.n();
    Eigen::Index d = Eigen::Index{1} << n;
    CMatrix h = CMatrix::Ones(1, 1);
    CMatrix h1(2, 2);
    h1 << 1, 1, 1, -1;
    h1 /= std::sqrt(2.0);
    for (int k = 0; k < n; k++) {
        CMatrix next(h.rows() * 2, h.cols() * 2);
        for (Eigen::Index r = 0; r < h.rows(); r++) {
            for (Eigen::Index s = 0; s < h.cols(); s++) {
                next.block(2 * r, 2 * s, 2, 2) = h(r, s) * h1;
            }
        }
        h = next;
    }
    std::size_t naux = std::size_t{1} << gm.n_f();
    ProbabilityTable t{n, gm.n_f(), std::vector<double>((std::size_t{1} << n) * naux, 0.0)};
    for (Word f = 0; f < naux; f++) {
        std::vector<int> e = classical_phase_exponents(gm, f);
        CVector phase(d);
        for (Eigen::Index x = 0; x < d; x++) {
            phase(x) = phase_from_exponent(e[static_cast<std::size_t>(x)]);
        }
        CMatrix u = h * phase.asDiagonal();
        CMatrix out = u * rho.matrix() * u.adjoint();
        for (Eigen::Index q = 0; q < d; q++) {
            t.p[(static_cast<Word>(q) << gm.n_f()) | f] = out(q, q).real() / static_cast<double>(naux);
        }
    }
    return t;
}

struct CancellationReport {
    bool holds = true;
    /// First offending column pair and, for cross-column failures, the other
    /// column; -1 when unused.
    long long i = -1, j = -1, other_i = -1, other_j = -1;
};

inline constexpr int kMaxOracleQubits = 3;

/// Builds the phase table of every column i > j over every outcome from the
/// per-gate rules, splits each column's outcomes into the four phase classes,
/// and checks that each class sums every other column's alpha and beta
/// coefficients to zero while the own column's classes each hold a quarter of
/// the outcomes.
inline CancellationReport cancellation_report(const GateMatrix &gm) {
    if (gm.n() > kMaxOracleQubits) {
        throw std::invalid_argument("cancellation oracle limited to n <= 3");
    }
    std::size_t d = std::size_t{1} << gm.n();
    std::size_t outcomes = std::size_t{1} << (gm.n() + gm.n_f());
    std::vector<std::pair<Word, Word>> cols;
    for (Word i = 1; i < d; i++) {
        for (Word j = 0; j < i; j++) {
            cols.emplace_back(i, j);
        }
    }
    std::vector<std::vector<std::uint8_t>> e(cols.size(), std::vector<std::uint8_t>(outcomes));
    for (std::size_t c = 0; c < cols.size(); c++) {
        for (Word o = 0; o < outcomes; o++) {
            e[c][o] = static_cast<std::uint8_t>(gate_phase_exponent(gm, cols[c].first, cols[c].second, o));
        }
    }
    CancellationReport rep;
    for (std::size_t c = 0; c < cols.size(); c++) {
        for (int cls = 0; cls < 4; cls++) {
            std::vector<Word> members;
            for (Word o = 0; o < outcomes; o++) {
                if (e[c][o] == cls) {
                    members.push_back(o);
                }
            }
            if (members.size() * 4 != outcomes) {
                rep = {false, static_cast<long long>(cols[c].first), static_cast<long long>(cols[c].second), -1, -1};
                return rep;
            }
            for (std::size_t c2 = 0; c2 < cols.size(); c2++) {
                if (c2 == c) {
                    continue;
                }
                long long alpha = 0, beta = 0;
                for (Word o : members) {
                    switch (e[c2][o]) {
                        case 0: alpha++; break;
                        case 2: alpha--; break;
                        case 3: beta++; break;
                        case 1: beta--; break;
                    }
                }
                if (alpha != 0 || beta != 0) {
                    rep = {false, static_cast<long long>(cols[c].first), static_cast<long long>(cols[c].second),
                           static_cast<long long>(cols[c2].first), static_cast<long long>(cols[c2].second)};
                    return rep;
                }
            }
        }
    }
    return rep;
}

inline bool verify_cancellation_oracle(const GateMatrix &gm) { return cancellation_report(gm).holds; }

}  // namespace acqst

#endif  // ACQST_SIMULATOR_H
