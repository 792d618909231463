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

#ifndef ACQST_DENSITY_MATRIX_H
#define ACQST_DENSITY_MATRIX_H

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acqst/common.h"
#include "acqst/rng.h"
#include "json.hpp"

namespace acqst {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;
inline constexpr int kMaxStateQubits = 16;

/// Which invariants a DensityMatrix constructor enforces. Reconstructed
/// estimates are Hermitian with unit trace but may have negative eigenvalues.
enum class Check { Full, Hermitian, None };

/// A d x d density matrix over n qubits, d = 2^n. Basis index bit (n - k)
/// holds qubit k, so q1 is the most significant bit.
class DensityMatrix {
  public:
    DensityMatrix() = default;

    DensityMatrix(int n, CMatrix entries, Check check = Check::Full) : n_(n), m_(std::move(entries)) {
        if (n < 1 || n > kMaxStateQubits) {
            throw std::invalid_argument("qubit count out of range: " + std::to_string(n));
        }
        Eigen::Index d = Eigen::Index{1} << n;
        if (m_.rows() != d || m_.cols() != d) {
            throw std::invalid_argument("density matrix shape does not match qubit count");
        }
        if (check == Check::None) {
            return;
        }
        for (Eigen::Index i = 0; i < d; i++) {
            for (Eigen::Index j = 0; j <= i; j++) {
                if (std::abs(m_(i, j) - std::conj(m_(j, i))) > kHermitianTol) {
                    throw std::invalid_argument("density matrix is not Hermitian");
                }
            }
        }
        if (check == Check::Full) {
            if (std::abs(m_.trace() - Complex(1.0)) > kTraceTol) {
                throw std::invalid_argument("density matrix trace is not 1");
            }
            if (min_eigenvalue() < kPsdTol) {
                throw std::invalid_argument("density matrix is not positive semidefinite");
            }
        }
    }

    int n() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    double diag(std::size_t i) const { return (*this)(i, i).real(); }
    /// Real and imaginary parts of entry (i, j), i > j.
    double alpha(std::size_t i, std::size_t j) const { return (*this)(i, j).real(); }
    double beta(std::size_t i, std::size_t j) const { return (*this)(i, j).imag(); }

    Eigen::VectorXd eigenvalues() const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }

    double min_eigenvalue() const { return eigenvalues().minCoeff(); }

  private:
    int n_ = 0;
    CMatrix m_;
};

/// Symmetrizes a nearly-Hermitian matrix, normalizes the trace, and wraps it.
inline DensityMatrix make_density_matrix(int n, const CMatrix &m, Check check = Check::Full) {
    CMatrix h = (m + m.adjoint()) * 0.5;
    return DensityMatrix(n, h, check);
}

class PureState {
  public:
    PureState(int n, CVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
        if (n < 1 || n > kMaxStateQubits) {
            throw std::invalid_argument("qubit count out of range: " + std::to_string(n));
        }
        if (amps_.size() != (Eigen::Index{1} << n)) {
            throw std::invalid_argument("amplitude vector length does not match qubit count");
        }
        if (std::abs(amps_.norm() - 1.0) > 1e-12) {
            throw std::invalid_argument("pure state is not normalized");
        }
    }

    int n() const { return n_; }
    const CVector &amplitudes() const { return amps_; }

    DensityMatrix projector() const {
        return make_density_matrix(n_, amps_ * amps_.adjoint());
    }

  private:
    int n_;
    CVector amps_;
};

/// Weighted pure-state decomposition of a density matrix. Components whose
/// weight is below `cutoff` are dropped.
struct Ensemble {
    std::vector<double> weights;
    std::vector<CVector> states;
};

inline Ensemble eigen_ensemble(const DensityMatrix &rho, double cutoff = 1e-15) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix());
    Ensemble e;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
        double w = es.eigenvalues()(k);
        if (w > cutoff) {
            e.weights.push_back(w);
            e.states.push_back(es.eigenvectors().col(k));
        }
    }
    return e;
}

inline void check_qubits(int n) {
    if (n < 1 || n > kMaxStateQubits) {
        throw std::invalid_argument("qubit count out of range: " + std::to_string(n));
    }
}

inline DensityMatrix make_ghz(int n) {
    check_qubits(n);
    Eigen::Index d = Eigen::Index{1} << n;
    CMatrix m = CMatrix::Zero(d, d);
    m(0, 0) = m(0, d - 1) = m(d - 1, 0) = m(d - 1, d - 1) = 0.5;
    return DensityMatrix(n, m);
}

inline DensityMatrix make_uniform_superposition(int n) {
    check_qubits(n);
    Eigen::Index d = Eigen::Index{1} << n;
    return DensityMatrix(n, CMatrix::Constant(d, d, Complex(1.0 / static_cast<double>(d))));
}

inline DensityMatrix make_maximally_mixed(int n) {
    check_qubits(n);
    Eigen::Index d = Eigen::Index{1} << n;
    return DensityMatrix(n, CMatrix::Identity(d, d) / static_cast<double>(d));
}

/// Ginibre ensemble: G G^dagger / Tr(G G^dagger) with G a d x rank matrix of
/// standard complex Gaussians.
inline DensityMatrix random_density_matrix(int n, int rank, std::uint64_t seed) {
    check_qubits(n);
    Eigen::Index d = Eigen::Index{1} << n;
    if (rank < 1 || rank > d) {
        throw std::invalid_argument("rank out of range: " + std::to_string(rank));
    }
    Rng rng(derive_seed(seed, 0x5eed));
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(d, rank);
    for (Eigen::Index c = 0; c < rank; c++) {
        for (Eigen::Index r = 0; r < d; r++) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    CMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return make_density_matrix(n, m);
}

/// rho -> (1 - p) rho + p Z rho Z on qubit `qubit` (1-based).
inline DensityMatrix apply_dephasing(const DensityMatrix &rho, int qubit, double p) {
    if (qubit < 1 || qubit > rho.n()) {
        throw std::invalid_argument("qubit index out of range: " + std::to_string(qubit));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("dephasing probability must lie in [0, 1]");
    }
    int bit = qubit_bit(rho.n(), qubit);
    CMatrix m = rho.matrix();
    double factor = 1.0 - 2.0 * p;
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            if (((i ^ j) >> bit) & 1) {
                m(i, j) *= factor;
            }
        }
    }
    return DensityMatrix(rho.n(), m);
}

inline void check_same_shape(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("density matrices have different qubit counts");
    }
}

inline double frobenius_sq_distance(const DensityMatrix &a, const DensityMatrix &b) {
    check_same_shape(a, b);
    return (a.matrix() - b.matrix()).squaredNorm();
}

inline double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    check_same_shape(a, b);
    CMatrix diff = a.matrix() - b.matrix();
    CMatrix h = (diff + diff.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Square root of a PSD Hermitian matrix; small negative eigenvalues are
/// clamped to zero.
inline CMatrix psd_sqrt(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        ev(k) = ev(k) > 0 ? std::sqrt(ev(k)) : 0.0;
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

inline double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    check_same_shape(a, b);
    if (a.min_eigenvalue() < kPsdTol || b.min_eigenvalue() < kPsdTol) {
        throw std::invalid_argument("fidelity requires positive semidefinite inputs");
    }
    CMatrix sa = psd_sqrt(a.matrix());
    CMatrix inner = sa * b.matrix() * sa;
    inner = (inner + inner.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(inner, Eigen::EigenvaluesOnly);
    double t = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
        double v = es.eigenvalues()(k);
        if (v > 0) {
            t += std::sqrt(v);
        }
    }
    return std::min(1.0, t * t);
}

/// Sum of squared diagonal entries.
inline double purity_p_part_exact(const DensityMatrix &rho) {
    return rho.matrix().diagonal().cwiseAbs2().sum();
}

/// Sum over i != j of alpha_ij^2 + beta_ij^2.
inline double purity_ab_part_exact(const DensityMatrix &rho) {
    return rho.matrix().squaredNorm() - purity_p_part_exact(rho);
}

inline double purity_exact(const DensityMatrix &rho) {
    return rho.matrix().squaredNorm();
}

inline nlohmann::json to_json(const DensityMatrix &rho) {
    std::size_t d = rho.dim();
    std::vector<std::vector<double>> re(d, std::vector<double>(d));
    std::vector<std::vector<double>> im(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            re[i][j] = rho(i, j).real();
            im[i][j] = rho(i, j).imag();
        }
    }
    return {{"n", rho.n()}, {"re", re}, {"im", im}};
}

/// Reads {"n", "re", "im"}. Rejects non-Hermitian input; `check` selects
/// whether trace and positivity are enforced as well.
inline DensityMatrix density_matrix_from_json(const nlohmann::json &j, Check check = Check::Full) {
    int n = j.at("n").get<int>();
    check_qubits(n);
    auto re = j.at("re").get<std::vector<std::vector<double>>>();
    auto im = j.at("im").get<std::vector<std::vector<double>>>();
    std::size_t d = std::size_t{1} << n;
    if (re.size() != d || im.size() != d) {
        throw std::invalid_argument("density matrix JSON has wrong row count");
    }
    CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; i++) {
        if (re[i].size() != d || im[i].size() != d) {
            throw std::invalid_argument("density matrix JSON has wrong column count");
        }
        for (std::size_t jj = 0; jj < d; jj++) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj)) = Complex(re[i][jj], im[i][jj]);
        }
    }
    return DensityMatrix(n, m, check == Check::None ? Check::Hermitian : check);
}

}  // namespace acqst

#endif  // ACQST_DENSITY_MATRIX_H
