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

#ifndef ACQST_EXPERIMENTS_H
#define ACQST_EXPERIMENTS_H

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "acqst/density_matrix.h"
#include "acqst/gate_matrix.h"
#include "acqst/parallel.h"
#include "acqst/purity.h"
#include "acqst/rng.h"
#include "acqst/simulator.h"
#include "acqst/sqst.h"
#include "acqst/stats.h"
#include "acqst/tomography.h"
#include "json.hpp"

namespace acqst {

inline constexpr const char *kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Closed-form theory values.

/// Expected squared Frobenius error at the optimal 1:d split.
inline double frobenius_bound(double d, double n) { return (d * d + d - 1 - 1 / d) / n; }

/// Upper bound on the expected trace distance at the optimal 1:d split.
inline double trace_distance_bound(double d, double n) { return 0.5 * std::sqrt((d * d * d + d * d - d - 1) / n); }

/// Leading-order ratio of the ACQST and local-Pauli squared Frobenius errors
/// at equal total shots, for states whose coherences are small.
inline double sqst_ratio_prediction(int n) {
    return (std::pow(8.0, n) + std::pow(4.0, n)) / std::pow(10.0, n);
}

// ---------------------------------------------------------------------------
// Configuration.

enum class ExperimentKind { FrobeniusSweep, TraceSweep, VarianceHistogram, PurityVariance, Heisenberg };

inline ExperimentKind parse_experiment_kind(const std::string &s) {
    if (s == "frobenius-sweep" || s == "frobenius" || s == "sqst-compare") return ExperimentKind::FrobeniusSweep;
    if (s == "trace-sweep" || s == "trace") return ExperimentKind::TraceSweep;
    if (s == "variance-histogram" || s == "variance") return ExperimentKind::VarianceHistogram;
    if (s == "purity-variance") return ExperimentKind::PurityVariance;
    if (s == "heisenberg") return ExperimentKind::Heisenberg;
    throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

/// Shot count as multiplier * base^(power * n), or a fixed absolute count.
struct ShotsPolicy {
    bool absolute = false;
    double value = 100;
    double base = 3;
    double power = 1;

    std::uint64_t resolve(int n) const {
        double v = absolute ? value : value * std::pow(base, power * n);
        return static_cast<std::uint64_t>(std::llround(v));
    }
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::FrobeniusSweep;
    int n_min = 1;
    int n_max = 3;
    /// random | ghz | uniform | all
    std::string state = "random";
    int state_rank = 1;
    double dephasing = 0.0;
    /// cyclic | max-single | search; cyclic falls back to [[1]] at n = 1.
    std::string scheme = "cyclic";
    ShotsPolicy shots;
    std::size_t reps = 100;
    std::uint64_t seed = 0;
    std::string output;
    bool long_mode = false;
    /// Heisenberg sweep multipliers of 2^n.
    int min_mult = 5;
    int max_mult = 50;
    int mult_step = 5;
    std::size_t histogram_bins = 41;
};

inline ShotsPolicy default_shots(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::FrobeniusSweep: return {false, 100, 3, 1};
        case ExperimentKind::TraceSweep: return {false, 200, 2, 3};
        case ExperimentKind::VarianceHistogram: return {true, 5000, 2, 0};
        case ExperimentKind::PurityVariance: return {false, 100, 2, 1};
        case ExperimentKind::Heisenberg: return {false, 1, 2, 1};
    }
    return {};
}

inline ExperimentConfig default_config(ExperimentKind k) {
    ExperimentConfig c;
    c.kind = k;
    c.shots = default_shots(k);
    if (k == ExperimentKind::PurityVariance || k == ExperimentKind::Heisenberg) {
        c.dephasing = 0.1;
        c.scheme = "max-single";
    }
    if (k == ExperimentKind::Heisenberg) {
        c.state = "uniform";
        c.n_min = c.n_max = 4;
    }
    if (k == ExperimentKind::PurityVariance) {
        c.state = "all";
    }
    return c;
}

inline int max_desk_qubits(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::FrobeniusSweep:
        case ExperimentKind::TraceSweep: return 5;
        default: return 6;
    }
}

inline void validate_config(const ExperimentConfig &c) {
    if (c.reps == 0) {
        throw std::invalid_argument("reps must be positive");
    }
    if (c.n_min < 1 || c.n_min > c.n_max) {
        throw std::invalid_argument("qubit range is empty");
    }
    int cap = c.long_mode ? 10 : max_desk_qubits(c.kind);
    if (c.n_max > cap) {
        throw std::invalid_argument("n above " + std::to_string(cap) +
                                    (c.long_mode ? "" : " requires --long"));
    }
    if (c.state != "random" && c.state != "ghz" && c.state != "uniform" && c.state != "all") {
        throw std::invalid_argument("unknown state family '" + c.state + "'");
    }
    if (c.scheme != "cyclic" && c.scheme != "max-single" && c.scheme != "search") {
        throw std::invalid_argument("unknown gate-matrix scheme '" + c.scheme + "'");
    }
    if (!(c.dephasing >= 0 && c.dephasing <= 1)) {
        throw std::invalid_argument("dephasing must lie in [0, 1]");
    }
    if (c.min_mult < 1 || c.min_mult > c.max_mult || c.mult_step < 1) {
        throw std::invalid_argument("multiplier range is empty");
    }
    for (int n = c.n_min; n <= c.n_max; n++) {
        std::uint64_t d = std::uint64_t{1} << n;
        if (c.kind != ExperimentKind::Heisenberg && c.shots.resolve(n) < d + 1) {
            throw std::invalid_argument("shot policy gives fewer than d + 1 shots at n = " + std::to_string(n));
        }
    }
}

inline ExperimentConfig config_from_json(const nlohmann::json &j) {
    ExperimentConfig c = default_config(parse_experiment_kind(j.at("kind").get<std::string>()));
    if (j.contains("n")) {
        const auto &nr = j.at("n");
        if (nr.is_array()) {
            c.n_min = nr.at(0).get<int>();
            c.n_max = nr.at(1).get<int>();
        } else {
            c.n_min = c.n_max = nr.get<int>();
        }
    }
    c.state = j.value("state", c.state);
    c.state_rank = j.value("state_rank", c.state_rank);
    c.dephasing = j.value("dephasing", c.dephasing);
    c.scheme = j.value("scheme", c.scheme);
    if (j.contains("shots")) {
        const auto &s = j.at("shots");
        if (s.is_number()) {
            c.shots = {true, s.get<double>(), 2, 0};
        } else {
            c.shots.absolute = s.contains("absolute");
            if (c.shots.absolute) {
                c.shots.value = s.at("absolute").get<double>();
            } else {
                c.shots.value = s.value("multiplier", c.shots.value);
                c.shots.base = s.value("base", c.shots.base);
                c.shots.power = s.value("power", c.shots.power);
            }
        }
    }
    c.reps = j.value("reps", c.reps);
    c.seed = j.value("seed", c.seed);
    c.output = j.value("output", c.output);
    c.long_mode = j.value("long", c.long_mode);
    c.min_mult = j.value("min_mult", c.min_mult);
    c.max_mult = j.value("max_mult", c.max_mult);
    c.mult_step = j.value("mult_step", c.mult_step);
    c.histogram_bins = j.value("histogram_bins", c.histogram_bins);
    validate_config(c);
    return c;
}

// ---------------------------------------------------------------------------
// Reports.

enum class Relation { None, AtMost, StrictlyBelow, AtLeast, WithinFactor, WithinSe, WithinRelative };

struct ReportRow {
    int n = 0;
    std::uint64_t shots = 0;
    std::string metric;
    double mean = 0;
    double std_error = std::numeric_limits<double>::quiet_NaN();
    double theory = std::numeric_limits<double>::quiet_NaN();
    Relation relation = Relation::None;
    double tolerance = 1;

    /// Recomputed from the row's own numbers.
    bool satisfied() const {
        switch (relation) {
            case Relation::None: return true;
            case Relation::AtMost: return mean <= tolerance * theory;
            case Relation::StrictlyBelow: return mean < theory;
            case Relation::AtLeast: return mean >= theory;
            case Relation::WithinFactor: return mean >= theory / tolerance && mean <= theory * tolerance;
            case Relation::WithinSe: return std::abs(mean - theory) <= tolerance * std_error;
            case Relation::WithinRelative: return std::abs(mean / theory - 1) <= tolerance;
        }
        return false;
    }

    std::string check() const;
};

inline std::string format_number(double v) {
    if (std::isnan(v)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string ReportRow::check() const {
    std::string t = format_number(tolerance);
    switch (relation) {
        case Relation::None: return "";
        case Relation::AtMost: return tolerance == 1 ? "<=" : "<=" + t + "x";
        case Relation::StrictlyBelow: return "<";
        case Relation::AtLeast: return ">=";
        case Relation::WithinFactor: return "within" + t + "x";
        case Relation::WithinSe: return "within" + t + "se";
        case Relation::WithinRelative: return "within" + t + "rel";
    }
    return "";
}

struct Report {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    /// Wall time is kept out of the CSV so reruns are byte-identical.
    double wall_seconds = 0;
    std::vector<ReportRow> rows;

    Report() = default;
    Report(std::string name, std::uint64_t s) : experiment(std::move(name)), seed(s) {}

    void add(ReportRow r) { rows.push_back(std::move(r)); }

    const ReportRow *find(const std::string &metric, int n) const {
        for (const auto &r : rows) {
            if (r.metric == metric && r.n == n) {
                return &r;
            }
        }
        return nullptr;
    }

    bool all_satisfied() const {
        for (const auto &r : rows) {
            if (!r.satisfied()) {
                return false;
            }
        }
        return true;
    }

    std::string to_csv() const {
        std::ostringstream out;
        out << "# experiment=" << experiment << "\n";
        out << "# seed=" << seed << "\n";
        out << "# version=" << version << "\n";
        out << "n,N,metric,mean,std_error,theory,check,bound_satisfied\n";
        for (const auto &r : rows) {
            out << r.n << "," << r.shots << "," << r.metric << "," << format_number(r.mean) << ","
                << format_number(r.std_error) << "," << format_number(r.theory) << "," << r.check() << ","
                << (r.satisfied() ? "true" : "false") << "\n";
        }
        return out.str();
    }
};

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    f << text;
}

// ---------------------------------------------------------------------------
// Shared Monte Carlo pieces.

inline DensityMatrix make_state(const std::string &family, int n, std::uint64_t seed, int rank = 1,
                                double dephasing = 0) {
    DensityMatrix rho;
    if (family == "ghz") {
        rho = make_ghz(n);
    } else if (family == "uniform") {
        rho = make_uniform_superposition(n);
    } else if (family == "random") {
        rho = random_density_matrix(n, rank, seed);
    } else {
        throw std::invalid_argument("unknown state family '" + family + "'");
    }
    return dephasing > 0 ? apply_dephasing(rho, 1, dephasing) : rho;
}

inline GateMatrix make_gate_matrix(const std::string &scheme, int n, int n_f = 0) {
    if (scheme == "cyclic") {
        return default_gate_matrix(n);
    }
    if (scheme == "max-single") {
        return build_max_single_gate_matrix(n);
    }
    if (scheme == "search") {
        int target = n_f > 0 ? n_f : n;
        for (int k = target; k <= n + n * (n - 1) / 2; k++) {
            SearchResult r = search_gate_matrix(n, k, 50'000'000);
            if (r.status == SearchStatus::Found) {
                return *r.matrix;
            }
            if (n_f > 0) {
                throw std::runtime_error(std::string("search at requested n_f: ") + to_string(r.status));
            }
        }
        return build_max_single_gate_matrix(n);
    }
    throw std::invalid_argument("unknown gate-matrix scheme '" + scheme + "'");
}

/// Repeated ACQST runs on one state: exact distributions are computed once,
/// each call samples fresh counts and returns the estimate.
class AcqstRunner {
  public:
    AcqstRunner(const DensityMatrix &rho, const GateMatrix &gm)
        : rho_(rho),
          gm_(gm),
          probs_(exact_outcome_probabilities(rho, gm)),
          off_(probs_.p),
          diag_(diagonal_probabilities(rho).p),
          classes_(gm) {}

    const DensityMatrix &state() const { return rho_; }
    const GateMatrix &gate_matrix() const { return gm_; }
    const ProbabilityTable &probabilities() const { return probs_; }
    const ClassTable &classes() const { return classes_; }
    const Sampler &offdiag_sampler() const { return off_; }

    void sample_splits(std::uint64_t n_off, Rng &rng, std::vector<FourWaySplit> &splits) const {
        std::vector<std::uint32_t> hist;
        off_.sample_into(n_off, rng, hist);
        classes_.classify(hist, splits);
    }

    CMatrix estimate(std::uint64_t n_diag, std::uint64_t n_off, Rng &rng) const {
        std::size_t d = rho_.dim();
        CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        std::vector<std::uint32_t> dh;
        diag_.sample_into(n_diag, rng, dh);
        for (std::size_t k = 0; k < d; k++) {
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                static_cast<double>(dh[k]) / static_cast<double>(n_diag);
        }
        std::vector<FourWaySplit> splits;
        sample_splits(n_off, rng, splits);
        for (std::size_t p = 0; p < splits.size(); p++) {
            auto [i, j] = classes_.pair(p);
            OffDiagEstimate e = estimate_offdiag(splits[p], static_cast<double>(n_off));
            auto ii = static_cast<Eigen::Index>(i);
            auto jj = static_cast<Eigen::Index>(j);
            m(ii, jj) = Complex(e.alpha, e.beta);
            m(jj, ii) = Complex(e.alpha, -e.beta);
        }
        return m;
    }

  private:
    DensityMatrix rho_;
    GateMatrix gm_;
    ProbabilityTable probs_;
    Sampler off_;
    Sampler diag_;
    ClassTable classes_;
};

inline std::uint64_t state_seed(std::uint64_t seed, int n) { return derive_seed(seed, 0x57a7e000u + n); }

inline double trace_distance_matrix(const CMatrix &a, const CMatrix &b) {
    CMatrix diff = a - b;
    CMatrix h = (diff + diff.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Aggregates per-rep values in index order.
inline RunningStats collect(const std::vector<double> &v) {
    RunningStats s;
    for (double x : v) {
        s.add(x);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Experiments.

/// ACQST against local Pauli tomography at equal total shots, with the
/// ACQST budget split 1:d between the diagonal and auxiliary runs.
inline Report run_frobenius_sweep(const ExperimentConfig &cfg) {
    validate_config(cfg);
    Report rep("frobenius-sweep", cfg.seed);
    for (int n = cfg.n_min; n <= cfg.n_max; n++) {
        DensityMatrix rho = make_state(cfg.state == "all" ? "random" : cfg.state, n, state_seed(cfg.seed, n),
                                       cfg.state_rank, cfg.dephasing);
        GateMatrix gm = make_gate_matrix(cfg.scheme, n);
        AcqstRunner runner(rho, gm);
        std::uint64_t total = cfg.shots.resolve(n);
        std::size_t settings = pow3(n);
        std::uint64_t per_setting = std::max<std::uint64_t>(1, total / settings);
        std::uint64_t d = rho.dim();
        SampleSplit split = allocate_samples(total, d);
        auto probs = sqst_setting_probabilities(rho);
        std::vector<double> fa(cfg.reps), fs(cfg.reps), la(cfg.reps), ls(cfg.reps);
        parallel_for(cfg.reps, [&](std::size_t r) {
            Rng rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), r);
            CMatrix est = runner.estimate(split.diag, split.offdiag, rng);
            fa[r] = (est - rho.matrix()).squaredNorm();
            DensityMatrix sq = sqst_from_probabilities(n, probs, per_setting, rng);
            fs[r] = (sq.matrix() - rho.matrix()).squaredNorm();
            la[r] = std::log(fa[r]);
            ls[r] = std::log(fs[r]);
        });
        RunningStats sa = collect(fa), ss = collect(fs), sla = collect(la), sls = collect(ls);
        double dd = static_cast<double>(d);
        rep.add({n, total, "acqst_frob_sq", sa.mean(), sa.std_error(), frobenius_bound(dd, double(total)),
                 Relation::AtMost, 1.1});
        rep.add({n, per_setting * settings, "sqst_frob_sq", ss.mean(), ss.std_error()});
        rep.add({n, total, "acqst_ln_frob_sq", sla.mean(), sla.std_error()});
        rep.add({n, per_setting * settings, "sqst_ln_frob_sq", sls.mean(), sls.std_error()});
        rep.add({n, total, "acqst_below_sqst", sa.mean(), std::numeric_limits<double>::quiet_NaN(), ss.mean(),
                 Relation::StrictlyBelow});
        rep.add({n, total, "frob_ratio", sa.mean() / ss.mean(), std::numeric_limits<double>::quiet_NaN(),
                 std::pow(0.8, n), Relation::WithinFactor, 2});
        rep.add({n, total, "frob_ratio_leading_order", sa.mean() / ss.mean(),
                 std::numeric_limits<double>::quiet_NaN(), sqst_ratio_prediction(n)});
    }
    return rep;
}

/// Mean trace distance at N = 200 d^3 (by default) against its upper bound.
inline Report run_trace_sweep(const ExperimentConfig &cfg) {
    validate_config(cfg);
    Report rep("trace-sweep", cfg.seed);
    for (int n = cfg.n_min; n <= cfg.n_max; n++) {
        DensityMatrix rho = make_state(cfg.state == "all" ? "random" : cfg.state, n, state_seed(cfg.seed, n),
                                       cfg.state_rank, cfg.dephasing);
        AcqstRunner runner(rho, make_gate_matrix(cfg.scheme, n));
        std::uint64_t total = cfg.shots.resolve(n);
        std::uint64_t d = rho.dim();
        SampleSplit split = allocate_samples(total, d);
        std::vector<double> td(cfg.reps), fr(cfg.reps);
        parallel_for(cfg.reps, [&](std::size_t r) {
            Rng rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), r);
            CMatrix est = runner.estimate(split.diag, split.offdiag, rng);
            td[r] = trace_distance_matrix(est, rho.matrix());
            fr[r] = (est - rho.matrix()).squaredNorm();
        });
        RunningStats st = collect(td), sf = collect(fr);
        double dd = static_cast<double>(d);
        rep.add({n, total, "trace_distance", st.mean(), st.std_error(), trace_distance_bound(dd, double(total)),
                 Relation::AtMost});
        rep.add({n, total, "frob_sq", sf.mean(), sf.std_error(), frobenius_bound(dd, double(total)),
                 Relation::AtMost, 1.1});
    }
    return rep;
}

struct HistogramBin {
    double center = 0;
    std::size_t count = 0;
    double expected = 0;
};

struct VarianceHistogramResult {
    Report report;
    /// Histogram of the first repetition's errors at the last n of the range.
    std::vector<HistogramBin> histogram;
    std::vector<double> errors;
};

/// Errors of every off-diagonal parameter from single reconstructions, tested
/// against Normal(0, 1/sqrt(2N)); with reps > 1 also the per-parameter mean
/// and variance over repetitions against (1 - 4 alpha^2) / (2N).
inline VarianceHistogramResult run_variance_histogram_detail(const ExperimentConfig &cfg) {
    validate_config(cfg);
    VarianceHistogramResult out;
    out.report = Report("variance-histogram", cfg.seed);
    for (int n = cfg.n_min; n <= cfg.n_max; n++) {
        DensityMatrix rho = make_state(cfg.state == "all" ? "random" : cfg.state, n, state_seed(cfg.seed, n),
                                       cfg.state_rank, cfg.dephasing);
        GateMatrix gm = make_gate_matrix(cfg.scheme, n);
        std::uint64_t shots = cfg.shots.resolve(n);
        double sigma = std::sqrt(1.0 / (2.0 * static_cast<double>(shots)));
        std::vector<double> errors;
        std::vector<std::pair<Word, Word>> pairs;
        std::size_t d = rho.dim();
        for (Word i = 1; i < d; i++) {
            for (Word j = 0; j < i; j++) {
                pairs.emplace_back(i, j);
            }
        }
        bool dense = gm.n() + gm.n_f() <= 20;
        std::size_t params = 2 * pairs.size();
        std::vector<double> truth(params);
        for (std::size_t p = 0; p < pairs.size(); p++) {
            truth[2 * p] = rho.alpha(pairs[p].first, pairs[p].second);
            truth[2 * p + 1] = rho.beta(pairs[p].first, pairs[p].second);
        }
        if (dense) {
            AcqstRunner runner(rho, gm);
            std::vector<std::vector<double>> est(cfg.reps, std::vector<double>(params));
            parallel_for(cfg.reps, [&](std::size_t r) {
                Rng rng = make_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), r);
                std::vector<FourWaySplit> splits;
                runner.sample_splits(shots, rng, splits);
                for (std::size_t p = 0; p < splits.size(); p++) {
                    OffDiagEstimate e = estimate_offdiag(splits[p], static_cast<double>(shots));
                    est[r][2 * p] = e.alpha;
                    est[r][2 * p + 1] = e.beta;
                }
            });
            errors.resize(params);
            for (std::size_t k = 0; k < params; k++) {
                errors[k] = est[0][k] - truth[k];
            }
            if (cfg.reps > 1) {
                double max_z = 0, max_rel = 0, sum_ratio = 0;
                for (std::size_t k = 0; k < params; k++) {
                    RunningStats s;
                    for (std::size_t r = 0; r < cfg.reps; r++) {
                        s.add(est[r][k]);
                    }
                    double se = s.std_error();
                    if (se > 0) {
                        max_z = std::max(max_z, std::abs(s.mean() - truth[k]) / se);
                    }
                    double theory = (1 - 4 * truth[k] * truth[k]) / (2.0 * static_cast<double>(shots));
                    max_rel = std::max(max_rel, std::abs(s.variance() / theory - 1));
                    sum_ratio += s.variance() / theory;
                }
                out.report.add({n, shots, "max_bias_z", max_z, std::numeric_limits<double>::quiet_NaN(), 5,
                                Relation::AtMost});
                out.report.add({n, shots, "max_variance_rel_dev", max_rel, std::numeric_limits<double>::quiet_NaN(),
                                0.05, Relation::AtMost});
                out.report.add({n, shots, "mean_variance_ratio", sum_ratio / static_cast<double>(params),
                                std::numeric_limits<double>::quiet_NaN(), 1.0});
            }
        } else {
            // Wide circuits: classical-scheme sampling and sparse classification.
            CountsTable counts = sample_classical_scheme(rho, gm, shots, derive_seed(cfg.seed, n));
            CountsTable diag{n, 0, 0, {}};
            Reconstruction rec = reconstruct_with_diagnostics(counts, diag, gm);
            errors.resize(params);
            for (std::size_t p = 0; p < pairs.size(); p++) {
                errors[2 * p] = rec.rho.alpha(pairs[p].first, pairs[p].second) - truth[2 * p];
                errors[2 * p + 1] = rec.rho.beta(pairs[p].first, pairs[p].second) - truth[2 * p + 1];
            }
        }
        RunningStats es = collect(errors);
        KsResult ks = ks_test_normal(errors, 0.0, sigma);
        out.report.add({n, shots, "ks_p_value", ks.p_value, std::numeric_limits<double>::quiet_NaN(), 0.01,
                        Relation::AtLeast});
        out.report.add({n, shots, "ks_statistic", ks.statistic});
        out.report.add({n, shots, "error_mean", es.mean(), es.std_error(), 0.0, Relation::WithinSe, 5});
        out.report.add({n, shots, "error_std", std::sqrt(es.variance()), std::numeric_limits<double>::quiet_NaN(),
                        sigma, Relation::AtMost, 1.1});
        if (n == cfg.n_max) {
            std::size_t bins = std::max<std::size_t>(cfg.histogram_bins, 1);
            double lo = -5 * sigma, width = 10 * sigma / static_cast<double>(bins);
            out.histogram.assign(bins, {});
            for (std::size_t b = 0; b < bins; b++) {
                double a = lo + width * static_cast<double>(b);
                out.histogram[b].center = a + width / 2;
                out.histogram[b].expected =
                    static_cast<double>(errors.size()) * (normal_cdf(a + width, 0, sigma) - normal_cdf(a, 0, sigma));
            }
            for (double e : errors) {
                double pos = (e - lo) / width;
                if (pos >= 0 && pos < static_cast<double>(bins)) {
                    out.histogram[static_cast<std::size_t>(pos)].count++;
                }
            }
            out.errors = errors;
        }
    }
    return out;
}

inline Report run_variance_histogram(const ExperimentConfig &cfg) { return run_variance_histogram_detail(cfg).report; }

inline std::string histogram_csv(const std::vector<HistogramBin> &h) {
    std::ostringstream out;
    out << "bin_center,count,normal_expected\n";
    for (const auto &b : h) {
        out << format_number(b.center) << "," << b.count << "," << format_number(b.expected) << "\n";
    }
    return out.str();
}

/// Variance of the off-diagonal purity estimates over repetitions. Method 1
/// runs on the cyclic matrix (2n - 1 auxiliaries) and on the maximal single
/// matrix; method 2 runs on the maximal single matrix sharing method 1's
/// counts, and on the cyclic matrix for the auxiliary-count comparison, which
/// is only reported when the two auxiliary counts differ.
inline Report run_purity_variance(const ExperimentConfig &cfg) {
    validate_config(cfg);
    Report rep("purity-variance", cfg.seed);
    std::vector<std::string> families =
        cfg.state == "all" ? std::vector<std::string>{"uniform", "random", "ghz"} : std::vector<std::string>{cfg.state};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n = cfg.n_min; n <= cfg.n_max; n++) {
        std::uint64_t shots = cfg.shots.resolve(n);
        double nn = static_cast<double>(shots);
        for (std::size_t fi = 0; fi < families.size(); fi++) {
            const std::string &fam = families[fi];
            DensityMatrix rho = make_state(fam, n, state_seed(cfg.seed, n), cfg.state_rank, cfg.dephasing);
            double ab = purity_ab_part_exact(rho);
            std::uint64_t base = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), fi);

            // Method 1 on the cyclic matrix.
            GateMatrix cyc = default_gate_matrix(n);
            ProbabilityTable tc = exact_outcome_probabilities(rho, cyc);
            Sampler sc(tc.p);
            ClassTable cc(cyc);
            std::vector<double> m1(cfg.reps), m2c(cfg.reps);
            parallel_for(cfg.reps, [&](std::size_t r) {
                Rng rng = make_rng(derive_seed(base, 1), r);
                std::vector<std::uint32_t> hist;
                sc.sample_into(shots, rng, hist);
                double s2 = 0;
                for (auto c : hist) {
                    s2 += static_cast<double>(c) * static_cast<double>(c);
                }
                m1[r] = std::ldexp((s2 - nn) / (nn * (nn - 1)), tc.n + tc.n_f) - 1.0;
                if (n >= 2) {
                    std::vector<FourWaySplit> splits;
                    cc.classify(hist, splits);
                    std::size_t deg = 0;
                    double v = 0;
                    for (const auto &sp : splits) {
                        v += method2_column(sp, deg);
                    }
                    m2c[r] = v;
                }
            });
            RunningStats s1 = collect(m1);
            std::string tag = "_" + fam;
            rep.add({n, shots, "m1_mean" + tag, s1.mean(), s1.std_error(), ab, Relation::WithinSe, 5});
            rep.add({n, shots, "m1_var" + tag, s1.variance(), nan, method1_variance_bound(n, cyc.n_f(), nn, ab),
                     Relation::AtMost});
            if (fam == "ghz") {
                rep.add({n, shots, "m1_var_ghz_form" + tag, s1.variance(), nan,
                         method1_variance_ghz(n, cyc.n_f(), nn, ab), Relation::AtMost});
            }
            rep.add({n, shots, "m1_var_exact" + tag, s1.variance(), nan, method1_variance_exact(tc, nn),
                     Relation::WithinRelative, 0.1});

            // Method 1 and method 2 on shared counts from the maximal single matrix.
            GateMatrix mx = build_max_single_gate_matrix(n);
            if (n >= 2 && n + mx.n_f() <= 16) {
                ProbabilityTable tm = exact_outcome_probabilities(rho, mx);
                Sampler sm(tm.p);
                ClassTable cm(mx);
                std::vector<double> a1(cfg.reps), a2(cfg.reps);
                parallel_for(cfg.reps, [&](std::size_t r) {
                    Rng rng = make_rng(derive_seed(base, 2), r);
                    std::vector<std::uint32_t> hist;
                    sm.sample_into(shots, rng, hist);
                    double s2 = 0;
                    for (auto c : hist) {
                        s2 += static_cast<double>(c) * static_cast<double>(c);
                    }
                    a1[r] = std::ldexp((s2 - nn) / (nn * (nn - 1)), tm.n + tm.n_f) - 1.0;
                    std::vector<FourWaySplit> splits;
                    cm.classify(hist, splits);
                    std::size_t deg = 0;
                    double v = 0;
                    for (const auto &sp : splits) {
                        v += method2_column(sp, deg);
                    }
                    a2[r] = v;
                });
                RunningStats t1 = collect(a1), t2 = collect(a2), tcyc = collect(m2c);
                rep.add({n, shots, "m2_mean" + tag, t2.mean(), t2.std_error(), ab, Relation::WithinSe, 5});
                rep.add({n, shots, "m2_var" + tag, t2.variance(), nan, method2_variance_approx(n, nn, ab),
                         Relation::AtMost, 1.5});
                rep.add({n, shots, "m2_below_m1_shared" + tag, t2.variance(), nan, t1.variance(),
                         Relation::StrictlyBelow});
                rep.add({n, shots, "m2_var_cyclic" + tag, tcyc.variance(), nan, method2_variance_approx(n, nn, ab)});
                if (mx.n_f() > cyc.n_f()) {
                    rep.add({n, shots, "m2_max_below_cyclic" + tag, t2.variance(), nan, tcyc.variance(),
                             Relation::AtMost});
                }
            }
        }
    }
    return rep;
}

/// Method 2 error against N in {min_mult, ..., max_mult} * 2^n; the linear fit
/// of 1 / delta p against N is reported as R^2.
inline Report run_heisenberg(const ExperimentConfig &cfg) {
    validate_config(cfg);
    Report rep("heisenberg", cfg.seed);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n = cfg.n_min; n <= cfg.n_max; n++) {
        DensityMatrix rho = make_state(cfg.state == "all" ? "uniform" : cfg.state, n, state_seed(cfg.seed, n),
                                       cfg.state_rank, cfg.dephasing);
        GateMatrix gm = make_gate_matrix(cfg.scheme, n);
        std::vector<std::uint64_t> shot_list;
        for (int m = cfg.min_mult; m <= cfg.max_mult; m += cfg.mult_step) {
            shot_list.push_back(static_cast<std::uint64_t>(m) << n);
        }
        auto rows = heisenberg_sweep(rho, gm, shot_list, cfg.reps, derive_seed(cfg.seed, static_cast<std::uint64_t>(n)));
        std::vector<double> xs, ys;
        double ab = purity_ab_part_exact(rho);
        for (const auto &r : rows) {
            double nn = static_cast<double>(r.shots);
            rep.add({n, r.shots, "delta_p", r.delta_p, nan, std::sqrt(method2_variance_approx(n, nn, ab))});
            rep.add({n, r.shots, "inv_delta_p", r.inv_delta_p});
            xs.push_back(nn);
            ys.push_back(r.inv_delta_p);
        }
        if (xs.size() >= 2) {
            LinearFit fit = linear_fit(xs, ys);
            rep.add({n, 0, "inv_delta_p_slope", fit.slope});
            rep.add({n, 0, "linear_fit_r2", fit.r_squared, nan, 0.95, Relation::AtLeast});
        }
    }
    return rep;
}

inline Report run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.kind) {
        case ExperimentKind::FrobeniusSweep: return run_frobenius_sweep(cfg);
        case ExperimentKind::TraceSweep: return run_trace_sweep(cfg);
        case ExperimentKind::VarianceHistogram: return run_variance_histogram(cfg);
        case ExperimentKind::PurityVariance: return run_purity_variance(cfg);
        case ExperimentKind::Heisenberg: return run_heisenberg(cfg);
    }
    throw std::invalid_argument("unknown experiment");
}

struct EstimatorComparison {
    double alpha = 0;
    std::uint64_t shots = 0;
    double var_conditional = 0;
    double var_frequency = 0;
    double mean_conditional = 0;
    double mean_frequency = 0;
};

/// Both estimators of alpha evaluated on the same four-way splits drawn from
/// class probabilities 1/4 +- alpha/2, 1/4 +- beta/2 with beta = 0.
inline EstimatorComparison compare_estimators(double alpha, std::uint64_t shots, std::size_t reps,
                                              std::uint64_t seed) {
    if (reps < 2 || shots < 2) {
        throw std::invalid_argument("comparison needs at least two reps and two shots");
    }
    Sampler s({0.25 + alpha / 2, 0.25 - alpha / 2, 0.25, 0.25});
    std::vector<double> c(reps), f(reps);
    parallel_for(reps, [&](std::size_t r) {
        Rng rng = make_rng(seed, r);
        std::vector<std::uint64_t> hist;
        s.sample_into(shots, rng, hist);
        FourWaySplit sp{double(hist[0]), double(hist[1]), double(hist[2]), double(hist[3])};
        c[r] = estimate_offdiag(sp, double(shots)).alpha;
        f[r] = estimate_offdiag_frequency(sp, double(shots)).alpha;
    });
    RunningStats sc = collect(c), sf = collect(f);
    return {alpha, shots, sc.variance(), sf.variance(), sc.mean(), sf.mean()};
}

}  // namespace acqst

#endif  // ACQST_EXPERIMENTS_H
