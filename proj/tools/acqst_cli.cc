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

// Command-line front end. Usage errors exit 2; validation failures, bad
// input files and failed searches exit 1.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "acqst/acqst.h"

namespace {

using namespace acqst;
using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot read '" + path + "'");
    }
    return json::parse(f);
}

json read_json_or_stdin(const std::string &path) {
    if (path == "-") {
        return json::parse(std::cin);
    }
    return read_json(path);
}

void emit(const std::string &out, const std::string &text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

void emit_json(const std::string &out, const json &j) { emit(out, j.dump(2) + "\n"); }

// "3" or "1..4".
std::pair<int, int> parse_range(const std::string &s) {
    auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {v, v};
        }
        std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        int lo = std::stoi(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        int hi = std::stoi(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {lo, hi};
    } catch (const std::logic_error &) {
        throw UsageError("bad qubit range '" + s + "', expected N or A..B");
    }
}

struct StateArgs {
    std::string file;
    std::string family;
    int n = 0;
    int rank = 1;
    double dephasing = 0;
    std::uint64_t seed = 0;

    void attach(CLI::App *cmd) {
        cmd->add_option("--state", file, "density matrix JSON {n, re, im}");
        cmd->add_option("--family", family, "random | ghz | uniform, instead of --state");
        cmd->add_option("--n", n, "qubit count for --family");
        cmd->add_option("--rank", rank, "rank of a random state");
        cmd->add_option("--dephasing", dephasing, "dephasing probability on qubit 1");
        cmd->add_option("--state-seed", seed, "seed for a random state");
    }

    DensityMatrix load() const {
        if (!file.empty() == !family.empty()) {
            throw UsageError("give exactly one of --state or --family");
        }
        if (!file.empty()) {
            DensityMatrix rho = density_matrix_from_json(read_json_or_stdin(file));
            return dephasing > 0 ? apply_dephasing(rho, 1, dephasing) : rho;
        }
        if (n < 1) {
            throw UsageError("--family needs --n");
        }
        return make_state(family, n, seed, rank, dephasing);
    }
};

int cmd_gen_gm(int n, const std::string &scheme, int n_f, std::uint64_t budget, const std::string &out) {
    if (n < 1) {
        throw UsageError("--n must be positive");
    }
    if (scheme == "search") {
        if (n_f < n) {
            throw UsageError("search needs --nf >= n");
        }
        SearchResult r = search_gate_matrix(n, n_f, budget);
        std::fprintf(stderr, "search: %s after %llu nodes\n", to_string(r.status),
                     static_cast<unsigned long long>(r.nodes));
        if (r.status != SearchStatus::Found) {
            return kExitFailure;
        }
        emit_json(out, to_json(*r.matrix));
        return 0;
    }
    if (scheme != "cyclic" && scheme != "max-single") {
        throw UsageError("unknown scheme '" + scheme + "'");
    }
    emit_json(out, to_json(make_gate_matrix(scheme, n)));
    return 0;
}

int cmd_validate_gm(const std::string &path) {
    GateMatrix gm = gate_matrix_from_json(read_json_or_stdin(path));
    ValidationResult v = validate(gm);
    if (v.valid) {
        std::cout << "valid\n";
        return 0;
    }
    std::cout << "invalid: failing rows";
    for (int r : v.failing_rows) {
        std::cout << " " << r;
    }
    std::cout << "\n";
    return kExitFailure;
}

int cmd_simulate(const StateArgs &sa, const std::string &gm_path, std::uint64_t shots, std::uint64_t seed,
                 bool exact, bool classical, const std::string &out) {
    DensityMatrix rho = sa.load();
    GateMatrix gm = gm_path.empty() ? default_gate_matrix(rho.n()) : gate_matrix_from_json(read_json(gm_path));
    if (gm.n() != rho.n()) {
        throw std::invalid_argument("gate matrix and state have different qubit counts");
    }
    if (exact) {
        ProbabilityTable t = classical ? classical_exact_distribution(rho, gm) : exact_outcome_probabilities(rho, gm);
        json probs = json::object();
        for (std::size_t o = 0; o < t.size(); o++) {
            probs[to_bitstring(o, t.n + t.n_f)] = t.p[o];
        }
        emit_json(out, {{"n", t.n}, {"n_f", t.n_f}, {"probabilities", probs}});
        return 0;
    }
    if (shots == 0) {
        throw UsageError("--shots must be positive");
    }
    CountsTable c = classical ? sample_classical_scheme(rho, gm, shots, seed)
                              : sample_counts(exact_outcome_probabilities(rho, gm), shots, seed);
    emit_json(out, to_json(c));
    return 0;
}

int cmd_diag_sample(const StateArgs &sa, std::uint64_t shots, std::uint64_t seed, const std::string &out) {
    if (shots == 0) {
        throw UsageError("--shots must be positive");
    }
    emit_json(out, to_json(sample_diagonal(sa.load(), shots, seed)));
    return 0;
}

GateMatrix gm_for_counts(const std::string &gm_path, const CountsTable &c) {
    return gm_path.empty() ? default_gate_matrix(c.n) : gate_matrix_from_json(read_json(gm_path));
}

int cmd_reconstruct(const std::string &counts_path, const std::string &diag_path, const std::string &gm_path,
                    bool diagnostics, const std::string &out) {
    CountsTable off = counts_from_json(read_json(counts_path));
    CountsTable diag = counts_from_json(read_json(diag_path));
    Reconstruction r = reconstruct_with_diagnostics(off, diag, gm_for_counts(gm_path, off));
    json j = to_json(r.rho);
    if (diagnostics) {
        j["diagnostics"] = {{"min_eigenvalue", r.diagnostics.min_eigenvalue},
                            {"var_alpha", r.diagnostics.var_alpha},
                            {"var_beta", r.diagnostics.var_beta}};
    }
    emit_json(out, j);
    return 0;
}

int cmd_purity(const std::string &counts_path, const std::string &diag_path, const std::string &gm_path,
               int method, const std::string &out) {
    if (method != 1 && method != 2) {
        throw UsageError("--method must be 1 or 2");
    }
    CountsTable off = counts_from_json(read_json(counts_path));
    CountsTable diag = counts_from_json(read_json(diag_path));
    PurityEstimate e = purity_estimate(off, diag, gm_for_counts(gm_path, off), static_cast<PurityMethod>(method));
    emit_json(out, {{"method", method},
                    {"purity", e.total},
                    {"p_part", e.p_part},
                    {"ab_part", e.ab_part},
                    {"ab_variance_model", e.ab_variance_model},
                    {"p_variance_model", e.p_variance_model},
                    {"degenerate_halves", e.degenerate_halves}});
    return 0;
}

struct BenchArgs {
    std::string kind;
    std::optional<std::uint64_t> seed;
    std::string range;
    std::optional<std::size_t> reps;
    std::optional<std::uint64_t> shots;
    std::optional<double> shots_mult;
    std::string state;
    std::string scheme;
    std::string out;
    std::string config;
    bool long_mode = false;
    std::optional<int> min_mult, max_mult;
};

int cmd_bench(const BenchArgs &b) {
    ExperimentConfig cfg;
    if (!b.config.empty()) {
        json j = read_json(b.config);
        j["kind"] = b.kind;
        try {
            cfg = config_from_json(j);
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    } else {
        cfg = default_config(parse_experiment_kind(b.kind));
    }
    if (!b.seed) {
        throw UsageError("bench requires --seed");
    }
    cfg.seed = *b.seed;
    if (!b.range.empty()) {
        std::tie(cfg.n_min, cfg.n_max) = parse_range(b.range);
    }
    if (b.reps) cfg.reps = *b.reps;
    if (b.shots) cfg.shots = {true, static_cast<double>(*b.shots), 2, 0};
    if (b.shots_mult) cfg.shots.value = *b.shots_mult, cfg.shots.absolute = false;
    if (!b.state.empty()) cfg.state = b.state;
    if (!b.scheme.empty()) cfg.scheme = b.scheme;
    if (!b.out.empty()) cfg.output = b.out;
    cfg.long_mode = cfg.long_mode || b.long_mode;
    if (b.min_mult) cfg.min_mult = *b.min_mult;
    if (b.max_mult) cfg.max_mult = *b.max_mult;
    try {
        validate_config(cfg);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }

    Report rep;
    std::string histogram;
    if (cfg.kind == ExperimentKind::VarianceHistogram) {
        VarianceHistogramResult r = run_variance_histogram_detail(cfg);
        rep = std::move(r.report);
        histogram = histogram_csv(r.histogram);
    } else {
        rep = run_experiment(cfg);
    }
    emit(cfg.output, rep.to_csv());
    if (!histogram.empty() && !cfg.output.empty() && cfg.output != "-") {
        write_text_file(cfg.output + ".hist.csv", histogram);
    }
    for (const auto &r : rep.rows) {
        if (!r.satisfied()) {
            std::fprintf(stderr, "note: n=%d %s %s %s not satisfied\n", r.n, r.metric.c_str(),
                         r.check().c_str(), format_number(r.theory).c_str());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Auxiliary-correlated quantum state tomography tools"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    int gen_n = 0, gen_nf = 0;
    std::string gen_scheme = "cyclic", out;
    std::uint64_t budget = 100'000'000;
    auto *gen = app.add_subcommand("gen-gm", "emit a gate matrix as JSON");
    gen->add_option("--n", gen_n, "qubit count")->required();
    gen->add_option("--scheme", gen_scheme, "cyclic | max-single | search");
    gen->add_option("--nf", gen_nf, "auxiliary count for search");
    gen->add_option("--budget", budget, "search node budget");
    gen->add_option("--out", out, "output file, stdout by default");

    std::string gm_path;
    auto *val = app.add_subcommand("validate-gm", "check the cancellation condition of a gate matrix");
    val->add_option("gate_matrix", gm_path, "gate matrix JSON, - for stdin")->required();

    StateArgs sim_state;
    std::uint64_t shots = 0, seed = 0;
    bool exact = false, classical = false;
    auto *sim = app.add_subcommand("simulate", "sample or compute the auxiliary-circuit outcome distribution");
    sim_state.attach(sim);
    sim->add_option("--gm", gm_path, "gate matrix JSON, default scheme when omitted");
    sim->add_option("--shots", shots, "number of shots");
    sim->add_option("--seed", seed, "sampling seed");
    sim->add_flag("--exact", exact, "print exact probabilities instead of counts");
    sim->add_flag("--classical", classical, "use classical random auxiliary bits");
    sim->add_option("--out", out, "output file");

    StateArgs diag_state;
    auto *dsm = app.add_subcommand("diag-sample", "sample computational-basis counts");
    diag_state.attach(dsm);
    dsm->add_option("--shots", shots, "number of shots")->required();
    dsm->add_option("--seed", seed, "sampling seed");
    dsm->add_option("--out", out, "output file");

    std::string counts_path, diag_path;
    bool diagnostics = false;
    auto *rec = app.add_subcommand("reconstruct", "estimate the density matrix from counts");
    rec->add_option("--counts", counts_path, "auxiliary-circuit counts JSON")->required();
    rec->add_option("--diag", diag_path, "direct-measurement counts JSON")->required();
    rec->add_option("--gm", gm_path, "gate matrix JSON");
    rec->add_flag("--diagnostics", diagnostics, "include variances and minimum eigenvalue");
    rec->add_option("--out", out, "output file");

    int method = 2;
    auto *pur = app.add_subcommand("purity", "estimate the purity from counts");
    pur->add_option("--counts", counts_path, "auxiliary-circuit counts JSON")->required();
    pur->add_option("--diag", diag_path, "direct-measurement counts JSON")->required();
    pur->add_option("--gm", gm_path, "gate matrix JSON");
    pur->add_option("--method", method, "1 (squared counts) or 2 (conditional products)");
    pur->add_option("--out", out, "output file");

    BenchArgs ba;
    auto *bench = app.add_subcommand("bench", "run a reproduction experiment and write CSV");
    bench->add_option("kind", ba.kind, "frobenius | sqst-compare | trace | variance | purity-variance | heisenberg")
        ->required();
    bench->add_option("--seed", ba.seed, "master seed (mandatory)");
    bench->add_option("--n", ba.range, "qubit range N or A..B");
    bench->add_option("--reps", ba.reps, "repetitions per point");
    bench->add_option("--shots", ba.shots, "absolute shot count");
    bench->add_option("--shots-mult", ba.shots_mult, "shot multiplier of the default base");
    bench->add_option("--state", ba.state, "random | ghz | uniform | all");
    bench->add_option("--scheme", ba.scheme, "cyclic | max-single | search");
    bench->add_option("--out", ba.out, "CSV output, stdout by default");
    bench->add_option("--config", ba.config, "experiment config JSON");
    bench->add_flag("--long", ba.long_mode, "allow runs up to n = 10");
    bench->add_option("--min-mult", ba.min_mult, "smallest shot multiplier of 2^n");
    bench->add_option("--max-mult", ba.max_mult, "largest shot multiplier of 2^n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen_gm(gen_n, gen_scheme, gen_nf, budget, out);
        if (*val) return cmd_validate_gm(gm_path);
        if (*sim) return cmd_simulate(sim_state, gm_path, shots, seed, exact, classical, out);
        if (*dsm) return cmd_diag_sample(diag_state, shots, seed, out);
        if (*rec) return cmd_reconstruct(counts_path, diag_path, gm_path, diagnostics, out);
        if (*pur) return cmd_purity(counts_path, diag_path, gm_path, method, out);
        if (*bench) {
            try {
                parse_experiment_kind(ba.kind);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            return cmd_bench(ba);
        }
    } catch (const UsageError &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
