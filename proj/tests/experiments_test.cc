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

#include "acqst/experiments.h"

#include "gtest/gtest.h"

using namespace acqst;

TEST(experiments, shot_policies) {
    ASSERT_EQ(default_shots(ExperimentKind::FrobeniusSweep).resolve(2), 900u);
    ASSERT_EQ(default_shots(ExperimentKind::TraceSweep).resolve(1), 1600u);
    ASSERT_EQ(default_shots(ExperimentKind::TraceSweep).resolve(2), 12800u);
    ASSERT_EQ(default_shots(ExperimentKind::VarianceHistogram).resolve(5), 5000u);
    ASSERT_EQ(default_shots(ExperimentKind::PurityVariance).resolve(3), 800u);
}

TEST(experiments, bound_closed_forms) {
    // d = 2: (4 + 2 - 1 - 1/2) / N and (1/2) sqrt((8 + 4 - 2 - 1) / N).
    ASSERT_DOUBLE_EQ(frobenius_bound(2, 9), 0.5);
    ASSERT_DOUBLE_EQ(trace_distance_bound(2, 1600), 0.5 * std::sqrt(9.0 / 1600));
    ASSERT_DOUBLE_EQ(sqst_ratio_prediction(2), 80.0 / 100.0);
}

TEST(experiments, config_validation) {
    ExperimentConfig c = default_config(ExperimentKind::TraceSweep);
    ASSERT_NO_THROW(validate_config(c));
    c.reps = 0;
    ASSERT_THROW(validate_config(c), std::invalid_argument);
    c = default_config(ExperimentKind::FrobeniusSweep);
    c.n_min = 3;
    c.n_max = 2;
    ASSERT_THROW(validate_config(c), std::invalid_argument);
    c.n_min = 1;
    c.n_max = 6;
    ASSERT_THROW(validate_config(c), std::invalid_argument);
    c.long_mode = true;
    ASSERT_NO_THROW(validate_config(c));
    c = default_config(ExperimentKind::FrobeniusSweep);
    c.shots = {true, 4, 2, 0};
    c.n_max = 2;
    ASSERT_THROW(validate_config(c), std::invalid_argument);
    c = default_config(ExperimentKind::FrobeniusSweep);
    c.state = "bell";
    ASSERT_THROW(validate_config(c), std::invalid_argument);
    ASSERT_THROW(parse_experiment_kind("nope"), std::invalid_argument);
    ASSERT_THROW(run_frobenius_sweep([] {
                     ExperimentConfig z = default_config(ExperimentKind::FrobeniusSweep);
                     z.reps = 0;
                     return z;
                 }()),
                 std::invalid_argument);
}

TEST(experiments, config_json) {
    nlohmann::json j = {{"kind", "trace"},           {"n", {1, 2}}, {"reps", 7}, {"seed", 11},
                        {"shots", {{"absolute", 300}}}, {"state", "ghz"}};
    ExperimentConfig c = config_from_json(j);
    ASSERT_EQ(c.kind, ExperimentKind::TraceSweep);
    ASSERT_EQ(c.n_min, 1);
    ASSERT_EQ(c.n_max, 2);
    ASSERT_EQ(c.reps, 7u);
    ASSERT_EQ(c.seed, 11u);
    ASSERT_EQ(c.shots.resolve(2), 300u);
    ASSERT_EQ(c.state, "ghz");
    nlohmann::json m = {{"kind", "frobenius"}, {"shots", {{"multiplier", 10}, {"base", 4}}}};
    ASSERT_EQ(config_from_json(m).shots.resolve(2), 160u);
    ASSERT_THROW(config_from_json({{"kind", "trace"}, {"reps", 0}}), std::invalid_argument);
}

TEST(experiments, report_rows_and_csv) {
    ReportRow below{1, 10, "x", 1.0, 0.1, 2.0, Relation::AtMost};
    ASSERT_TRUE(below.satisfied());
    below.mean = 2.5;
    ASSERT_FALSE(below.satisfied());
    ReportRow factor{1, 10, "r", 0.5, NAN, 0.8, Relation::WithinFactor, 2};
    ASSERT_TRUE(factor.satisfied());
    factor.mean = 0.3;
    ASSERT_FALSE(factor.satisfied());
    ReportRow se{1, 10, "m", 1.3, 0.1, 1.0, Relation::WithinSe, 5};
    ASSERT_TRUE(se.satisfied());
    se.mean = 1.6;
    ASSERT_FALSE(se.satisfied());
    ReportRow strict{1, 10, "s", 1.0, NAN, 1.0, Relation::StrictlyBelow};
    ASSERT_FALSE(strict.satisfied());

    Report rep("demo", 3);
    rep.add({2, 900, "acqst_frob_sq", 0.1, NAN, 1.0 / 3, Relation::AtMost, 1.1});
    ASSERT_EQ(rep.to_csv(),
              "# experiment=demo\n# seed=3\n# version=" + std::string(kVersion) +
                  "\nn,N,metric,mean,std_error,theory,check,bound_satisfied\n"
                  "2,900,acqst_frob_sq,0.1,,0.333333333333,<=1.1x,true\n");
    ASSERT_NE(rep.find("acqst_frob_sq", 2), nullptr);
    ASSERT_EQ(rep.find("acqst_frob_sq", 3), nullptr);
}

TEST(experiments, sweeps_are_deterministic) {
    ExperimentConfig c = default_config(ExperimentKind::TraceSweep);
    c.n_min = 1;
    c.n_max = 2;
    c.reps = 20;
    c.seed = 7;
    std::string a = run_trace_sweep(c).to_csv();
    ASSERT_EQ(a, run_trace_sweep(c).to_csv());
    c.seed = 8;
    ASSERT_NE(a, run_trace_sweep(c).to_csv());

    ExperimentConfig f = default_config(ExperimentKind::FrobeniusSweep);
    f.n_max = 2;
    f.reps = 20;
    f.seed = 1;
    Report r = run_frobenius_sweep(f);
    ASSERT_EQ(r.to_csv(), run_frobenius_sweep(f).to_csv());
    ASSERT_NE(r.find("acqst_frob_sq", 1), nullptr);
    ASSERT_NE(r.find("frob_ratio", 2), nullptr);
}

TEST(experiments, variance_histogram_small) {
    ExperimentConfig c = default_config(ExperimentKind::VarianceHistogram);
    c.n_min = c.n_max = 2;
    c.reps = 200;
    c.shots = {true, 500, 2, 0};
    c.seed = 5;
    VarianceHistogramResult r = run_variance_histogram_detail(c);
    ASSERT_EQ(r.errors.size(), 12u);
    ASSERT_FALSE(r.histogram.empty());
    std::size_t binned = 0;
    for (const auto &b : r.histogram) {
        binned += b.count;
    }
    ASSERT_LE(binned, r.errors.size());
    ASSERT_NE(r.report.find("ks_p_value", 2), nullptr);
    ASSERT_NE(r.report.find("max_variance_rel_dev", 2), nullptr);
}

TEST(experiments, purity_and_heisenberg_rows) {
    ExperimentConfig c = default_config(ExperimentKind::PurityVariance);
    c.n_min = c.n_max = 2;
    c.reps = 200;
    c.seed = 3;
    Report r = run_purity_variance(c);
    for (const char *m : {"m1_mean_uniform", "m1_var_random", "m1_var_ghz_form_ghz", "m2_var_ghz", "m2_below_m1_shared_uniform"}) {
        ASSERT_NE(r.find(m, 2), nullptr) << m;
    }
    // At n = 2 the cyclic and maximal single matrices both use three auxiliaries.
    ASSERT_EQ(r.find("m2_max_below_cyclic_uniform", 2), nullptr);
    ExperimentConfig h = default_config(ExperimentKind::Heisenberg);
    h.n_min = h.n_max = 2;
    h.reps = 50;
    h.seed = 3;
    Report hr = run_heisenberg(h);
    ASSERT_NE(hr.find("linear_fit_r2", 2), nullptr);
}

TEST(experiments, estimator_comparison) {
    EstimatorComparison e = compare_estimators(0.4, 500, 4000, 1);
    ASSERT_LT(e.var_conditional, e.var_frequency);
    ASSERT_NEAR(e.mean_conditional, 0.4, 0.01);
    ASSERT_THROW(compare_estimators(0.1, 500, 1, 1), std::invalid_argument);
}

TEST(experiments, gate_matrix_schemes) {
    ASSERT_TRUE(is_valid(make_gate_matrix("cyclic", 3)));
    ASSERT_TRUE(is_valid(make_gate_matrix("max-single", 3)));
    GateMatrix s = make_gate_matrix("search", 2);
    ASSERT_TRUE(is_valid(s));
    ASSERT_EQ(s.n_f(), 3);
    ASSERT_THROW(make_gate_matrix("latin", 2), std::invalid_argument);
}
