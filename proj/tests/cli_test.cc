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

// Drives the installed command-line tool through std::system.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acqst/acqst.h"
#include "gtest/gtest.h"

namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("acqst_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    int run(const std::string &args) {
        std::string cmd = std::string(ACQST_CLI_PATH) + " " + args + " >" + path("stdout.txt") + " 2>" +
                          path("stderr.txt");
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const std::string &name) const {
        std::ifstream f(path(name), std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    void write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name), std::ios::binary) << text;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, validate_gm_cyclic_and_empty_sequence) {
    ASSERT_EQ(run("gen-gm --n 4 --out " + path("gm.json")), 0);
    ASSERT_EQ(run("validate-gm " + path("gm.json")), 0);
    ASSERT_EQ(read("stdout.txt"), "valid\n");

    write("bad.json", R"({"n": 2, "n_f": 2, "entries": [[[1], []], [[], [2]]]})");
    ASSERT_EQ(run("validate-gm " + path("bad.json")), 1);
    ASSERT_EQ(read("stdout.txt"), "invalid: failing rows 1\n");
}

TEST_F(CliTest, usage_errors_exit_two) {
    ASSERT_EQ(run(""), 2);
    ASSERT_EQ(run("no-such-command"), 2);
    ASSERT_EQ(run("bench trace --n 1..2 --reps 5"), 2);
    ASSERT_EQ(run("bench trace --n 2..1 --reps 5 --seed 1"), 2);
    ASSERT_EQ(run("bench trace --n x --reps 5 --seed 1"), 2);
    ASSERT_EQ(run("bench trace --n 1 --reps 0 --seed 1"), 2);
    ASSERT_EQ(run("bench nope --seed 1"), 2);
    ASSERT_EQ(run("gen-gm"), 2);
}

TEST_F(CliTest, search_outcomes) {
    ASSERT_EQ(run("gen-gm --n 2 --nf 2 --scheme search"), 1);
    ASSERT_EQ(run("gen-gm --n 2 --nf 3 --scheme search --out " + path("s.json")), 0);
    ASSERT_EQ(run("validate-gm " + path("s.json")), 0);
}

TEST_F(CliTest, bench_trace_is_byte_identical) {
    ASSERT_EQ(run("bench trace --n 1..3 --reps 50 --seed 7 --out " + path("a.csv")), 0);
    ASSERT_EQ(run("bench trace --n 1..3 --reps 50 --seed 7 --out " + path("b.csv")), 0);
    std::string a = read("a.csv");
    ASSERT_FALSE(a.empty());
    ASSERT_EQ(a, read("b.csv"));
    ASSERT_NE(a.find("1,1600,trace_distance,"), std::string::npos);
}

TEST_F(CliTest, pipeline_round_trip) {
    ASSERT_EQ(run("gen-gm --n 2 --out " + path("gm.json")), 0);
    ASSERT_EQ(run("simulate --family ghz --n 2 --gm " + path("gm.json") + " --shots 40000 --seed 3 --out " +
                  path("off.json")),
              0);
    ASSERT_EQ(run("diag-sample --family ghz --n 2 --shots 10000 --seed 4 --out " + path("diag.json")), 0);
    ASSERT_EQ(run("reconstruct --counts " + path("off.json") + " --diag " + path("diag.json") + " --gm " +
                  path("gm.json") + " --diagnostics --out " + path("rho.json")),
              0);
    nlohmann::json rho = nlohmann::json::parse(read("rho.json"));
    ASSERT_NEAR(rho["re"][3][0].get<double>(), 0.5, 0.02);
    ASSERT_TRUE(rho.contains("diagnostics"));
    ASSERT_EQ(run("purity --method 2 --counts " + path("off.json") + " --diag " + path("diag.json") + " --out " +
                  path("p.json")),
              0);
    nlohmann::json p = nlohmann::json::parse(read("p.json"));
    ASSERT_NEAR(p["purity"].get<double>(), 1.0, 0.05);
    ASSERT_EQ(run("purity --method 3 --counts " + path("off.json") + " --diag " + path("diag.json")), 2);

    write("broken.json", "{\"n\": 2}");
    ASSERT_EQ(run("reconstruct --counts " + path("broken.json") + " --diag " + path("diag.json")), 1);
}

TEST_F(CliTest, state_file_and_exact_probabilities) {
    std::ofstream(path("state.json")) << acqst::to_json(acqst::make_uniform_superposition(1)).dump();
    ASSERT_EQ(run("simulate --state " + path("state.json") + " --exact --out " + path("p.json")), 0);
    nlohmann::json p = nlohmann::json::parse(read("p.json"));
    double total = 0;
    for (const auto &[k, v] : p["probabilities"].items()) {
        total += v.get<double>();
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
    ASSERT_EQ(run("simulate --exact"), 2);
}
