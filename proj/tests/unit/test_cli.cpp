// Copyright 2026 The pmst Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "pmst/cli/commands.hpp"
#include "pmst/io.hpp"

using namespace pmst;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string &input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("pmst_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }
    void write(const std::string &name, const std::string &text) const { atomic_write(dir_ / name, text); }

    std::filesystem::path dir_;
};

} // namespace

TEST_F(Cli, ConstructGeneralReproducesMatrix) {
    write("triple.json", R"({"states": [[1,0,0],[0.5,0,0.8660254037844386],[-0.8660254037844386,0,-0.5]],
                             "r": [1, 1, 1.7320508075688772]})");
    const auto r = run_cli({"--out", path("b.json"), "construct", "--method", "general", "--states", path("triple.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto b = bundle_from_json(read_file(path("b.json")));
    Eigen::MatrixXd w(3, 2);
    const double h = std::sqrt(3.0) / 2;
    w << h, 0.5, h, -0.5, -2 * h, 0;
    EXPECT_LE((b.witness.coefficients() - w).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NE(r.out.find("ideal maximum: 3.73205080756"), std::string::npos) << r.out;
}

TEST_F(Cli, ConstructUmbrellaToStdout) {
    const auto r = run_cli({"construct", "--method", "umbrella", "--c", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto b = bundle_from_json(r.out);
    EXPECT_NEAR(std::abs(b.witness(0, 0)), 1 / std::sqrt(12.0), 1e-15);
    EXPECT_NE(r.err.find("construction: umbrella"), std::string::npos);
}

TEST_F(Cli, ConstructCoplanarFails) {
    write("flat.json", R"({"states": [[1,0,0],[0,1,0],[-1,0,0],[0,-1,0]]})");
    const auto r = run_cli({"construct", "--method", "4x3", "--states", path("flat.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error: CoplanarStates"), std::string::npos) << r.err;
}

TEST_F(Cli, ConstructDoublesWhenNeeded) {
    // Skewed POVM where a fixed outcome beats the plain 4x3 witness.
    write("skew.json", R"({"states": [[0,0,-1],[0.99,0,0.14106735979665885],
                           [-0.495,0.8573651497465943,0.14106735979665885],
                           [-0.495,-0.8573651497465943,0.14106735979665885]]})");
    const auto r = run_cli({"--format", "machine", "--out", path("b.json"), "construct", "--method", "4x3", "--states",
                            path("skew.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = json::parse(r.out);
    const auto b = bundle_from_json(read_file(path("b.json")));
    EXPECT_EQ(summary.at("doubled").get<bool>(), b.doubled);
    if (b.doubled) {
        EXPECT_EQ(b.witness.num_states(), 8);
        EXPECT_LE(b.witness.coefficients().colwise().sum().cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST_F(Cli, BoundsUmbrellaMachine) {
    const auto r = run_cli({"--format", "machine", "bounds", "--umbrella-c", "2.5", "--starts", "32"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.at("bounds").size(), 3u);
    EXPECT_NEAR(j["bounds"][1]["value"].get<double>(), 1.9960, 2e-3);
    EXPECT_NEAR(j["bounds"][2]["value"].get<double>(), 2.0, 1e-9);
    EXPECT_EQ(j["run"]["seeds"][0], 1);
}

TEST_F(Cli, BoundsSweepCsv) {
    const auto r = run_cli({"--out", path("sweep.csv"), "bounds", "--umbrella-sweep", "--starts", "16"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(read_file(path("sweep.csv")));
    std::string line;
    int rows = 0;
    bool header = false;
    while (std::getline(csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            EXPECT_EQ(line, "c,W_class,W_R2,W_C2");
            header = true;
            continue;
        }
        double c, wc, wr, wq;
        char sep;
        std::istringstream row(line);
        row >> c >> sep >> wc >> sep >> wr >> sep >> wq;
        EXPECT_LE(wc, wr + 1e-9) << line;
        EXPECT_LE(wr, wq + 1e-9) << line;
        EXPECT_NEAR(wq, 2.0, 1e-6) << line;
        if (c == 3.0) {
            EXPECT_NEAR(wc, 2.0, 1e-6);
            EXPECT_NEAR(wr, 2.0, 1e-6);
        }
        ++rows;
    }
    EXPECT_EQ(rows, 13);
}

TEST_F(Cli, SimulateIsDeterministic) {
    const auto a = run_cli({"--seed", "5", "simulate", "--umbrella-c", "1", "--shots", "8192"});
    const auto b = run_cli({"--seed", "5", "simulate", "--umbrella-c", "1", "--shots", "8192"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto t = counts_from_csv(a.out);
    EXPECT_EQ(t.shots(), 8192);
}

TEST_F(Cli, SimulateNoNoiseBand) {
    const auto r = run_cli({"--format", "machine", "simulate", "--umbrella-c", "1", "--shots", "8192", "--circuits",
                            path("circ.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.err);
    EXPECT_NEAR(j["value"].get<double>(), 2.0, 4 * 0.00902);
    EXPECT_NEAR(j["sigma_analytic"].get<double>(), 0.0090211, 1e-6);
    const auto spec = circuit_spec_from_json(read_file(path("circ.json")));
    EXPECT_EQ(spec.entries.size(), 12u);
}

TEST_F(Cli, SimulateFullyDepolarized) {
    const auto r = run_cli({"--format", "machine", "simulate", "--umbrella-c", "1", "--shots", "8192", "--noise", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.err);
    EXPECT_LE(std::abs(j["value"].get<double>()), 4 * j["sigma"].get<double>());
}

TEST_F(Cli, SimulateThenCertifyEveryConstruction) {
    ASSERT_EQ(run_cli({"--out", path("u.json"), "construct", "--method", "umbrella", "--c", "0.75"}).code, 0);
    ASSERT_EQ(run_cli({"--out", path("s.json"), "construct", "--method", "4x6", "--states", "-"},
                      R"({"povm": {"weights": [0.25,0.25,0.25,0.25], "vectors": [[0,0,1],[0.9428090415820634,0,-0.3333333333333333],
                          [-0.4714045207910317,0.816496580927726,-0.3333333333333333],
                          [-0.4714045207910317,-0.816496580927726,-0.3333333333333333]]}})")
                  .code,
              0);
    for (const char *bundle : {"u.json", "s.json"}) {
        const auto sim = run_cli({"simulate", "--bundle", path(bundle), "--shots", "2000"});
        ASSERT_EQ(sim.code, 0) << sim.err;
        const auto cert = run_cli({"--format", "machine", "certify", "-", "--bundle", path(bundle), "--starts", "16"},
                                  sim.out);
        ASSERT_TRUE(cert.code == 0 || cert.code == 3) << cert.err;
        const auto j = json::parse(cert.out);
        EXPECT_TRUE(j.contains("verdicts"));
    }
}

TEST_F(Cli, CertifyPositiveAndNegative) {
    const auto sim = run_cli({"--seed", "3", "simulate", "--umbrella-c", "1", "--shots", "8192"});
    auto r = run_cli({"--format", "machine", "certify", "-", "--c", "1"}, sim.out);
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j["verdicts"]["beats_real"].get<bool>());
    EXPECT_GE(j["z_real"].get<double>(), 10.0);

    const auto sim25 = run_cli({"--seed", "3", "simulate", "--umbrella-c", "2.5", "--shots", "8192"});
    r = run_cli({"certify", "-", "--c", "2.5"}, sim25.out);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("beats real qubits: no"), std::string::npos);
}

TEST_F(Cli, CertifyMalformedCounts) {
    const auto r = run_cli({"certify", "-", "--c", "1"}, "x,y,b,count\n1,1,0,3\n");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("error: MalformedFile"), std::string::npos) << r.err;
}

TEST_F(Cli, VerifyBundles) {
    ASSERT_EQ(run_cli({"--out", path("u.json"), "construct", "--method", "umbrella", "--c", "1"}).code, 0);
    auto r = run_cli({"--format", "machine", "verify", "--bundle", path("u.json"), "--trials", "16"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(json::parse(r.out)["passed"].get<bool>());

    write("sic.json", R"({"states": [[0,0,-1],[-0.9428090415820634,0,0.3333333333333333],
                          [0.4714045207910317,-0.816496580927726,0.3333333333333333],
                          [0.4714045207910317,0.816496580927726,0.3333333333333333]]})");
    ASSERT_EQ(run_cli({"--out", path("s.json"), "construct", "--method", "4x6", "--states", path("sic.json")}).code, 0);
    r = run_cli({"--format", "machine", "verify", "--bundle", path("s.json"), "--trials", "16"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["bound"].get<double>(), 1.0, 1e-9);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bounds"}).code, 2);
    EXPECT_EQ(run_cli({"construct", "--method", "7x7"}).code, 2);
    EXPECT_EQ(run_cli({"--format", "xml", "bounds", "--umbrella-c", "1"}).code, 2);
    EXPECT_EQ(run_cli({"bounds", "--bundle", path("missing.json")}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Provenance, Sha256) {
    EXPECT_EQ(cli::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
