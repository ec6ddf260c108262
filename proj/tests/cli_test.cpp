// Copyright 2026 The mirrorqam Authors
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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorqam/cli.hpp"

namespace mirrorqam {
namespace {

using Json = nlohmann::ordered_json;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("mirrorqam_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }

    std::string write(const std::string &name, const std::string &text) {
        const auto path = dir_ / name;
        std::ofstream(path) << text;
        return path.string();
    }

    std::filesystem::path dir_;
};

TEST_F(CliTest, DistributionJson) {
    const auto file = write("p.txt", "00\n01\n");
    const auto r = invoke({"distribution", "--patterns", file, "--input", "00", "--b", "2", "--shots", "20000",
                           "--seed", "3"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["version"], cli::kVersion);
    EXPECT_EQ(j["config"]["seed"], 3);
    EXPECT_FALSE(j["config"]["seed_auto"].get<bool>());
    EXPECT_NEAR(j["results"]["analytic_conditional"]["00"].get<double>(), 0.8, 1e-12);
    EXPECT_NEAR(j["results"]["analytic_conditional"]["01"].get<double>(), 0.2, 1e-12);
    EXPECT_NEAR(j["results"]["analytic_unnormalized"]["01"].get<double>(), 0.125, 1e-12);
    EXPECT_LT(j["results"]["total_variation_distance"].get<double>(), 0.02);
    EXPECT_TRUE(j.contains("timing_ms"));
    EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, AutoSeedIsEchoed) {
    const auto file = write("p.txt", "00\n11\n");
    const auto r = invoke({"retrieve", "--patterns", file, "--input", "01"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_TRUE(j["config"]["seed_auto"].get<bool>());
    EXPECT_NE(r.err.find("seed: " + std::to_string(j["config"]["seed"].get<std::uint64_t>())), std::string::npos);
}

TEST_F(CliTest, RetrieveReportsOutcome) {
    const auto file = write("p.txt", "0110\n1001\n");
    const auto r = invoke({"retrieve", "--patterns", file, "--input", "0110", "--b", "3", "--seed", "1",
                           "--gamma-mode", "cloning", "--retry-budget", "30"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    const auto j = Json::parse(r.out)["results"];
    EXPECT_TRUE(j["success"].get<bool>());
    EXPECT_EQ(j["output_pattern"], "0110");
    EXPECT_EQ(j["output_distance"], 0);
    EXPECT_DOUBLE_EQ(j["gamma"].get<double>(), 0.5);
}

TEST_F(CliTest, CloneCheckVerdicts) {
    auto r = invoke({"clone-check", "--patterns", write("a.txt", "000\n111\n001\n")});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    auto j = Json::parse(r.out)["results"];
    EXPECT_EQ(j["verdict"], "infeasible");
    EXPECT_NEAR(j["overlap"].get<double>(), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(j["discriminant"].get<double>(), -1.25, 1e-12);
    EXPECT_FALSE(j["gram"]["equal"].get<bool>());

    r = invoke({"clone-check", "--patterns", write("b.txt", "00\n11\n")});
    j = Json::parse(r.out)["results"];
    EXPECT_EQ(j["verdict"], "feasible");
    EXPECT_TRUE(j["gram"]["equal"].get<bool>());

    r = invoke({"clone-check", "--patterns", write("c.txt", "01\n")});
    j = Json::parse(r.out)["results"];
    EXPECT_EQ(j["verdict"], "singular");
}

TEST_F(CliTest, ComplexityUniformAndInstance) {
    auto r = invoke({"complexity", "--uniform", "--b-range", "16", "--n", "20"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    auto row = Json::parse(r.out)["results"]["table"][0];
    EXPECT_NEAR(row["complexity_uniform_approx"].get<double>(), 2.66267, 5e-6);
    EXPECT_DOUBLE_EQ(row["grover_baseline"].get<double>(), 1024.0);

    r = invoke({"complexity", "--patterns", write("p.txt", "00\n01\n"), "--input", "00", "--b-range", "2:2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    row = Json::parse(r.out)["results"]["table"][0];
    EXPECT_NEAR(row["complexity"].get<double>(), std::sqrt(1.6), 1e-12);
    EXPECT_EQ(row["rounds"], 0);
}

TEST_F(CliTest, CsvFormat) {
    const auto r = invoke({"distribution", "--patterns", write("p.txt", "00\n01\n"), "--input", "00", "--b", "2",
                           "--shots", "1000", "--seed", "5", "--format", "csv"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# mirrorqam ", 0), 0U);
    std::getline(lines, line);
    EXPECT_EQ(line, "pattern,distance,analytic_unnormalized,analytic_conditional,empirical");
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("00,0,0.5,0.8,", 0), 0U) << line;
}

TEST_F(CliTest, ExitCodes) {
    const auto good = write("good.txt", "00\n01\n");
    EXPECT_EQ(invoke({"distribution", "--patterns", write("bad.txt", "0x\n"), "--input", "00", "--seed", "1"}).code,
              cli::kParseError);
    EXPECT_EQ(invoke({"distribution", "--patterns", write("ragged.txt", "00\n011\n"), "--input", "00"}).code,
              cli::kParseError);
    EXPECT_EQ(invoke({"retrieve", "--patterns", good, "--input", "000", "--seed", "1"}).code, cli::kDimensionError);
    EXPECT_EQ(invoke({"retrieve", "--patterns", write("far.txt", "11\n"), "--input", "00", "--seed", "1"}).code,
              cli::kZeroMass);
    EXPECT_EQ(invoke({"retrieve", "--patterns", good, "--input", "00", "--seed", "1", "--gamma-mode", "cloning"}).code,
              cli::kInfeasibleCloning);
    EXPECT_EQ(invoke({"retrieve", "--patterns", good, "--input", "00", "--gamma-mode", "bogus"}).code,
              cli::kUsageError);
    EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"retrieve", "--patterns", good}).code, cli::kUsageError);
    EXPECT_EQ(invoke({"retrieve", "--patterns", (dir_ / "missing.txt").string(), "--input", "00"}).code,
              cli::kParseError);
}

std::string results_section(const std::string &json) { return Json::parse(json)["results"].dump(); }

TEST_F(CliTest, StrictDeterministicIsByteIdentical) {
    const auto file = write("p.txt", "0000\n0011\n1100\n1111\n0101\n");
    const std::vector<std::vector<std::string>> commands = {
        {"distribution", "--patterns", file, "--input", "0001", "--b", "2", "--shots", "30000", "--seed", "11",
         "--gamma-mode", "fixed:0.5"},
        {"retrieve", "--patterns", file, "--input", "0001", "--b", "3", "--seed", "11", "--retry-budget", "2"},
        {"clone-check", "--patterns", file},
        {"complexity", "--patterns", file, "--input", "0001"},
    };
    for (auto args : commands) {
        args.push_back("--strict-deterministic");
        const auto a = invoke(args);
        const auto b = invoke(args);
        ASSERT_EQ(a.code, cli::kSuccess) << a.err;
        EXPECT_EQ(results_section(a.out), results_section(b.out)) << args.front();
    }
    // Thread count does not change sampled counts either.
    auto threaded = commands.front();
    threaded.insert(threaded.end(), {"--threads", "4"});
    EXPECT_EQ(results_section(invoke(threaded).out),
              results_section(invoke([&] {
                                  auto strict = commands.front();
                                  strict.push_back("--strict-deterministic");
                                  return strict;
                              }())
                                  .out));
}

} // namespace
} // namespace mirrorqam
