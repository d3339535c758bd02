/*
 * Copyright 2026 The illposed-gd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "illposed/experiment.hpp"

namespace illposed
{
namespace
{

namespace fs = std::filesystem;

struct Outcome
{
    int status = -1;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "illposed-gd");
    std::vector<const char*> argv;
    for (const std::string& a : args)
    {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string fixture(const std::string& name)
{
    return (fs::path(ILLPOSED_FIXTURE_DIR) / name).string();
}

std::string scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "illposed_test_cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

TEST(Cli, RunWritesTracesAndSummary)
{
    const std::string dir = scratch("run");
    const fs::path cfg = fs::path(dir) / "config.json";
    std::ofstream(cfg) << R"({"problem": "quadratic", "noise_levels": [0.01]})";
    const Outcome o = invoke({"run", "--config", cfg.string(), "--out", dir});
    EXPECT_EQ(o.status, 0) << o.err;
    for (const char* f : {"exact.csv", "exact.json", "noisy_l0_s1.csv", "noisy_l0_s1.json",
                          "summary.json"})
    {
        EXPECT_TRUE(fs::exists(fs::path(dir) / f)) << f;
    }
    EXPECT_FALSE(fs::exists(fs::path(dir) / "plot.gp"));
    EXPECT_NE(o.out.find("initial-guess smallness condition"), std::string::npos);
}

TEST(Cli, GnuplotFlagWritesScript)
{
    const std::string dir = scratch("gnuplot");
    const Outcome o =
        invoke({"run", "--config", fixture("quadratic.json"), "--out", dir, "--gnuplot"});
    EXPECT_EQ(o.status, 0) << o.err;
    EXPECT_TRUE(fs::exists(fs::path(dir) / "plot.gp"));
}

TEST(Cli, InitialGuessOutsideBallExitsTwo)
{
    const Outcome o = invoke({"run", "--config", fixture("x0_outside.json"), "--out",
                              scratch("outside")});
    EXPECT_EQ(o.status, 2);
    EXPECT_NE(o.err.find("initial-guess smallness condition"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(invoke({}).status, 2);
    EXPECT_EQ(invoke({"run"}).status, 2);
    EXPECT_EQ(invoke({"launch", "--config", fixture("quadratic.json")}).status, 2);
    EXPECT_EQ(invoke({"run", "--config", "/nonexistent.json"}).status, 2);
    EXPECT_EQ(invoke({"run", "--config", fixture("quadratic.json"), "--workers", "0"}).status,
              2);
}

TEST(Cli, HelpExitsZero)
{
    const Outcome o = invoke({"--help"});
    EXPECT_EQ(o.status, 0);
    EXPECT_NE(o.out.find("verify"), std::string::npos);
}

TEST(Cli, StudyNeedsALadder)
{
    const std::string dir = scratch("study_single");
    const fs::path cfg = fs::path(dir) / "config.json";
    std::ofstream(cfg) << R"({"problem": "quadratic", "noise_levels": [0.01]})";
    const Outcome o = invoke({"study", "--config", cfg.string(), "--out", dir});
    EXPECT_EQ(o.status, 2);
    EXPECT_NE(o.err.find("at least 3 noise levels"), std::string::npos);
}

TEST(Cli, StudyReportsTrend)
{
    const std::string dir = scratch("study");
    const Outcome o = invoke({"study", "--config", fixture("quadratic.json"), "--out", dir});
    EXPECT_EQ(o.status, 0) << o.err;
    const nlohmann::json j = read_json(fs::path(dir) / "study.json");
    EXPECT_EQ(j["trend_verdict"], "decreasing");
    EXPECT_EQ(j["rows"].size(), 8u);
    EXPECT_TRUE(fs::exists(fs::path(dir) / "study.csv"));
}

TEST(Cli, DiagnoseQuadratic)
{
    const std::string dir = scratch("diagnose");
    const Outcome o =
        invoke({"diagnose", "--config", fixture("quadratic.json"), "--out", dir});
    EXPECT_EQ(o.status, 0) << o.err;
    const nlohmann::json j = read_json(fs::path(dir) / "diagnose.json");
    EXPECT_NEAR(j["beta_hat"].get<double>(), -2.0, 0.05);
    EXPECT_LT(j["eta_weak_hat"].get<double>(), 1e-12);
    EXPECT_NEAR(j["tau_hat"].get<double>(), 0.5, 1e-3);
}

TEST(Cli, DiagnoseRejectsZeroSamples)
{
    const std::string dir = scratch("diagnose_zero");
    const fs::path cfg = fs::path(dir) / "config.json";
    std::ofstream(cfg) << R"({"problem": "quadratic", "condition_samples": 0})";
    EXPECT_EQ(invoke({"diagnose", "--config", cfg.string(), "--out", dir}).status, 2);
}

TEST(Cli, VerifyQuadraticPasses)
{
    const std::string dir = scratch("verify");
    const Outcome o = invoke({"verify", "--config", fixture("quadratic.json"), "--out", dir});
    EXPECT_EQ(o.status, 0) << o.out;
    EXPECT_NE(o.out.find("all applicable checks passed"), std::string::npos);
    const nlohmann::json j = read_json(fs::path(dir) / "verify.json");
    ASSERT_TRUE(j.is_array());
    // 3 exact checks plus 3 per (level, seed) cell.
    EXPECT_EQ(j.size(), 3u + 3u * 8u);
}

TEST(Cli, VerifyFaultFixtureNamesTheCheck)
{
    const Outcome o = invoke({"verify", "--config", fixture("fault_noisy_uniform.json"),
                              "--out", scratch("fault")});
    EXPECT_EQ(o.status, 1);
    EXPECT_NE(o.out.find("FAIL noisy_uniform"), std::string::npos) << o.out;
    EXPECT_EQ(o.out.find("FAIL descent"), std::string::npos);
}

TEST(Cli, VerifyLargeNoisyLipschitzStillRunsExactChecks)
{
    const std::string dir = scratch("large_lipschitz");
    const Outcome o =
        invoke({"verify", "--config", fixture("large_noisy_lipschitz.json"), "--out", dir});
    EXPECT_EQ(o.status, 0) << o.out;
    const nlohmann::json j = read_json(fs::path(dir) / "verify.json");
    std::size_t exact_pass = 0;
    for (const auto& r : j)
    {
        if (r["scope"] == "noisy")
        {
            EXPECT_EQ(r["verdict"], "inapplicable");
        }
        else if (r["verdict"] == "pass")
        {
            ++exact_pass;
        }
    }
    EXPECT_EQ(exact_pass, 3u);
}

}  // namespace
}  // namespace illposed
