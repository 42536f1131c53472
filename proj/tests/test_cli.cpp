// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "panharmonia/cli.hpp"
#include "panharmonia/specfun.hpp"

namespace cli = panharmonia::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("panharmonia_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, CoeffPrintsSeventeenDigits) {
  const Result r = run({"coeff", "--kind", "sphere", "--dim", "3", "--t", "1.0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1.1752011936", 0), 0u);
  EXPECT_EQ(std::stod(r.out), panharmonia::coeff(panharmonia::CoeffKind::sphere, 3, 1.0));
  EXPECT_EQ(run({"coeff", "--kind", "ratio", "--t", "0"}).out, "1\n");
}

TEST(Cli, Bessel) {
  const Result r = run({"bessel", "--nu", "0", "--z", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), std::cyl_bessel_i(0.0, 1.0), 1e-15);
  EXPECT_EQ(run({"bessel", "--nu", "0.3", "--z", "1"}).code, cli::kExitUsage);
}

TEST(Cli, UsageErrorsExitTwoWithOneLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"wos", "--domain", "blob:1", "--boundary", "const:1"},
           {"wos", "--boundary", "nope"},
           {"mean", "--field", "u_radial", "--kind", "sphere", "--radius", "-1"},
           {"coeff", "--kind", "cube", "--t", "1"},
           {"frobnicate"},
           {},
           {"verify", "--suite", "unknown"},
       }) {
    const Result r = run(args);
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
}

TEST(Cli, MeanSubcommand) {
  const Result r = run({"mean", "--field", "u_radial", "--kind", "sphere", "--radius", "0.5", "--point", "0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), std::sinh(0.5) / 0.5, 1e-13);
  const Result d = run({"mean", "--field", "u_radial", "--kind", "domain", "--domain", "ball:1", "--samples", "20000"});
  EXPECT_EQ(d.code, 0);
  EXPECT_NE(d.out.find("+-"), std::string::npos);
}

TEST(Cli, WosEmitsJson) {
  const Result r = run({"wos", "--domain", "ball:1", "--mu", "1", "--boundary", "const:1", "--point", "0.2,0,0",
                        "--walks", "20000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const char* key : {"value", "std_error", "walks", "killed_fraction", "mean_steps"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j["walks"], 20000);
}

TEST(Cli, DetectAndHypothesis) {
  const Result r = run({"detect", "--field", "u_radial", "--dim", "2", "--mu", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["class"], "panharmonic");
  EXPECT_NEAR(j["mu_hat"].get<double>(), 3.0, 1e-3);
  EXPECT_EQ(run({"detect", "--field", "u_radial", "--domain", "ball:2", "--hypothesis-mu", "2"}).code,
            cli::kExitCheckFailed);
  EXPECT_EQ(run({"detect", "--field", "u_radial", "--domain", "ball:2", "--hypothesis-mu", "1"}).code, 0);
}

TEST(Cli, VerifyIdentityExitCodes) {
  EXPECT_EQ(run({"verify", "--identity", "sphere", "--field", "u_radial", "--dim", "2", "--trials", "5"}).code, 0);
  EXPECT_EQ(run({"verify", "--identity", "sphere", "--field", "u_radial@0,0", "--dim", "2", "--mu", "1"}).code, 0);
  // Field built for mu = 1 but checked at mu = 1.5 through a plane wave with its own parameter.
  EXPECT_EQ(run({"verify", "--identity", "sphere", "--field", "planewave:1:1,0", "--dim", "2", "--mu", "1.5"}).code,
            cli::kExitCheckFailed);
}

TEST(Cli, ReportRoundTripRegeneratesResult) {
  const std::string first = temp_path("first.json");
  const std::string second = temp_path("second.json");
  const std::string csv = temp_path("suite.csv");
  ASSERT_EQ(run({"verify", "--suite", "kugel_discrepancy_ball", "--dim", "2", "--seed", "42", "--samples", "20000",
                 "--report", first, "--csv", csv})
                .code,
            0);
  const std::string text = slurp(first);
  const cli::RunManifest manifest = cli::manifest_from_report(text);
  EXPECT_EQ(manifest.subcommand, "verify");
  EXPECT_EQ(manifest.seed, 42u);
  EXPECT_EQ(manifest.parameters.at("suite"), "kugel_discrepancy_ball");
  EXPECT_EQ(manifest.parameters.at("mu"), "1");
  EXPECT_FALSE(manifest.tool_version.empty());
  EXPECT_FALSE(manifest.timestamp.empty());
  EXPECT_EQ(run(cli::manifest_to_argv(manifest, second)).code, 0);
  EXPECT_EQ(json::parse(slurp(second))["result"], json::parse(text)["result"]);
  EXPECT_EQ(cli::manifest_from_report(slurp(second)).parameters.at("samples"), "20000");
  EXPECT_NE(slurp(csv).find("kugel_discrepancy_ball,true"), std::string::npos);
  std::remove(first.c_str());
  std::remove(second.c_str());
  std::remove(csv.c_str());
}

TEST(Cli, FlagRoundTrip) {
  const std::string path = temp_path("flag.json");
  ASSERT_EQ(run({"coeff", "--kind", "sphere", "--t", "800", "--scaled", "--report", path}).code, 0);
  const auto manifest = cli::manifest_from_report(slurp(path));
  EXPECT_EQ(manifest.parameters.at("scaled"), "true");
  const Result again = run(cli::manifest_to_argv(manifest, path));
  EXPECT_EQ(again.code, 0);
  EXPECT_LT(std::stod(again.out), 1.0);
  std::remove(path.c_str());
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"wos", "--help"}).code, 0);
}
