// Copyright 2026 The entropot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "entropot/commands.hpp"
#include "json.hpp"

namespace entropot::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "entropot");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

const char* kProblem = R"({
  "a": [0.5, 0.5],
  "b": [0.5, 0.5],
  "C": [[0, 1], [1, 0]],
  "gamma": 1.0,
  "delta": 1e-10
})";

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

TEST(CliTest, SolveWritesPlan) {
  const fs::path in = temp_file("entropot_cli_problem.json", kProblem);
  const fs::path out = fs::temp_directory_path() / "entropot_cli_solution.json";
  for (const char* algo : {"sinkhorn", "greenkhorn"}) {
    const Outcome o = invoke({"solve", in.string(), "-o", out.string(), "--algo", algo,
                              "--check-invariants"});
    ASSERT_EQ(o.code, kExitOk) << o.err;
    const json doc = read_json(out);
    EXPECT_EQ(doc.at("algorithm"), algo);
    EXPECT_EQ(doc.at("termination"), "converged");
    const double t = 0.5 / (1.0 + std::exp(-1.0));
    EXPECT_NEAR(doc.at("plan")[0][0].get<double>(), t, 1e-8);
    EXPECT_NEAR(doc.at("plan")[0][1].get<double>(), t * std::exp(-1.0), 1e-8);
    EXPECT_EQ(doc.at("invariant_violations"), 0);
    EXPECT_NEAR(doc.at("rounded_cost").get<double>(), 2 * t * std::exp(-1.0), 1e-8);
  }
}

TEST(CliTest, SolveToStdout) {
  const fs::path in = temp_file("entropot_cli_stdout.json", kProblem);
  const Outcome o = invoke({"solve", in.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NO_THROW((void)json::parse(o.out));
}

TEST(CliTest, ZeroMarginalsSerializeAsNull) {
  const fs::path in = temp_file("entropot_cli_zero.json", R"({
    "a": [1.0, 0.0], "b": [0.5, 0.5], "C": [[0, 1], [1, 0]], "gamma": 0.5, "delta": 1e-9})");
  const Outcome o = invoke({"solve", in.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_TRUE(doc.at("f")[1].is_null());
  EXPECT_EQ(doc.at("plan")[1][0].get<double>(), 0.0);
}

TEST(CliTest, OracleWritesExactSolution) {
  const fs::path in = temp_file("entropot_cli_oracle.json", R"({
    "a": [0.7, 0.3], "b": [0.4, 0.6], "C": [[0, 1], [1, 0]]})");
  const Outcome o = invoke({"oracle", in.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json doc = json::parse(o.out);
  EXPECT_NEAR(doc.at("cost").get<double>(), 0.3, 1e-15);
  EXPECT_NEAR(doc.at("plan")[0][1].get<double>(), 0.3, 1e-15);
}

TEST(CliTest, BadInputsMapToExitCodes) {
  EXPECT_EQ(invoke({"solve", "/nonexistent/problem.json"}).code, kExitIo);
  const fs::path garbage = temp_file("entropot_cli_garbage.json", "{ not json");
  EXPECT_EQ(invoke({"solve", garbage.string()}).code, kExitIo);
  const fs::path no_gamma = temp_file("entropot_cli_nogamma.json", R"({
    "a": [0.5, 0.5], "b": [0.5, 0.5], "C": [[0, 1], [1, 0]], "delta": 0.1})");
  const Outcome o = invoke({"solve", no_gamma.string()});
  EXPECT_EQ(o.code, kExitIo);
  EXPECT_NE(o.err.find("gamma"), std::string::npos);
  const fs::path bad_mass = temp_file("entropot_cli_mass.json", R"({
    "a": [0.6, 0.6], "b": [0.5, 0.5], "C": [[0, 1], [1, 0]], "gamma": 1, "delta": 0.1})");
  EXPECT_EQ(invoke({"solve", bad_mass.string()}).code, kExitIo);
  const fs::path ragged = temp_file("entropot_cli_ragged.json", R"({
    "a": [0.5, 0.5], "b": [0.5, 0.5], "C": [[0, 1], [1]]})");
  EXPECT_EQ(invoke({"oracle", ragged.string()}).code, kExitIo);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"bench", "--out", "x"}).code, kExitUsage);  // --eps missing
  EXPECT_EQ(invoke({"bench", "--eps", "0.1", "--out", "x", "--algo", "auction"}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, BenchWritesReports) {
  const fs::path dir = fs::temp_directory_path() / "entropot_cli_bench";
  fs::remove_all(dir);
  const Outcome o = invoke({"bench", "--dataset", "synthetic", "--side", "4", "--trials", "2",
                            "--algo", "sinkhorn,greenkhorn", "--eps", "0.3,0.15",
                            "--relative-eps", "--seed", "5", "--out", dir.string(), "--no-svg"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("0 invariant violations"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  EXPECT_FALSE(fs::exists(dir / "error_vs_iteration.svg"));
  const fs::path missing = fs::temp_directory_path() / "entropot_cli_bench_mnist";
  EXPECT_EQ(invoke({"bench", "--dataset", "mnist", "--mnist-path", "/nonexistent/x.idx3",
                    "--eps", "0.1", "--out", missing.string()})
                .code,
            kExitIo);
}

}  // namespace
}  // namespace entropot::cli
