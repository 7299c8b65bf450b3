// Copyright 2026 The qlatwit Authors
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

#include "qlatwit/cli.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qlatwit::cli {
namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json parse(const Outcome &r) { return Json::parse(r.out); }

const Json &find_result(const Json &doc, const std::string &key, const std::string &value) {
    for (const auto &r : doc.at("results")) {
        if (r.contains(key) && r.at(key) == value) return r;
    }
    throw std::runtime_error("no result with " + key + " = " + value);
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, ClusterWitnessDocument) {
    const Outcome r = run({"cluster-witness", "--n", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = parse(r);
    EXPECT_EQ(doc.at("command"), "cluster-witness");
    EXPECT_EQ(doc.at("config").at("n"), 6);
    EXPECT_TRUE(doc.at("versions").contains("qlatwit"));
    bool saw_cluster = false, saw_saturating = false;
    for (const auto &entry : doc.at("results")) {
        const Json &row = entry.at("report");
        if (row.at("name") != "witness") continue;
        if (entry.at("state") == "cluster") {
            EXPECT_TRUE(row.at("violated").get<bool>());
            EXPECT_NEAR(row.at("value").get<double>(), 6.0, 1e-12);
            saw_cluster = true;
        }
        if (entry.at("state") == "saturating_product") {
            EXPECT_FALSE(row.at("violated").get<bool>());
            EXPECT_NEAR(row.at("margin").get<double>(), 0.0, 1e-12);
            saw_saturating = true;
        }
    }
    EXPECT_TRUE(saw_cluster);
    EXPECT_TRUE(saw_saturating);
}

TEST(Cli, OddChainIsAUsageError) {
    const Outcome r = run({"cluster-witness", "--n", "5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, BadFlagsAreUsageErrors) {
    EXPECT_EQ(run({"no-such-command"}).code, 2);
    EXPECT_EQ(run({"cluster-witness", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"pulse", "--params", "1,2"}).code, 2);
    EXPECT_EQ(run({"decoherence-scan", "--n", "6", "--p-min", "0.9", "--p-max", "0.6"}).code, 2);
    EXPECT_EQ(run({"decoherence-scan", "--n", "6", "--steps", "0"}).code, 2);
}

TEST(Cli, IdenticalInvocationsAreByteIdentical) {
    const std::vector<std::string> args{"decoherence-scan", "--n", "4", "--steps", "6"};
    const Outcome a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const std::vector<std::string> pulse{"pulse", "--n", "4", "--optimize", "--budget", "30", "--seed", "5"};
    EXPECT_EQ(run(pulse).out, run(pulse).out);
}

TEST(Cli, DecoherenceScanSummary) {
    const Outcome r = run({"decoherence-scan", "--n", "6", "--p-min", "0.5", "--p-max", "1.0", "--steps", "11"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = parse(r);
    const Json &summary = find_result(doc, "kind", "summary");
    EXPECT_NEAR(summary.at("slope").get<double>(), 2.0, 1e-6);
    EXPECT_NEAR(summary.at("grid_crossing").get<double>(), 0.75, 0.025);
    EXPECT_NEAR(summary.at("bisection_crossing").get<double>(), 0.75, 1e-3);
    const Json &last = doc.at("results").at(10);
    EXPECT_NEAR(last.at("p").get<double>(), 1.0, 1e-15);
    EXPECT_NEAR(last.at("value").get<double>(), 6.0, 1e-12);
}

TEST(Cli, CsvHasHeaderRow) {
    const Outcome r = run({"decoherence-scan", "--n", "4", "--steps", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "n,p,value,bound,violated");
    int rows = 0;
    while (std::getline(lines, row)) ++rows;
    EXPECT_EQ(rows, 3);
    EXPECT_NE(r.err.find("# "), std::string::npos);
}

TEST(Cli, NumbersRoundTrip) {
    const Outcome r = run({"pulse", "--n", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = parse(r);
    const double ratio = doc.at("results").at(0).at("report").at("aux").at("violation_ratio").get<double>();
    EXPECT_NEAR(ratio, 0.49265671385397, 1e-12);
}

TEST(Cli, SingletAndHeisenberg) {
    const Json s = parse(run({"singlet-suite", "--n", "2"}));
    const Json &row = s.at("results").at(0).at("report");
    EXPECT_TRUE(row.at("violated").get<bool>());
    EXPECT_NEAR(row.at("value").get<double>(), 0.0, 1e-12);

    const Json h4 = parse(run({"heisenberg", "--n", "4"}));
    EXPECT_TRUE(h4.at("results").at(0).at("report").at("violated").get<bool>());
    const Json h2 = parse(run({"heisenberg", "--n", "2"}));
    EXPECT_GT(h2.at("results").at(0).at("report").at("aux").at("singlet_fidelity").get<double>(), 1 - 1e-10);
}

TEST(Cli, OutWritesDocumentAndPlotFile) {
    const auto dir = std::filesystem::temp_directory_path() / "qlatwit_cli_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "scan.json";
    const Outcome r = run({"decoherence-scan", "--n", "4", "--steps", "5", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const Json doc = Json::parse(slurp(path));
    EXPECT_EQ(doc.at("command"), "decoherence-scan");

    std::istringstream plot(slurp(path.string() + ".dat"));
    std::string line;
    int points = 0;
    while (std::getline(plot, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream cols(line);
        double x, y;
        ASSERT_TRUE(cols >> x >> y) << line;
        std::string extra;
        EXPECT_FALSE(cols >> extra);
        EXPECT_NEAR(y, 2 * x - 1, 1e-9);
        ++points;
    }
    EXPECT_EQ(points, 5);
    std::filesystem::remove_all(dir);
}

int shell(const std::string &cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, ExitCodesAndDimensionCap) {
    const std::string bin = QLATWIT_CLI_PATH;
    EXPECT_EQ(shell(bin + " cluster-witness --n 4 > /dev/null"), 0);
    EXPECT_EQ(shell(bin + " cluster-witness --n 5 > /dev/null 2>&1"), 2);
    EXPECT_EQ(shell("QLATWIT_DIM_CAP=16 " + bin + " cluster-witness --n 6 > /dev/null 2>&1"), 3);
    EXPECT_EQ(shell("QLATWIT_DIM_CAP=64 " + bin + " cluster-witness --n 6 > /dev/null 2>&1"), 0);
}

}  // namespace
}  // namespace qlatwit::cli
