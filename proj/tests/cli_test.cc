// Copyright 2026 The chshq Authors
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

#include "chshq/cli.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;

    json parsed() const {
        return json::parse(out);
    }
};

Result run(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    Result r;
    r.code = chshq::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const std::string kHalfPi = chshq::cli::format_double(M_PI / 2);
const std::string kQuarterPi = chshq::cli::format_double(M_PI / 4);
const std::string kR = chshq::cli::format_double(std::sqrt(0.5));

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, FormatDouble) {
    using chshq::cli::format_double;
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-1.0), "-1");
    EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
    EXPECT_EQ(format_double(INFINITY), "inf");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
    EXPECT_EQ(format_double(NAN), "nan");
}

TEST(Cli, CheckExamples) {
    const Result eq = run({"check", "--alpha", "1.5707963", "--beta", "1.5707963", "--gamma",
                           "0.7071,0.7071,0.7071,-0.7071"});
    EXPECT_EQ(eq.code, 0) << eq.err;
    const json j = eq.parsed();
    EXPECT_EQ(j["schema"], 1);
    EXPECT_TRUE(j["feasible"].get<bool>());
    EXPECT_NEAR(j["lhs"].get<double>(), 2.0, 1e-3);

    const Result over = run({"check", "--alpha", "1.5707963", "--beta", "1.5707963", "--gamma", "1,0,1,0"});
    EXPECT_EQ(over.code, 1);
    EXPECT_FALSE(over.parsed()["feasible"].get<bool>());

    EXPECT_EQ(run({"check", "--gamma", "0,0,0,0", "--alpha", "1", "--beta", "1"}).code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"check", "--alpha", "1", "--gamma", "0,0,0,0"}).code, 2);
    EXPECT_EQ(run({"check", "--alpha", "1", "--beta", "1", "--gamma", "0,0,0"}).code, 2);
    EXPECT_EQ(run({"check", "--alpha", "1", "--beta", "1", "--gamma", "0,0,0,x"}).code, 2);
    EXPECT_EQ(run({"check", "--alpha", "1", "--beta", "1", "--a1", "0,0,1", "--gamma", "0,0,0,0"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const Result bad = run({"check", "--alpha", "1", "--gamma", "0,0,0,0"});
    EXPECT_TRUE(bad.out.empty());
    EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, BlochAndAngleInputAgree) {
    const Result angles = run({"check", "--alpha", kHalfPi, "--beta", kHalfPi, "--gamma", "0.3,0.5,-0.2,0.6"});
    const Result bloch = run({"check", "--a1", "0,0,1", "--a2", "2,0,0", "--b1", "0.5,0,0,3", "--b2", "0,0,1,0",
                              "--gamma", "0.3,0.5,-0.2,0.6"});
    ASSERT_EQ(angles.code, bloch.code);
    const json a = angles.parsed(), b = bloch.parsed();
    for (const char *key : {"feasible", "branch"}) {
        EXPECT_EQ(a[key], b[key]) << key;
    }
    for (const char *key : {"lhs", "term_plus", "term_minus"}) {
        EXPECT_NEAR(a[key].get<double>(), b[key].get<double>(), 1e-12) << key;
    }
}

TEST(Cli, Degrees) {
    const Result r = run({"check", "--alpha", "90", "--beta", "90", "--degrees", "--gamma", "1,0,1,0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NEAR(r.parsed()["alpha"].get<double>(), M_PI / 2, 1e-15);
}

TEST(Cli, ParallelBranchCheck) {
    const Result r = run({"check", "--alpha", kHalfPi, "--beta", "0", "--gamma", "0.6,0.6,0.6,0.6"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.parsed()["branch"], "BParallel");
}

TEST(Cli, Witness) {
    const Result zero = run({"witness", "--alpha", "1", "--beta", "2", "--gamma", "0,0,0,0"});
    ASSERT_EQ(zero.code, 0) << zero.err;
    const json z = zero.parsed();
    ASSERT_EQ(z["rho"].size(), 16u);
    for (int k = 0; k < 16; ++k) {
        const double expected = (k % 5 == 0) ? 0.25 : 0.0;
        EXPECT_NEAR(z["rho"][k][0].get<double>(), expected, 1e-14);
        EXPECT_NEAR(z["rho"][k][1].get<double>(), 0.0, 1e-14);
    }

    const Result eq = run({"witness", "--alpha", kHalfPi, "--beta", kHalfPi, "--gamma",
                           kR + "," + kR + "," + kR + ",-" + kR});
    ASSERT_EQ(eq.code, 0) << eq.err;
    EXPECT_LT(std::abs(eq.parsed()["report"]["min_eigenvalue"].get<double>()), 1e-8);

    EXPECT_EQ(run({"witness", "--alpha", kHalfPi, "--beta", kHalfPi, "--gamma", "1,0,1,0"}).code, 1);
    EXPECT_EQ(run({"witness", "--alpha", "1", "--beta", "2", "--gamma", "0,0,0,0", "--w33", "5"}).code, 2);
    EXPECT_EQ(run({"witness", "--alpha", "1", "--beta", "2", "--gamma", "0,0,0,0", "--w33", "lo"}).code, 0);

    const Result again = run({"witness", "--alpha", "1", "--beta", "2", "--gamma", "0,0,0,0"});
    EXPECT_EQ(again.out, zero.out);
}

TEST(Cli, RegionSmoke) {
    const Result r = run({"region", "--alpha", "1", "--beta", "1", "--axes", "C11,C22", "--range", "-1,1",
                          "--resolution", "2", "--fixed", "C21=0,C12=0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0][0], "C11");
    EXPECT_EQ(rows[0][1], "C22");
    EXPECT_EQ(rows[1][0], "-1");
    EXPECT_EQ(rows[1][1], "-1");
    EXPECT_EQ(rows[2][1], "1");

    EXPECT_EQ(run({"region", "--alpha", "1", "--beta", "1", "--axes", "C11,C22", "--resolution", "1",
                   "--fixed", "C21=0,C12=0"})
                  .code,
              2);
    EXPECT_EQ(run({"region", "--alpha", "1", "--beta", "1", "--axes", "C11,C11", "--fixed", "C21=0,C12=0"}).code, 2);
    EXPECT_EQ(run({"region", "--alpha", "1", "--beta", "1", "--axes", "C11,C22", "--fixed", "C21=0"}).code, 2);
}

TEST(Cli, RegionWithNoFeasiblePoint) {
    const std::string beta = chshq::cli::format_double(3 * M_PI / 4);
    const Result r = run({"region", "--alpha", kHalfPi, "--beta", beta, "--axes", "C11,C12", "--range", "-1,1",
                          "--resolution", "201", "--fixed", "C21=0.5,C22=0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 201u * 201u + 1);
    EXPECT_EQ(rows[0][2], "ours");
    int feasible = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        feasible += rows[k][2] == "1";
    }
    EXPECT_EQ(feasible, 0);
}

TEST(Cli, RegionInsideTl) {
    const Result r = run({"region", "--alpha", kHalfPi, "--beta", kHalfPi, "--axes", "C11,C22", "--range", "-1,1",
                          "--resolution", "101", "--fixed", "C21=0.5,C12=0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    int ours = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        if (rows[k][2] == "1") {
            ++ours;
            EXPECT_EQ(rows[k][4], "1") << rows[k][0] << "," << rows[k][1];
        }
    }
    EXPECT_GT(ours, 0);
}

TEST(Cli, RegionIsDeterministic) {
    const std::vector<std::string> args{"region", "--alpha", "0.9", "--beta", "2.2", "--axes", "C21,C12",
                                        "--x-range", "-1,0.5", "--y-range", "-0.3,1", "--resolution", "37",
                                        "--fixed", "C11=0.1,C22=-0.4"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, RegionToFile) {
    const std::string path = ::testing::TempDir() + "chshq_region.csv";
    const Result r = run({"region", "--alpha", "1", "--beta", "1", "--axes", "C11,C22", "--resolution", "3",
                          "--fixed", "C21=0,C12=0", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(csv_rows(text.str()).size(), 10u);
    std::remove(path.c_str());
}

TEST(Cli, Sample) {
    const Result empty = run({"sample", "--sweep", "soundness", "--n", "0"});
    ASSERT_EQ(empty.code, 0) << empty.err;
    EXPECT_EQ(empty.parsed()["samples"], 0);
    EXPECT_EQ(empty.parsed()["violations"], 0);

    const Result a = run({"sample", "--sweep", "soundness", "--n", "500", "--seed", "9"});
    const Result b = run({"sample", "--sweep", "soundness", "--n", "500", "--seed", "9", "--threads", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run({"sample", "--sweep", "completeness", "--n", "300"}).code, 0);
    EXPECT_EQ(run({"sample", "--sweep", "nonsense", "--n", "10"}).code, 2);
    EXPECT_EQ(run({"sample", "--sweep", "soundness", "--n", "10", "--threads", "0"}).code, 2);
}

TEST(Cli, Classify) {
    const Result r = run({"classify", "--gamma", kR + "," + kR + "," + kR + ",-" + kR, "--gram", "51"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = r.parsed();
    EXPECT_FALSE(j["chsh"].get<bool>());
    EXPECT_TRUE(j["tsirelson"].get<bool>());
    EXPECT_TRUE(j["tl_algebraic"].get<bool>());
    EXPECT_TRUE(j["gram"].get<bool>());
}

TEST(Cli, Bell) {
    const std::string c = "-" + kR;
    const Result v = run({"bell", "--alpha", kQuarterPi, "--beta", kQuarterPi, "--c11", c, "--c12", "-0.2",
                          "--c22", c});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(v.parsed()["classification"], "quantum-violates-bell");
    EXPECT_TRUE(v.parsed()["verdict"]["feasible"].get<bool>());
    EXPECT_FALSE(v.parsed()["bell_original"].get<bool>());

    const Result ok = run({"bell", "--alpha", kQuarterPi, "--beta", kQuarterPi, "--c11", c, "--c12", "-1",
                           "--c22", c});
    EXPECT_EQ(ok.parsed()["classification"], "consistent");
    EXPECT_EQ(run({"bell", "--alpha", "45", "--beta", "45", "--degrees", "--c11", c, "--c12", "-0.2", "--c22", c})
                  .parsed()["classification"],
              "quantum-violates-bell");
    EXPECT_EQ(run({"bell", "--alpha", "0", "--beta", "1", "--c11", "0", "--c12", "0", "--c22", "0"}).code, 2);
}

TEST(Cli, BellRightAnglesNeverViolate) {
    int feasible = 0;
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j <= 10; ++j) {
            for (int k = 0; k <= 10; ++k) {
                const auto f = [](int n) { return chshq::cli::format_double(-1.0 + 0.2 * n); };
                const Result r = run({"bell", "--alpha", kHalfPi, "--beta", kHalfPi, "--c11", f(i), "--c12", f(j),
                                      "--c22", f(k)});
                const std::string cls = r.parsed()["classification"];
                ASSERT_EQ(r.code, cls == "quantum-infeasible" ? 1 : 0) << r.err;
                EXPECT_NE(cls, "quantum-violates-bell") << f(i) << " " << f(j) << " " << f(k);
                feasible += cls == "consistent";
            }
        }
    }
    EXPECT_GT(feasible, 0);
}

TEST(Cli, ConfigFile) {
    const std::string path = ::testing::TempDir() + "chshq_check.conf";
    {
        std::ofstream cfg(path);
        cfg << "# right angles\ncommand = check\nalpha = 90\nbeta = 90\ndegrees = true\ngamma = 1,0,1,0\n";
    }
    EXPECT_EQ(run({"--config", path}).code, 1);
    EXPECT_EQ(run({"check", "--config", path}).code, 1);
    // Explicit flags win over the file.
    EXPECT_EQ(run({"check", "--config", path, "--gamma", "0,0,0,0"}).code, 0);
    EXPECT_EQ(run({"check", "--config", ::testing::TempDir() + "missing.conf"}).code, 2);
    {
        std::ofstream cfg(path);
        cfg << "alpha 1\n";
    }
    EXPECT_EQ(run({"check", "--config", path, "--beta", "1", "--gamma", "0,0,0,0"}).code, 2);
    std::remove(path.c_str());
}
