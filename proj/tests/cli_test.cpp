// Copyright 2026 The qfilt Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string cmd = std::string(QFILT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qfilt_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write(const fs::path& p, const std::string& content) { std::ofstream(p) << content; }

}  // namespace

TEST(Cli, verify_passes_and_marks_unsupported) {
    const CliResult r = run("verify");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("unsupported"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_NE(r.out.find("BetaFix        3  dephasing     unsupported"), std::string::npos) << r.out;
}

TEST(Cli, optimize_is_byte_identical) {
    const fs::path cfg = scratch("point.json");
    write(cfg, R"({"task": "fidelity", "kind": "dephasing", "q": 0.5, "n": 1, "optimizer": {"restarts": 2}})");
    const fs::path a = scratch("a.json");
    const fs::path b = scratch("b.json");
    ASSERT_EQ(run("optimize --config " + cfg.string() + " --seed 42 --out " + a.string()).code, 0);
    ASSERT_EQ(run("optimize --config " + cfg.string() + " --seed 42 --out " + b.string()).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_NE(slurp(a).find("\"seed\": 42"), std::string::npos);
}

TEST(Cli, sweep_writes_csv) {
    const fs::path cfg = scratch("sweep.json");
    write(cfg, R"({"task": "qfi", "kind": "depolarizing", "q": [0.6], "n": [0, 1], "optimizer": {"restarts": 1}})");
    const fs::path out = scratch("sweep.csv");
    const CliResult r = run("sweep --config " + cfg.string() + " --out " + out.string() + " --threads 2");
    ASSERT_EQ(r.code, 0) << r.out;
    const std::string csv = slurp(out);
    EXPECT_EQ(csv.rfind("task,kind,n,q,q_a,s,value,probability,source,restarts,iterations,seed\n", 0), 0u);
    EXPECT_NE(csv.find("qfi,depolarizing,0,0.6,1,1,0.36,1,closed_form,0,0,0"), std::string::npos) << csv;
}

TEST(Cli, config_errors_exit_two) {
    const fs::path bad = scratch("bad.json");
    write(bad, R"({"kind": "depolarizing", "q": [0.1]})");
    EXPECT_EQ(run("sweep --config " + bad.string()).code, 2);
    write(bad, "{not json");
    EXPECT_EQ(run("optimize --config " + bad.string()).code, 2);
    EXPECT_EQ(run("sweep --config /nonexistent.json").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, ansatz_prints_matrices) {
    const CliResult r = run("ansatz --n 2 --kind dephasing");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("n=2 dephasing"), std::string::npos);
    EXPECT_EQ(r.out.find("n=1"), std::string::npos);
}
