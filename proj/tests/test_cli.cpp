// Copyright 2026 The weaktension Authors
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

// Runs the command-line tool as a subprocess and checks exit codes and output.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("weaktension_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Result invoke(const std::string& args) {
        const fs::path out = dir_ / "stdout.txt";
        const fs::path err = dir_ / "stderr.txt";
        const std::string command = std::string("\"") + WEAKTENSION_CLI_PATH + "\" " + args + " >\"" + out.string() +
                                    "\" 2>\"" + err.string() + "\"";
        const int status = std::system(command.c_str());
        Result r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    fs::path write(const std::string& name, const std::string& text) {
        const fs::path path = dir_ / name;
        std::ofstream(path, std::ios::binary) << text;
        return path;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ListsBuiltins) {
    const Result r = invoke("list");
    EXPECT_EQ(r.exit_code, 0);
    for (const char* name : {"octant", "free_particle_default", "mixed_halfqubit", "montecarlo_octant", "reconstruct_plus_i"}) {
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
    }
}

TEST_F(Cli, RunsBuiltinAsCsvAndJson) {
    const Result csv = invoke("run --builtin octant");
    EXPECT_EQ(csv.exit_code, 0) << csv.err;
    EXPECT_NE(csv.out.find("m,eigenvalue,re_p,im_p"), std::string::npos);
    EXPECT_NE(csv.out.find("-0.78539816339744"), std::string::npos);

    const Result json = invoke("run --builtin octant --format json");
    EXPECT_EQ(json.exit_code, 0) << json.err;
    const auto doc = nlohmann::json::parse(json.out);
    EXPECT_EQ(doc["metadata"]["scenario"], "octant");
    EXPECT_EQ(doc["rows"].size(), 2u);
}

TEST_F(Cli, RunsConfigFileAndWritesOutput) {
    const fs::path config = write("triple.json", R"({"name": "file_triple", "kind": "triple",
        "states": {"i": "plus_i", "f": "plus"}, "observable": "pauli_z"})");
    const fs::path target = dir_ / "table.csv";
    const Result r = invoke("run \"" + config.string() + "\" --output \"" + target.string() + "\"");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const std::string first = slurp(target);
    EXPECT_NE(first.find("# scenario=file_triple"), std::string::npos);
    EXPECT_EQ(invoke("run \"" + config.string() + "\" --output \"" + target.string() + "\"").exit_code, 0);
    EXPECT_EQ(slurp(target), first);
}

TEST_F(Cli, SeedOverride) {
    const Result a = invoke("run --builtin montecarlo_octant --seed 5");
    const Result b = invoke("run --builtin montecarlo_octant --seed 5");
    const Result c = invoke("run --builtin montecarlo_octant --seed 6");
    EXPECT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, c.out);
    EXPECT_NE(a.out.find("# seed=5"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitWithTwo) {
    const fs::path dimension = write("dim.json", R"({"kind": "triple", "states": {"i": [[1,0],[0,0],[0,0]], "f": "plus"},
        "observable": "pauli_z"})");
    const Result r = invoke("run \"" + dimension.string() + "\"");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.err.find("dimension"), std::string::npos) << r.err;

    const fs::path broken = write("broken.json", "{\"kind\": ");
    EXPECT_EQ(invoke("run \"" + broken.string() + "\"").exit_code, 2);
    EXPECT_EQ(invoke("run \"" + (dir_ / "missing.json").string() + "\"").exit_code, 2);
    EXPECT_EQ(invoke("run --builtin no_such_scenario").exit_code, 2);
    EXPECT_EQ(invoke("run").exit_code, 2);
    EXPECT_EQ(invoke("run --builtin octant --format xml").exit_code, 2);
    EXPECT_EQ(invoke("frobnicate").exit_code, 2);
}

TEST_F(Cli, NumericErrorsExitWithThree) {
    const fs::path orthogonal = write("orth.json", R"({"name": "orthogonal", "kind": "triple",
        "states": {"i": "plus", "f": "minus"}, "observable": "pauli_z"})");
    const Result r = invoke("run \"" + orthogonal.string() + "\"");
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.err.find("orthogonal"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("OrthogonalPostselection"), std::string::npos) << r.err;
}
