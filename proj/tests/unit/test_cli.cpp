// Copyright 2026 The chaoscorr Authors
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


// Runs the installed command-line tool and checks exit codes and files.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "chaoscorr/harness/io.hpp"

namespace chaoscorr::harness {
namespace {

namespace fs = std::filesystem;

int run_cli(const std::string &args, const fs::path &cwd) {
    const std::string cmd = "cd '" + cwd.string() + "' && '" CHAOSCORR_CLI_PATH "' " + args + " > cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path workdir(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("chaoscorr_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

TEST(Cli, Fig1WritesCsvSvgAndMetadata) {
    const auto d = workdir("fig1");
    EXPECT_EQ(run_cli("fig1 --ensemble GUE,GOE --n-min 2 --n-max 4 --n-step 2 --samples 3 --out o", d), 0);
    const auto t = read_csv(d / "o" / "fig1.csv");
    EXPECT_EQ(t.rows.size(), 4u);
    EXPECT_TRUE(fs::exists(d / "o" / "fig1.svg"));
    const auto meta = nlohmann::ordered_json::parse(read_text(d / "o" / "fig1.meta.json"));
    EXPECT_EQ(meta["config"]["n_values"], (std::vector<int>{2, 4}));
    EXPECT_EQ(meta["outputs"].size(), 2u);
}

TEST(Cli, ChecksExitCodes) {
    const auto d = workdir("checks");
    EXPECT_EQ(run_cli("checks --suite moments --n 2 --moment-samples 100 --out ok", d), 0);
    EXPECT_EQ(run_cli("checks --suite moments --n 2 --moment-samples 100 --fault unnormalized-sampler --out bad", d),
              1);
    const auto report = nlohmann::ordered_json::parse(read_text(d / "bad" / "checks.json"));
    EXPECT_FALSE(report["ok"].get<bool>());
}

TEST(Cli, UsageAndConfigErrorsExitTwo) {
    const auto d = workdir("usage");
    EXPECT_EQ(run_cli("fig1 --no-such-flag", d), 2);
    EXPECT_EQ(run_cli("", d), 2);
    EXPECT_EQ(run_cli("fig1 --n 64", d), 2);
    EXPECT_EQ(run_cli("fig1 --ensemble GSE", d), 2);
    EXPECT_EQ(run_cli("fig1 --n 4 --n-min 2 --n-max 6", d), 2);
    EXPECT_EQ(run_cli("checks --suite nonsense", d), 2);
    EXPECT_EQ(run_cli("plot missing.csv", d), 2);
    EXPECT_EQ(run_cli("--help", d), 0);
}

TEST(Cli, IniConfigSetsSubcommandOptions) {
    const auto d = workdir("ini");
    write_text(d / "run.ini", "[spacing]\nn = 8\nrealizations = 2\nbins = 5\nJ = 0.5\nout = from_ini\n");
    EXPECT_EQ(run_cli("--config run.ini spacing", d), 0);
    const auto t = read_csv(d / "from_ini" / "spacing.csv");
    EXPECT_EQ(t.rows.at(0)[t.column("N")], "8");
    EXPECT_EQ(t.rows.at(0)[t.column("J")], "0.5");
    EXPECT_EQ(read_csv(d / "from_ini" / "spacing_hist.csv").rows.size(), 5u);
    // command-line flags override the file
    EXPECT_EQ(run_cli("--config run.ini spacing --out from_flag --bins 3", d), 0);
    EXPECT_EQ(read_csv(d / "from_flag" / "spacing_hist.csv").rows.size(), 3u);
}

TEST(Cli, PrintConfigEmitsJson) {
    const auto d = workdir("print");
    EXPECT_EQ(run_cli("fig2 --n 8 --subsystem random-subset --print-config", d), 0);
    const auto j = nlohmann::ordered_json::parse(read_text(d / "cli.log"));
    EXPECT_EQ(j["experiment"], "fig2");
    EXPECT_EQ(j["subsystem_policy"], "random-subset");
}

TEST(Cli, PlotRejectsEmptyCsv) {
    const auto d = workdir("plot");
    write_text(d / "empty.csv", "");
    EXPECT_EQ(run_cli("plot empty.csv --out svg", d), 2);
    EXPECT_FALSE(fs::exists(d / "svg"));
}

} // namespace
} // namespace chaoscorr::harness
