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


#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "chaoscorr/harness/run.hpp"

namespace chaoscorr::harness {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("chaoscorr_test_" + name);
    fs::remove_all(p);
    return p;
}

/// Compares with tests/golden/<name>. Set CHAOSCORR_UPDATE_GOLDEN=1 to rewrite the file.
void expect_golden(const std::string &name, const std::string &text) {
    const fs::path path = fs::path(CHAOSCORR_GOLDEN_DIR) / name;
    if (std::getenv("CHAOSCORR_UPDATE_GOLDEN") != nullptr) {
        write_text(path, text);
    }
    ASSERT_TRUE(fs::exists(path)) << path;
    EXPECT_EQ(read_text(path), text) << name;
}

ExperimentConfig fig1_small() {
    ExperimentConfig c;
    c.experiment = Experiment::Fig1;
    c.ensembles = {Source::GUE, Source::GOE, Source::SpinChain};
    c.n_values = {2, 3, 4};
    c.samples = 4;
    c.master_seed = 7;
    return c;
}

ExperimentConfig fig2_small() {
    ExperimentConfig c;
    c.experiment = Experiment::Fig2;
    c.n_values = {5};
    c.samples = 6;
    c.master_seed = 7;
    return c;
}

ExperimentConfig everything_changed() {
    ExperimentConfig c;
    c.experiment = Experiment::Invariance;
    c.ensembles = {Source::GOE, Source::SpinChain};
    c.n_values = {5, 9};
    c.samples = 17;
    c.master_seed = 0xfedcba9876543210ULL;
    c.coupling = 0.3;
    c.field = -1.0 / 3.0;
    c.selector = SelectorKind::Window;
    c.selector_ordinal = 5;
    c.window_center = -0.125;
    c.window_width = 0.1;
    c.subsystem_policy = PolicyKind::RandomSubset;
    c.moment_samples = 11;
    c.pair_samples = 12;
    c.vcm_samples = 13;
    c.invariance_samples = 14;
    c.spacing_realizations = 3;
    c.spacing_window = 0.3;
    c.spacing_bins = 7;
    c.invariance_statistic = InvarianceStatistic::VcmMeanDiagonal;
    c.purity_sites = 2;
    c.final_sites = 4;
    c.random_local_basis = true;
    c.family = StateFamily::Cat;
    c.max_ops = 3;
    c.expected_failures = {"spin-spacing", "cat-emax"};
    c.fault = std::string(kFaultUnnormalizedSampler);
    c.out_dir = "some/where";
    c.threads = 3;
    return c;
}

// ---------------------------------------------------------------------------------------
// Config

TEST(HarnessConfig, RoundTripsThroughJsonText) {
    for (const ExperimentConfig &c : {ExperimentConfig{}, fig1_small(), fig2_small(), everything_changed()}) {
        const auto text = to_json(c).dump();
        const ExperimentConfig back = config_from_json(nlohmann::ordered_json::parse(text));
        EXPECT_EQ(back, c);
        EXPECT_EQ(to_json(back).dump(), text);
    }
}

TEST(HarnessConfig, JsonKeyOrderIsStable) {
    const auto j = to_json(ExperimentConfig{});
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    ASSERT_GE(keys.size(), 8u);
    EXPECT_EQ(keys[0], "experiment");
    EXPECT_EQ(keys[1], "ensembles");
    EXPECT_EQ(keys[2], "n_values");
    EXPECT_EQ(keys.back(), "threads");
}

TEST(HarnessConfig, MalformedJsonIsConfigError) {
    auto j = to_json(ExperimentConfig{});
    j.erase("samples");
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = to_json(ExperimentConfig{});
    j["samples"] = "many";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = to_json(ExperimentConfig{});
    j["experiment"] = "fig3";
    EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(HarnessConfig, Defaults) {
    const ExperimentConfig c;
    EXPECT_EQ(c.samples, 100u);
    EXPECT_EQ(c.coupling, 1.0);
    EXPECT_EQ(c.field, 1.0);
    EXPECT_EQ(c.selector, SelectorKind::Central);
    EXPECT_EQ(c.moment_samples, 5000u);
    EXPECT_EQ(c.pair_samples, 1000u);
    EXPECT_EQ(default_n_values(Experiment::Fig1), (std::vector<int>{4, 6, 8, 10, 12}));
    EXPECT_EQ(default_n_values(Experiment::Fig2), (std::vector<int>{12}));
    EXPECT_EQ(default_ensembles(Experiment::Fig2).size(), 3u);
}

TEST(HarnessConfig, ValidationRejectsBadFields) {
    auto bad = [](auto mutate) {
        ExperimentConfig c = fig1_small();
        mutate(c);
        return c;
    };
    EXPECT_NO_THROW(validate(fig1_small()));
    EXPECT_THROW(validate(bad([](auto &c) { c.n_values = {0}; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.n_values = {30}; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.n_values = {1}; })), ConfigError); // spin chain needs 2 sites
    EXPECT_THROW(validate(bad([](auto &c) { c.samples = 0; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.coupling = NAN; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.selector = SelectorKind::Window; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.fault = "gremlins"; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.threads = 0; })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.out_dir.clear(); })), ConfigError);
    EXPECT_THROW(validate(bad([](auto &c) { c.spacing_window = 1.5; })), ConfigError);
    ExperimentConfig f2 = fig2_small();
    f2.n_values = {4, 6};
    EXPECT_THROW(validate(f2), ConfigError);
}

TEST(HarnessConfig, EnumSpellings) {
    EXPECT_EQ(parse_source("gue"), Source::GUE);
    EXPECT_EQ(parse_source("spin-chain"), Source::SpinChain);
    EXPECT_THROW(parse_source("GSE"), ConfigError);
    for (auto e : {Experiment::Fig1, Experiment::Fig2, Experiment::Checks, Experiment::PairCorrelationCheck,
                   Experiment::MomentsCheck, Experiment::SpinSpacing, Experiment::Invariance,
                   Experiment::DisentangleProbe}) {
        EXPECT_EQ(parse_experiment(to_string(e)), e);
    }
}

// ---------------------------------------------------------------------------------------
// CSV schemas and goldens

TEST(HarnessFig1, Schema) {
    const auto t = run_fig1(fig1_small()).table();
    EXPECT_EQ(t.header, fig1_header());
    EXPECT_EQ(t.rows.size(), 9u);
}

TEST(HarnessFig1, Golden) { expect_golden("fig1_small.csv", run_fig1(fig1_small()).table().to_string()); }

TEST(HarnessFig1, SingleSampleHasZeroStd) {
    ExperimentConfig c;
    c.ensembles = {Source::GUE};
    c.n_values = {2};
    c.samples = 1;
    const auto r = run_fig1(c);
    EXPECT_EQ(r.rows.at(0).e_max.std, 0.0);
    EXPECT_EQ(r.rows.at(0).e_min.std, 0.0);
    const auto t = r.table();
    EXPECT_EQ(t.rows[0][t.column("e_max_std")], "0");
}

TEST(HarnessFig1, SeedChangesOutput) {
    ExperimentConfig c = fig1_small();
    const auto a = run_fig1(c).table().to_string();
    c.master_seed = 8;
    EXPECT_NE(run_fig1(c).table().to_string(), a);
}

TEST(HarnessFig2, SchemaAndBoundColumn) {
    ExperimentConfig c;
    c.experiment = Experiment::Fig2;
    c.ensembles = {Source::GUE};
    c.samples = 2;
    const auto r = run_fig2(c);
    const auto t = r.table();
    EXPECT_EQ(t.header, fig2_header());
    ASSERT_EQ(t.rows.size(), 11u);
    const std::vector<std::string> bound{"1", "2", "3", "4", "5", "6", "5", "4", "3", "2", "1"};
    for (std::size_t i = 0; i < 11; ++i) {
        EXPECT_EQ(t.rows[i][t.column("bound")], bound[i]);
        EXPECT_EQ(t.rows[i][t.column("m")], std::to_string(i + 1));
    }
    EXPECT_NEAR(parse_number(t.rows[5][t.column("analytic")]), -std::log2(128.0 / 4097.0), 1e-10);
}

TEST(HarnessFig2, Golden) { expect_golden("fig2_small.csv", run_fig2(fig2_small()).table().to_string()); }

TEST(HarnessFig2, AssertionsCoverEverySource) {
    const auto r = run_fig2(fig2_small());
    // GUE and GOE at m = 1..4, overlap at m = 1..4, spin chain at m = 1..4
    EXPECT_EQ(r.assertions.size(), 4u * 4u);
}

TEST(HarnessSpacing, HistogramTableSchema) {
    ExperimentConfig c;
    c.experiment = Experiment::SpinSpacing;
    c.n_values = {8};
    c.spacing_realizations = 2;
    c.spacing_bins = 8;
    const auto r = run_spacing(c);
    const auto h = r.histogram_table();
    EXPECT_EQ(h.header, (std::vector<std::string>{"s_lo", "s_hi", "density", "wigner_surmise", "poisson"}));
    EXPECT_EQ(h.rows.size(), 8u);
    EXPECT_EQ(r.table().rows.size(), 1u);
}

// The spin-chain Hamiltonian is linear in (J, h), so scaling both by the same factor
// scales the spectrum, and unfolded spacings do not change. The J = h = 0.01 control is
// therefore exactly as chaotic as J = h = 1.
TEST(HarnessSpacing, EqualScalingOfCouplingAndFieldLeavesStatisticsUnchanged) {
    const auto strong = spin_spacing(8, 1.0, 1.0, 3, 99);
    const auto weak = spin_spacing(8, 0.01, 0.01, 3, 99);
    ASSERT_EQ(strong.stats.unfolded_spacings.size(), weak.stats.unfolded_spacings.size());
    for (std::size_t i = 0; i < strong.stats.unfolded_spacings.size(); ++i) {
        EXPECT_NEAR(strong.stats.unfolded_spacings[i], weak.stats.unfolded_spacings[i], 1e-7);
    }
    EXPECT_NEAR(strong.stats.ks_distance_goe, weak.stats.ks_distance_goe, 1e-6);
}

TEST(HarnessInvariance, TableRowsPerStep) {
    ExperimentConfig c;
    c.experiment = Experiment::Invariance;
    c.ensembles = {Source::GUE};
    c.n_values = {6};
    c.invariance_samples = 20;
    c.purity_sites = 2;
    c.final_sites = 3;
    const auto t = run_invariance(c).table();
    EXPECT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows.back()[t.column("N")], "3");
}

TEST(HarnessDisentangle, CatNeedsOneMeasurement) {
    ExperimentConfig c;
    c.experiment = Experiment::DisentangleProbe;
    c.family = StateFamily::Cat;
    c.n_values = {6};
    const auto r = run_disentangle(c);
    ASSERT_TRUE(r.results.at(0).second.count.has_value());
    EXPECT_EQ(*r.results.at(0).second.count, 1);
}

// ---------------------------------------------------------------------------------------
// Reproducibility

TEST(HarnessReproducibility, ThreadCountDoesNotChangeOutputs) {
    ExperimentConfig c1 = fig1_small();
    ExperimentConfig c3 = c1;
    c3.threads = 3;
    EXPECT_EQ(run_fig1(c1).table().to_string(), run_fig1(c3).table().to_string());

    ExperimentConfig f1 = fig2_small();
    ExperimentConfig f3 = f1;
    f3.threads = 4;
    f3.subsystem_policy = f1.subsystem_policy = PolicyKind::RandomSubset;
    EXPECT_EQ(run_fig2(f1).table().to_string(), run_fig2(f3).table().to_string());

    ExperimentConfig k1;
    k1.experiment = Experiment::MomentsCheck;
    k1.n_values = {2, 3};
    k1.moment_samples = 300;
    ExperimentConfig k3 = k1;
    k3.threads = 3;
    EXPECT_EQ(run_checks(k1).to_json().dump(), run_checks(k3).to_json().dump());
}

TEST(HarnessReproducibility, RunDirectoryIsByteIdenticalAcrossReruns) {
    ExperimentConfig c = fig1_small();
    std::ostringstream log;
    c.out_dir = scratch("rerun_a").string();
    ASSERT_EQ(run_experiment(c, log), kExitOk);
    const auto csv_a = read_text(fs::path(c.out_dir) / "fig1.csv");
    const auto svg_a = read_text(fs::path(c.out_dir) / "fig1.svg");
    auto meta_a = nlohmann::ordered_json::parse(read_text(fs::path(c.out_dir) / "fig1.meta.json"));
    c.out_dir = scratch("rerun_b").string();
    ASSERT_EQ(run_experiment(c, log), kExitOk);
    EXPECT_EQ(read_text(fs::path(c.out_dir) / "fig1.csv"), csv_a);
    EXPECT_EQ(read_text(fs::path(c.out_dir) / "fig1.svg"), svg_a);
    auto meta_b = nlohmann::ordered_json::parse(read_text(fs::path(c.out_dir) / "fig1.meta.json"));
    // only the echoed output directory differs
    meta_a["config"].erase("out_dir");
    meta_b["config"].erase("out_dir");
    EXPECT_EQ(meta_a, meta_b);
    EXPECT_EQ(meta_b["schema_version"], kSchemaVersion);
    EXPECT_EQ(config_from_json(nlohmann::ordered_json::parse(read_text(fs::path(c.out_dir) / "fig1.meta.json"))["config"]),
              c);
}

// ---------------------------------------------------------------------------------------
// Plots

TEST(HarnessPlot, RendersFig1AndFig2Deterministically) {
    const auto t1 = run_fig1(fig1_small()).table();
    const auto svg1 = render_fig1(t1);
    EXPECT_EQ(svg1, render_fig1(t1));
    std::size_t curves = 0;
    for (std::size_t p = svg1.find("<polyline"); p != std::string::npos; p = svg1.find("<polyline", p + 1)) {
        ++curves;
    }
    EXPECT_EQ(curves, 6u); // e_max and e_min for three sources

    const auto svg2 = render_fig2(run_fig2(fig2_small()).table());
    curves = 0;
    for (std::size_t p = svg2.find("<polyline"); p != std::string::npos; p = svg2.find("<polyline", p + 1)) {
        ++curves;
    }
    EXPECT_EQ(curves, 4u); // bound line and three sources
    EXPECT_NE(svg2.find("stroke-dasharray"), std::string::npos);
}

TEST(HarnessPlot, EmitWritesOneSvgPerCsv) {
    const fs::path dir = scratch("plot_ok");
    write_csv(dir / "a.csv", run_fig1(fig1_small()).table());
    write_csv(dir / "b.csv", run_fig2(fig2_small()).table());
    const auto written = emit_plots({dir / "a.csv", dir / "b.csv"}, dir / "svg");
    ASSERT_EQ(written.size(), 2u);
    EXPECT_TRUE(fs::exists(dir / "svg" / "a.svg"));
    EXPECT_TRUE(fs::exists(dir / "svg" / "b.svg"));
}

TEST(HarnessPlot, SchemaErrorsWriteNothing) {
    const fs::path dir = scratch("plot_bad");
    write_text(dir / "empty.csv", "");
    write_text(dir / "header_only.csv", "ensemble,N,samples,e_max_mean,e_max_std,e_min_mean,e_min_std\n");
    write_text(dir / "other.csv", "x,y\n1,2\n");
    write_csv(dir / "good.csv", run_fig1(fig1_small()).table());
    for (const char *name : {"empty.csv", "header_only.csv", "other.csv"}) {
        EXPECT_THROW(emit_plots({dir / "good.csv", dir / name}, dir / "svg"), SchemaError) << name;
        EXPECT_FALSE(fs::exists(dir / "svg")) << name;
    }
}

// ---------------------------------------------------------------------------------------
// Checks and exit codes

TEST(HarnessChecks, FaultInjectionFailsNormalization) {
    ExperimentConfig c;
    c.experiment = Experiment::MomentsCheck;
    c.n_values = {3};
    c.ensembles = {Source::GUE};
    c.moment_samples = 50;
    EXPECT_TRUE(run_checks(c).ok());
    c.fault = std::string(kFaultUnnormalizedSampler);
    const auto r = run_checks(c);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.find("normalization-GUE-N3").status, CheckStatus::Fail);
}

TEST(HarnessChecks, ExpectedFailuresAreClassified) {
    ExperimentConfig c;
    c.experiment = Experiment::MomentsCheck;
    c.n_values = {3};
    c.ensembles = {Source::GUE};
    c.moment_samples = 50;
    c.fault = std::string(kFaultUnnormalizedSampler);
    c.expected_failures = {"normalization-GUE-N3", "moment4-GUE-N3", "cross-moment-GUE-N3", "moment2-GUE-N3"};
    const auto r = run_checks(c);
    EXPECT_EQ(r.find("normalization-GUE-N3").status, CheckStatus::ExpectedFail);
    for (const auto &x : r.checks) {
        EXPECT_NE(x.status, CheckStatus::Fail) << x.name;
    }
    EXPECT_TRUE(r.ok());

    c.fault.clear();
    const auto clean = run_checks(c);
    EXPECT_EQ(clean.find("normalization-GUE-N3").status, CheckStatus::UnexpectedPass);
    EXPECT_TRUE(clean.ok());
}

TEST(HarnessChecks, FaultyStatesTurnIntoFailedChecksNotCrashes) {
    ExperimentConfig c;
    c.fault = std::string(kFaultUnnormalizedSampler);
    c.pair_samples = 5;
    c.experiment = Experiment::PairCorrelationCheck;
    c.n_values = {4};
    const auto r = run_checks(c);
    ASSERT_EQ(r.checks.size(), 2u);
    for (const auto &x : r.checks) {
        EXPECT_EQ(x.status, CheckStatus::Fail);
        EXPECT_NE(x.note.find("normalized"), std::string::npos) << x.note;
    }
}

TEST(HarnessChecks, ReportSchema) {
    ExperimentConfig c;
    c.experiment = Experiment::PairCorrelationCheck;
    c.n_values = {4};
    c.pair_samples = 20;
    const auto j = run_checks(c).to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) {
        keys.push_back(it.key());
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "tool", "version", "master_seed", "ok", "summary",
                                              "checks"}));
    const auto &first = j["checks"][0];
    std::vector<std::string> fields;
    for (auto it = first.begin(); it != first.end(); ++it) {
        fields.push_back(it.key());
    }
    EXPECT_EQ(fields, (std::vector<std::string>{"name", "provenance", "empirical", "predicted", "se", "z",
                                                "threshold", "pass", "status", "note"}));
    EXPECT_EQ(first["name"], "sq-correlation-GUE-N4");
    EXPECT_FALSE(first["provenance"].get<std::string>().empty());
}

TEST(HarnessChecks, NonCheckExperimentIsConfigError) {
    EXPECT_THROW(run_checks(fig1_small()), ConfigError);
}

TEST(HarnessExitCodes, ContractHolds) {
    std::ostringstream log;
    std::ostringstream err;
    ExperimentConfig c;
    c.experiment = Experiment::MomentsCheck;
    c.n_values = {2};
    c.moment_samples = 40;
    c.out_dir = scratch("exit_ok").string();
    EXPECT_EQ(run_with_exit_code(c, log, err), 0);
    EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "checks.json"));
    EXPECT_TRUE(fs::exists(fs::path(c.out_dir) / "checks.meta.json"));

    c.fault = std::string(kFaultUnnormalizedSampler);
    c.out_dir = scratch("exit_fail").string();
    EXPECT_EQ(run_with_exit_code(c, log, err), 1);

    c.fault.clear();
    c.moment_samples = 0;
    EXPECT_EQ(run_with_exit_code(c, log, err), 2);

    // output directory below a regular file
    const fs::path blocker = scratch("exit_io");
    write_text(blocker, "not a directory");
    c.moment_samples = 40;
    c.out_dir = (blocker / "sub").string();
    EXPECT_EQ(run_with_exit_code(c, log, err), 2);
    EXPECT_NE(err.str().find("io error"), std::string::npos);
}

} // namespace
} // namespace chaoscorr::harness
