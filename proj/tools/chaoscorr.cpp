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

// Command-line front end: one subcommand per experiment plus `plot`.
//
// Exit codes: 0 all checks pass, 1 a check or assertion failed, 2 bad usage, config or IO.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "chaoscorr/harness/run.hpp"

namespace {

using namespace chaoscorr;
using namespace chaoscorr::harness;

/// Raw option values of one subcommand, converted to an ExperimentConfig after parsing.
struct Options {
    ExperimentConfig config;
    std::vector<std::string> ensembles;
    std::vector<int> n_values;
    int n_min = 0;
    int n_max = 0;
    int n_step = 1;
    std::string selector = "central";
    std::string subsystem = "contiguous";
    std::string statistic = "mean-purity";
    std::string family = "chaotic";
    std::string suite = "all";
    bool print_config = false;
};

void add_shared(CLI::App *app, Options &o) {
    auto &c = o.config;
    app->add_option("--ensemble", o.ensembles, "Sources: GUE, GOE, spin-chain (repeatable)")->delimiter(',');
    app->add_option("--n", o.n_values, "System sizes (repeatable or comma separated)")->delimiter(',');
    app->add_option("--n-min", o.n_min, "Smallest N of a range");
    app->add_option("--n-max", o.n_max, "Largest N of a range");
    app->add_option("--n-step", o.n_step, "Step of the N range")->capture_default_str();
    app->add_option("--samples", c.samples, "Samples (disorder realizations for the spin chain)")
        ->capture_default_str();
    app->add_option("--seed", c.master_seed, "Master seed")->capture_default_str();
    app->add_option("--J", c.coupling, "Spin-chain coupling")->capture_default_str();
    app->add_option("--h", c.field, "Spin-chain field")->capture_default_str();
    app->add_option("--out", c.out_dir, "Output directory")->capture_default_str();
    app->add_option("--threads", c.threads, "Worker threads; results do not depend on it")->capture_default_str();
    app->add_flag("--print-config", o.print_config, "Print the resolved config as JSON and exit");
}

void add_selector(CLI::App *app, Options &o) {
    app->add_option("--selector", o.selector, "Spin-chain eigenstate: central, ordinal or window")
        ->capture_default_str();
    app->add_option("--ordinal", o.config.selector_ordinal, "1-based eigenstate ordinal for --selector ordinal");
    app->add_option("--window-center", o.config.window_center, "Energy window center for --selector window");
    app->add_option("--window-width", o.config.window_width, "Energy window width for --selector window");
}

/// Turns parsed options into a config; enum spellings are checked here so that a bad
/// value is a config error (exit 2).
ExperimentConfig resolve(Options &o, Experiment e) {
    ExperimentConfig c = o.config;
    c.experiment = e;
    for (const auto &s : o.ensembles) {
        c.ensembles.push_back(parse_source(s));
    }
    c.n_values = o.n_values;
    if (o.n_min > 0 || o.n_max > 0) {
        if (!o.n_values.empty()) {
            throw ConfigError("give either --n or --n-min/--n-max");
        }
        if (o.n_min < 1 || o.n_max < o.n_min || o.n_step < 1) {
            throw ConfigError("invalid N range");
        }
        for (int n = o.n_min; n <= o.n_max; n += o.n_step) {
            c.n_values.push_back(n);
        }
    }
    c.selector = parse_selector_kind(o.selector);
    c.subsystem_policy = parse_policy_kind(o.subsystem);
    c.invariance_statistic = parse_invariance_statistic(o.statistic);
    c.family = parse_state_family(o.family);
    if (e == Experiment::Checks) {
        if (o.suite == "moments") {
            c.experiment = Experiment::MomentsCheck;
        } else if (o.suite == "pairs") {
            c.experiment = Experiment::PairCorrelationCheck;
        } else if (o.suite != "all") {
            throw ConfigError("unknown check suite '" + o.suite + "'");
        }
    }
    validate(c);
    return c;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Correlation and entanglement statistics of chaotic eigenstates"};
    // --h is the field strength, so help is long-form only
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_config("--config", "", "INI file; [subcommand] sections set that subcommand's options");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Options fig1;
    auto *fig1_cmd = app.add_subcommand("fig1", "Extremal VCM eigenvalues against N");
    add_shared(fig1_cmd, fig1);
    add_selector(fig1_cmd, fig1);

    Options fig2;
    auto *fig2_cmd = app.add_subcommand("fig2", "-log2 mean purity against subsystem size");
    add_shared(fig2_cmd, fig2);
    add_selector(fig2_cmd, fig2);
    fig2_cmd->add_option("--subsystem", fig2.subsystem, "contiguous or random-subset")->capture_default_str();

    Options checks;
    auto *checks_cmd = app.add_subcommand("checks", "Oracle comparisons; JSON report");
    add_shared(checks_cmd, checks);
    checks_cmd->add_option("--suite", checks.suite, "all, moments or pairs")->capture_default_str();
    checks_cmd->add_option("--moment-samples", checks.config.moment_samples)->capture_default_str();
    checks_cmd->add_option("--pair-samples", checks.config.pair_samples)->capture_default_str();
    checks_cmd->add_option("--vcm-samples", checks.config.vcm_samples)->capture_default_str();
    checks_cmd->add_option("--invariance-samples", checks.config.invariance_samples)->capture_default_str();
    checks_cmd->add_option("--realizations", checks.config.spacing_realizations, "Spacing realizations")
        ->capture_default_str();
    checks_cmd->add_option("--expect-fail", checks.config.expected_failures, "Check names expected to fail")
        ->delimiter(',');
    checks_cmd->add_option("--fault", checks.config.fault, "Inject a fault: unnormalized-sampler");

    Options spacing;
    auto *spacing_cmd = app.add_subcommand("spacing", "Unfolded level-spacing statistics of the spin chain");
    add_shared(spacing_cmd, spacing);
    spacing_cmd->add_option("--realizations", spacing.config.spacing_realizations)->capture_default_str();
    spacing_cmd->add_option("--window-fraction", spacing.config.spacing_window, "Central fraction of the spectrum")
        ->capture_default_str();
    spacing_cmd->add_option("--bins", spacing.config.spacing_bins)->capture_default_str();

    Options inv;
    auto *inv_cmd = app.add_subcommand("invariance", "Ensemble statistics after local measurements");
    add_shared(inv_cmd, inv);
    inv_cmd->add_option("--statistic", inv.statistic, "mean-purity, mean-moment4 or vcm-mean-diagonal")
        ->capture_default_str();
    inv_cmd->add_option("--purity-sites", inv.config.purity_sites)->capture_default_str();
    inv_cmd->add_option("--final-sites", inv.config.final_sites, "Stop at this many sites (0: N-1)");
    inv_cmd->add_flag("--random-basis", inv.config.random_local_basis, "Measure in random local bases");
    inv_cmd->add_option("--invariance-samples", inv.config.invariance_samples)->capture_default_str();

    Options dis;
    auto *dis_cmd = app.add_subcommand("disentangle", "Measurements needed to reach a product state");
    add_shared(dis_cmd, dis);
    dis_cmd->add_option("--family", dis.family, "chaotic, cat or product")->capture_default_str();
    dis_cmd->add_option("--max-ops", dis.config.max_ops, "Measurement budget (0: N)");

    std::vector<std::string> plot_inputs;
    std::string plot_out = "out";
    auto *plot_cmd = app.add_subcommand("plot", "Render fig1/fig2 CSV files as SVG");
    plot_cmd->add_option("csv", plot_inputs, "CSV files")->required();
    plot_cmd->add_option("--out", plot_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (plot_cmd->parsed()) {
            std::vector<std::filesystem::path> paths(plot_inputs.begin(), plot_inputs.end());
            for (const auto &p : emit_plots(paths, plot_out)) {
                std::cout << "wrote " << p.string() << '\n';
            }
            return kExitOk;
        }
        const std::pair<CLI::App *, std::pair<Options *, Experiment>> table[] = {
            {fig1_cmd, {&fig1, Experiment::Fig1}},        {fig2_cmd, {&fig2, Experiment::Fig2}},
            {checks_cmd, {&checks, Experiment::Checks}},  {spacing_cmd, {&spacing, Experiment::SpinSpacing}},
            {inv_cmd, {&inv, Experiment::Invariance}},    {dis_cmd, {&dis, Experiment::DisentangleProbe}},
        };
        for (const auto &[cmd, entry] : table) {
            if (!cmd->parsed()) {
                continue;
            }
            const ExperimentConfig c = resolve(*entry.first, entry.second);
            if (entry.first->print_config) {
                std::cout << to_json(c).dump(2) << '\n';
                return kExitOk;
            }
            return run_with_exit_code(c, std::cout, std::cerr);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
