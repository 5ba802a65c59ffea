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

/**
 * @file
 * Runs one configured experiment end to end: computation, CSV/JSON outputs, metadata
 * and the process exit code.
 */

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "chaoscorr/harness/checks.hpp"
#include "chaoscorr/harness/config.hpp"
#include "chaoscorr/harness/experiments.hpp"
#include "chaoscorr/harness/io.hpp"
#include "chaoscorr/harness/plot.hpp"

namespace chaoscorr::harness {

enum ExitCode : int { kExitOk = 0, kExitCheckFailure = 1, kExitUsage = 2 };

namespace detail {

class OutputSet {
  public:
    OutputSet(const ExperimentConfig &c, std::ostream &log) : config_(c), dir_(c.out_dir), log_(log) {
        ensure_directory(dir_);
    }

    void csv(const std::string &name, const CsvTable &t) { text(name, t.to_string()); }

    void json(const std::string &name, const nlohmann::ordered_json &j) { text(name, j.dump(2) + "\n"); }

    void text(const std::string &name, const std::string &body) {
        write_text(dir_ / name, body);
        names_.push_back(name);
        log_ << "wrote " << (dir_ / name).string() << '\n';
    }

    void finish(const std::string &stem) {
        write_json(dir_ / (stem + ".meta.json"), metadata(config_, names_));
        log_ << "wrote " << (dir_ / (stem + ".meta.json")).string() << '\n';
    }

  private:
    const ExperimentConfig &config_;
    std::filesystem::path dir_;
    std::ostream &log_;
    std::vector<std::string> names_;
};

} // namespace detail

/// Executes the experiment and writes its outputs. Config, IO and schema problems
/// propagate as exceptions; the return value is kExitOk or kExitCheckFailure.
inline int run_experiment(const ExperimentConfig &c, std::ostream &log) {
    validate(c);
    pin_blas_threads();
    detail::OutputSet out(c, log);
    switch (c.experiment) {
    case Experiment::Fig1: {
        const auto r = run_fig1(c);
        const auto table = r.table();
        out.csv("fig1.csv", table);
        out.text("fig1.svg", render_fig1(table));
        out.finish("fig1");
        return kExitOk;
    }
    case Experiment::Fig2: {
        const auto r = run_fig2(c);
        const auto table = r.table();
        out.csv("fig2.csv", table);
        out.text("fig2.svg", render_fig2(table));
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto &x : r.assertions) {
            a.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
            if (!x.pass) {
                log << "[fail] " << x.name << ": " << x.detail << '\n';
            }
        }
        out.json("fig2_assertions.json",
                 {{"schema_version", kSchemaVersion}, {"ok", r.all_pass()}, {"assertions", std::move(a)}});
        out.finish("fig2");
        return r.all_pass() ? kExitOk : kExitCheckFailure;
    }
    case Experiment::Checks:
    case Experiment::MomentsCheck:
    case Experiment::PairCorrelationCheck: {
        const auto r = run_checks(c);
        for (const auto &x : r.checks) {
            log << "[" << to_string(x.status) << "] " << x.name << '\n';
        }
        out.json("checks.json", r.to_json());
        out.finish("checks");
        return r.ok() ? kExitOk : kExitCheckFailure;
    }
    case Experiment::SpinSpacing: {
        const auto r = run_spacing(c);
        out.csv("spacing.csv", r.table());
        out.csv("spacing_hist.csv", r.histogram_table());
        out.finish("spacing");
        log << "KS distance to Wigner surmise " << format_number(r.stats.ks_distance_goe) << ", to Poisson "
            << format_number(r.stats.ks_distance_poisson) << '\n';
        return kExitOk;
    }
    case Experiment::Invariance: {
        const auto r = run_invariance(c);
        out.csv("invariance.csv", r.table());
        out.finish("invariance");
        return r.all_agree() ? kExitOk : kExitCheckFailure;
    }
    case Experiment::DisentangleProbe: {
        const auto r = run_disentangle(c);
        out.csv("disentangle.csv", r.table());
        out.finish("disentangle");
        for (const auto &[n, res] : r.results) {
            log << to_string(r.family) << " N=" << n << ": "
                << (res.count ? std::to_string(*res.count) + " measurements" : std::string("not disentangled"))
                << '\n';
        }
        return kExitOk;
    }
    }
    throw ConfigError("unknown experiment");
}

/// run_experiment with the exit-code contract applied: errors print to `err` and give 2.
/// Check failures are never exceptions, so anything caught here is a usage or
/// environment problem.
inline int run_with_exit_code(const ExperimentConfig &c, std::ostream &log, std::ostream &err) {
    try {
        return run_experiment(c, log);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
    } catch (const SchemaError &e) {
        err << "schema error: " << e.what() << '\n';
    } catch (const IoError &e) {
        err << "io error: " << e.what() << '\n';
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

} // namespace chaoscorr::harness
