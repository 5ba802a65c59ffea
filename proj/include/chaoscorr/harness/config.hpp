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
 * Experiment configuration: every run is a pure function of an ExperimentConfig.
 */

#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/local_ops.hpp"

namespace chaoscorr::harness {

inline constexpr int kSchemaVersion = 1;

enum class Experiment { Fig1, Fig2, Checks, PairCorrelationCheck, MomentsCheck, SpinSpacing, Invariance, DisentangleProbe };

/// Where states come from: one of the two random-matrix classes or spin-chain eigenstates.
enum class Source { GUE, GOE, SpinChain };

enum class SelectorKind { Central, Ordinal, Window };

enum class PolicyKind { Contiguous, RandomSubset };

inline constexpr std::string_view to_string(Experiment e) {
    switch (e) {
    case Experiment::Fig1:
        return "fig1";
    case Experiment::Fig2:
        return "fig2";
    case Experiment::Checks:
        return "checks";
    case Experiment::PairCorrelationCheck:
        return "pair-correlation-check";
    case Experiment::MomentsCheck:
        return "moments-check";
    case Experiment::SpinSpacing:
        return "spin-spacing";
    case Experiment::Invariance:
        return "invariance";
    case Experiment::DisentangleProbe:
        return "disentangle-probe";
    }
    return "?";
}

inline constexpr std::string_view to_string(Source s) {
    switch (s) {
    case Source::GUE:
        return "GUE";
    case Source::GOE:
        return "GOE";
    case Source::SpinChain:
        return "spin-chain";
    }
    return "?";
}

inline constexpr std::string_view to_string(SelectorKind k) {
    switch (k) {
    case SelectorKind::Central:
        return "central";
    case SelectorKind::Ordinal:
        return "ordinal";
    case SelectorKind::Window:
        return "window";
    }
    return "?";
}

inline constexpr std::string_view to_string(PolicyKind k) {
    return k == PolicyKind::Contiguous ? "contiguous" : "random-subset";
}

namespace detail {

template <class E, std::size_t K>
E parse_enum(std::string_view text, const E (&values)[K], std::string_view what) {
    for (E v : values) {
        if (text == to_string(v)) {
            return v;
        }
    }
    throw ConfigError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

} // namespace detail

inline Experiment parse_experiment(std::string_view s) {
    constexpr Experiment all[] = {Experiment::Fig1,         Experiment::Fig2,        Experiment::Checks,
                                  Experiment::PairCorrelationCheck,     Experiment::MomentsCheck, Experiment::SpinSpacing,
                                  Experiment::Invariance,   Experiment::DisentangleProbe};
    return detail::parse_enum(s, all, "experiment");
}

inline Source parse_source(std::string_view s) {
    if (s == "gue") {
        return Source::GUE;
    }
    if (s == "goe") {
        return Source::GOE;
    }
    if (s == "spin" || s == "spinchain" || s == "spin_chain") {
        return Source::SpinChain;
    }
    constexpr Source all[] = {Source::GUE, Source::GOE, Source::SpinChain};
    return detail::parse_enum(s, all, "ensemble");
}

inline SelectorKind parse_selector_kind(std::string_view s) {
    constexpr SelectorKind all[] = {SelectorKind::Central, SelectorKind::Ordinal, SelectorKind::Window};
    return detail::parse_enum(s, all, "eigenstate selector");
}

inline PolicyKind parse_policy_kind(std::string_view s) {
    constexpr PolicyKind all[] = {PolicyKind::Contiguous, PolicyKind::RandomSubset};
    return detail::parse_enum(s, all, "subsystem policy");
}

inline EnsembleClass ensemble_class_of(Source s) {
    if (s == Source::SpinChain) {
        throw ConfigError("spin-chain is not a random-matrix class");
    }
    return s == Source::GUE ? EnsembleClass::GUE : EnsembleClass::GOE;
}

/// Fault injected into the state sampler, for testing that checks can fail.
inline constexpr std::string_view kFaultUnnormalizedSampler = "unnormalized-sampler";

struct ExperimentConfig {
    Experiment experiment = Experiment::Fig1;
    std::vector<Source> ensembles;  ///< empty: experiment default
    std::vector<int> n_values;      ///< empty: experiment default
    std::size_t samples = 100;
    std::uint64_t master_seed = 1;
    double coupling = 1.0; ///< J
    double field = 1.0;    ///< h

    SelectorKind selector = SelectorKind::Central;
    std::size_t selector_ordinal = 1;
    double window_center = 0.0;
    double window_width = 0.0;

    PolicyKind subsystem_policy = PolicyKind::Contiguous;

    std::size_t moment_samples = 5000;
    std::size_t pair_samples = 1000;
    std::size_t vcm_samples = 1000;
    std::size_t invariance_samples = 500;
    std::size_t spacing_realizations = 20;
    double spacing_window = 0.5;
    int spacing_bins = 40;

    InvarianceStatistic invariance_statistic = InvarianceStatistic::MeanPurity;
    int purity_sites = 3;
    int final_sites = 0;
    bool random_local_basis = false;

    StateFamily family = StateFamily::Chaotic;
    int max_ops = 0; ///< 0: N

    std::vector<std::string> expected_failures;
    std::string fault; ///< empty or kFaultUnnormalizedSampler

    std::string out_dir = "out";
    unsigned threads = 1;

    friend bool operator==(const ExperimentConfig &, const ExperimentConfig &) = default;
};

/// N values used when the config leaves them empty.
inline std::vector<int> default_n_values(Experiment e) {
    switch (e) {
    case Experiment::Fig1:
        return {4, 6, 8, 10, 12};
    case Experiment::Fig2:
        return {12};
    case Experiment::Checks:
    case Experiment::SpinSpacing:
        return {10};
    case Experiment::PairCorrelationCheck:
        return {6, 8};
    case Experiment::MomentsCheck:
        return {2, 4, 6};
    case Experiment::Invariance:
        return {8};
    case Experiment::DisentangleProbe:
        return {10};
    }
    return {};
}

inline std::vector<Source> default_ensembles(Experiment e) {
    switch (e) {
    case Experiment::Fig1:
        return {Source::GUE, Source::SpinChain};
    case Experiment::Fig2:
        return {Source::GUE, Source::GOE, Source::SpinChain};
    case Experiment::SpinSpacing:
        return {Source::SpinChain};
    default:
        return {Source::GUE, Source::GOE};
    }
}

inline std::vector<int> n_values_of(const ExperimentConfig &c) {
    return c.n_values.empty() ? default_n_values(c.experiment) : c.n_values;
}

inline std::vector<Source> ensembles_of(const ExperimentConfig &c) {
    return c.ensembles.empty() ? default_ensembles(c.experiment) : c.ensembles;
}

/// Throws ConfigError on the first invalid field. Runs before any computation.
inline void validate(const ExperimentConfig &c) {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    const auto ns = n_values_of(c);
    const auto ens = ensembles_of(c);
    if (ns.empty()) {
        fail("no system sizes given");
    }
    const bool uses_spin = std::find(ens.begin(), ens.end(), Source::SpinChain) != ens.end() ||
                           c.experiment == Experiment::SpinSpacing || c.experiment == Experiment::Checks;
    for (int n : ns) {
        if (n < 1) {
            fail("system size must be >= 1, got " + std::to_string(n));
        }
        if (n > max_state_sites()) {
            fail("N = " + std::to_string(n) + " exceeds the state-vector cap " + std::to_string(max_state_sites()));
        }
        if (uses_spin && (c.experiment == Experiment::Fig1 || c.experiment == Experiment::Fig2 ||
                          c.experiment == Experiment::SpinSpacing || c.experiment == Experiment::Checks)) {
            if (n > max_dense_sites()) {
                fail("N = " + std::to_string(n) + " exceeds the diagonalization cap " +
                     std::to_string(max_dense_sites()));
            }
            if (n < 2) {
                fail("spin chain needs N >= 2");
            }
        }
    }
    if (c.samples < 1) {
        fail("samples must be >= 1");
    }
    if (c.moment_samples < 2 || c.pair_samples < 2 || c.vcm_samples < 2 || c.invariance_samples < 2) {
        fail("check sample counts must be >= 2");
    }
    if (!std::isfinite(c.coupling) || !std::isfinite(c.field)) {
        fail("J and h must be finite");
    }
    if (c.selector == SelectorKind::Ordinal && c.selector_ordinal < 1) {
        fail("eigenstate ordinal is 1-based");
    }
    if (c.selector == SelectorKind::Window && !(c.window_width > 0.0)) {
        fail("energy window width must be positive");
    }
    if (c.spacing_realizations < 1) {
        fail("spacing needs at least one realization");
    }
    if (!(c.spacing_window > 0.0 && c.spacing_window <= 1.0)) {
        fail("spacing window fraction must lie in (0, 1]");
    }
    if (c.spacing_bins < 1) {
        fail("histogram needs at least one bin");
    }
    if (c.purity_sites < 1) {
        fail("purity subsystem needs at least one site");
    }
    if (c.final_sites < 0 || c.max_ops < 0) {
        fail("site counts must be non-negative");
    }
    if (!c.fault.empty() && c.fault != kFaultUnnormalizedSampler) {
        fail("unknown fault '" + c.fault + "'");
    }
    if (c.out_dir.empty()) {
        fail("output directory must be set");
    }
    if (c.threads < 1) {
        fail("threads must be >= 1");
    }
    if (c.experiment == Experiment::Fig2 && ns.size() != 1) {
        fail("fig2 uses a single system size");
    }
}

// ---------------------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json to_json(const ExperimentConfig &c) {
    nlohmann::ordered_json j;
    j["experiment"] = to_string(c.experiment);
    auto ens = nlohmann::ordered_json::array();
    for (Source s : c.ensembles) {
        ens.push_back(to_string(s));
    }
    j["ensembles"] = ens;
    j["n_values"] = c.n_values;
    j["samples"] = c.samples;
    j["master_seed"] = c.master_seed;
    j["J"] = c.coupling;
    j["h"] = c.field;
    j["selector"] = {{"kind", to_string(c.selector)},
                     {"ordinal", c.selector_ordinal},
                     {"window_center", c.window_center},
                     {"window_width", c.window_width}};
    j["subsystem_policy"] = to_string(c.subsystem_policy);
    j["moment_samples"] = c.moment_samples;
    j["pair_samples"] = c.pair_samples;
    j["vcm_samples"] = c.vcm_samples;
    j["invariance_samples"] = c.invariance_samples;
    j["spacing_realizations"] = c.spacing_realizations;
    j["spacing_window"] = c.spacing_window;
    j["spacing_bins"] = c.spacing_bins;
    j["invariance_statistic"] = to_string(c.invariance_statistic);
    j["purity_sites"] = c.purity_sites;
    j["final_sites"] = c.final_sites;
    j["random_local_basis"] = c.random_local_basis;
    j["family"] = to_string(c.family);
    j["max_ops"] = c.max_ops;
    j["expected_failures"] = c.expected_failures;
    j["fault"] = c.fault;
    j["out_dir"] = c.out_dir;
    j["threads"] = c.threads;
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::ordered_json &j) {
    ExperimentConfig c;
    try {
        c.experiment = parse_experiment(j.at("experiment").get<std::string>());
        for (const auto &e : j.at("ensembles")) {
            c.ensembles.push_back(parse_source(e.get<std::string>()));
        }
        c.n_values = j.at("n_values").get<std::vector<int>>();
        c.samples = j.at("samples").get<std::size_t>();
        c.master_seed = j.at("master_seed").get<std::uint64_t>();
        c.coupling = j.at("J").get<double>();
        c.field = j.at("h").get<double>();
        const auto &sel = j.at("selector");
        c.selector = parse_selector_kind(sel.at("kind").get<std::string>());
        c.selector_ordinal = sel.at("ordinal").get<std::size_t>();
        c.window_center = sel.at("window_center").get<double>();
        c.window_width = sel.at("window_width").get<double>();
        c.subsystem_policy = parse_policy_kind(j.at("subsystem_policy").get<std::string>());
        c.moment_samples = j.at("moment_samples").get<std::size_t>();
        c.pair_samples = j.at("pair_samples").get<std::size_t>();
        c.vcm_samples = j.at("vcm_samples").get<std::size_t>();
        c.invariance_samples = j.at("invariance_samples").get<std::size_t>();
        c.spacing_realizations = j.at("spacing_realizations").get<std::size_t>();
        c.spacing_window = j.at("spacing_window").get<double>();
        c.spacing_bins = j.at("spacing_bins").get<int>();
        c.invariance_statistic = parse_invariance_statistic(j.at("invariance_statistic").get<std::string>());
        c.purity_sites = j.at("purity_sites").get<int>();
        c.final_sites = j.at("final_sites").get<int>();
        c.random_local_basis = j.at("random_local_basis").get<bool>();
        c.family = parse_state_family(j.at("family").get<std::string>());
        c.max_ops = j.at("max_ops").get<int>();
        c.expected_failures = j.at("expected_failures").get<std::vector<std::string>>();
        c.fault = j.at("fault").get<std::string>();
        c.out_dir = j.at("out_dir").get<std::string>();
        c.threads = j.at("threads").get<unsigned>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("malformed configuration JSON: ") + e.what());
    }
    return c;
}

} // namespace chaoscorr::harness
