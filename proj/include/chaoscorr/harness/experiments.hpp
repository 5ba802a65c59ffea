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
 * Experiment runners: VCM extremal eigenvalues against N (fig1), purity against subsystem
 * size (fig2), level spacings, invariance and disentangling. Each runner returns plain
 * data; table() gives the CSV layout.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaoscorr/correlations.hpp"
#include "chaoscorr/entanglement.hpp"
#include "chaoscorr/harness/config.hpp"
#include "chaoscorr/harness/io.hpp"
#include "chaoscorr/harness/sources.hpp"
#include "chaoscorr/level_spacing.hpp"
#include "chaoscorr/local_ops.hpp"
#include "chaoscorr/parallel.hpp"
#include "chaoscorr/statistics.hpp"

namespace chaoscorr::harness {

// ---------------------------------------------------------------------------------------
// Extremal VCM eigenvalues against N

struct Fig1Row {
    Source source = Source::GUE;
    int n_sites = 0;
    SampleSummary e_max;
    SampleSummary e_min;
};

struct Fig1Result {
    std::vector<Fig1Row> rows;

    const Fig1Row &row(Source s, int n) const {
        for (const auto &r : rows) {
            if (r.source == s && r.n_sites == n) {
                return r;
            }
        }
        throw Error("no fig1 row for " + std::string(to_string(s)) + " N=" + std::to_string(n));
    }

    CsvTable table() const {
        CsvTable t{{"ensemble", "N", "samples", "e_max_mean", "e_max_std", "e_min_mean", "e_min_std"}, {}};
        for (const auto &r : rows) {
            t.add_row({std::string(to_string(r.source)), std::to_string(r.n_sites), std::to_string(r.e_max.count),
                       format_number(r.e_max.mean), format_number(r.e_max.std), format_number(r.e_min.mean),
                       format_number(r.e_min.std)});
        }
        return t;
    }
};

/// Extremal VCM eigenvalues of one sample. With an energy window the values are averaged
/// over the states in the window.
inline ExtremalEigenvalues fig1_sample(const ExperimentConfig &c, Source source, int n, std::uint64_t seed,
                                       std::uint64_t i) {
    if (source != Source::SpinChain) {
        return extremal_eigenvalues(compute_vcm(sample_state(ensemble_class_of(source), n, {seed, i})));
    }
    const auto states = spin_chain_states(c, n, seed, i);
    if (states.empty()) {
        throw Error("energy window selected no eigenstates");
    }
    ExtremalEigenvalues acc;
    for (const auto &s : states) {
        const auto e = extremal_eigenvalues(compute_vcm(s));
        acc.e_max += e.e_max;
        acc.e_min += e.e_min;
    }
    acc.e_max /= static_cast<double>(states.size());
    acc.e_min /= static_cast<double>(states.size());
    return acc;
}

inline Fig1Result run_fig1(const ExperimentConfig &c) {
    validate(c);
    pin_blas_threads();
    Fig1Result out;
    for (Source source : ensembles_of(c)) {
        for (int n : n_values_of(c)) {
            const std::uint64_t seed = derive_seed(c.master_seed, {1, tag_of(source), static_cast<std::uint64_t>(n)});
            const auto values =
                parallel_map(c.samples, c.threads, [&](std::size_t i) { return fig1_sample(c, source, n, seed, i); });
            std::vector<double> emax(values.size());
            std::vector<double> emin(values.size());
            for (std::size_t i = 0; i < values.size(); ++i) {
                emax[i] = values[i].e_max;
                emin[i] = values[i].e_min;
            }
            out.rows.push_back({source, n, summarize(emax), summarize(emin)});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Purity against subsystem size

/// Allowed relative deviation of the spin-chain curve from the analytic curve for
/// m <= kSpinChainFig2MaxM.
inline constexpr double kSpinChainFig2Tolerance = 0.10;
inline constexpr int kSpinChainFig2MaxM = 4;
inline constexpr double kFig2Sigmas = 3.0;

struct Fig2Row {
    Source source = Source::GUE;
    int m = 0;
    double neg_log2_mean_purity = 0.0;
    double std = 0.0; ///< standard deviation of the per-sample -log2 purity
    std::optional<double> analytic;
    double bound = 0.0;
    SampleSummary purity;
};

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Fig2Result {
    int n_sites = 0;
    std::vector<Fig2Row> rows;
    std::vector<Assertion> assertions;

    bool all_pass() const {
        return std::all_of(assertions.begin(), assertions.end(), [](const Assertion &a) { return a.pass; });
    }

    bool has(Source s) const {
        return std::any_of(rows.begin(), rows.end(), [s](const Fig2Row &r) { return r.source == s; });
    }

    const Fig2Row &row(Source s, int m) const {
        for (const auto &r : rows) {
            if (r.source == s && r.m == m) {
                return r;
            }
        }
        throw Error("no fig2 row for " + std::string(to_string(s)) + " m=" + std::to_string(m));
    }

    CsvTable table() const {
        CsvTable t{{"source", "m", "neg_log2_mean_purity", "std", "analytic", "bound"}, {}};
        for (const auto &r : rows) {
            t.add_row({std::string(to_string(r.source)), std::to_string(r.m), format_number(r.neg_log2_mean_purity),
                       format_number(r.std), format_optional(r.analytic), format_number(r.bound)});
        }
        return t;
    }
};

/// The spin chain is time-reversal symmetric, so it is compared with q = 1.
inline int fig2_q(Source s) { return s == Source::GUE ? 0 : 1; }

inline std::vector<Assertion> fig2_assertions(const Fig2Result &r) {
    std::vector<Assertion> out;
    const int n = r.n_sites;
    for (Source s : {Source::GUE, Source::GOE}) {
        if (!r.has(s)) {
            continue;
        }
        for (int m = 1; m < n; ++m) {
            const auto &row = r.row(s, m);
            const double z = z_score(row.purity.mean, predicted_purity(m, n - m, fig2_q(s)), row.purity.std_error);
            out.push_back({std::string(to_string(s)) + "-analytic-m" + std::to_string(m), std::abs(z) <= kFig2Sigmas,
                           "z = " + format_number(z)});
        }
    }
    if (r.has(Source::GUE) && r.has(Source::GOE)) {
        for (int m = 1; m < n; ++m) {
            const auto &a = r.row(Source::GUE, m).purity;
            const auto &b = r.row(Source::GOE, m).purity;
            const double band = kFig2Sigmas * std::hypot(a.std_error, b.std_error);
            out.push_back({"GUE-GOE-overlap-m" + std::to_string(m), std::abs(a.mean - b.mean) <= band,
                           "|diff| = " + format_number(std::abs(a.mean - b.mean)) + ", band " + format_number(band)});
        }
    }
    if (r.has(Source::SpinChain)) {
        for (int m = 1; m <= std::min(kSpinChainFig2MaxM, n - 1); ++m) {
            const auto &row = r.row(Source::SpinChain, m);
            const double rel = std::abs(row.neg_log2_mean_purity - *row.analytic) / *row.analytic;
            out.push_back({"spin-chain-analytic-m" + std::to_string(m), rel <= kSpinChainFig2Tolerance,
                           "relative deviation " + format_number(rel)});
        }
    }
    return out;
}

inline SubsystemPolicy subsystem_policy_of(const ExperimentConfig &c) {
    if (c.subsystem_policy == PolicyKind::Contiguous) {
        return SubsystemPolicy::contiguous();
    }
    return SubsystemPolicy::random_subset(derive_seed(c.master_seed, {2, 0}));
}

inline Fig2Result run_fig2(const ExperimentConfig &c) {
    validate(c);
    pin_blas_threads();
    const int n = n_values_of(c).front();
    if (n < 2) {
        throw ConfigError("fig2 needs N >= 2");
    }
    std::vector<int> cuts;
    for (int m = 1; m < n; ++m) {
        cuts.push_back(m);
    }
    const SubsystemPolicy policy = subsystem_policy_of(c);
    Fig2Result out;
    out.n_sites = n;
    for (Source source : ensembles_of(c)) {
        const std::uint64_t seed = derive_seed(c.master_seed, {2, tag_of(source), static_cast<std::uint64_t>(n)});
        const auto sweep = purity_sweep([&](std::uint64_t i) { return draw_state(c, source, n, seed, i); }, n, cuts,
                                        c.samples, policy, fig2_q(source), c.threads);
        for (const auto &row : sweep.per_m) {
            out.rows.push_back({source, row.m, row.neg_log2_mean_purity, row.neg_log2_purity.std,
                                row.analytic_neg_log2, row.bound, row.purity});
        }
    }
    out.assertions = fig2_assertions(out);
    return out;
}

// ---------------------------------------------------------------------------------------
// Level spacings of the spin chain

struct SpacingResult {
    int n_sites = 0;
    double coupling = 0.0;
    double field = 0.0;
    std::size_t realizations = 0;
    double window_fraction = 0.5;
    SpacingStatistics stats;
    SpacingHistogram histogram;

    bool goe_closer() const { return stats.ks_distance_goe < stats.ks_distance_poisson; }

    CsvTable table() const {
        CsvTable t{{"N", "J", "h", "realizations", "window_fraction", "spacings", "mean_spacing", "ks_goe",
                    "ks_poisson"},
                   {}};
        t.add_row({std::to_string(n_sites), format_number(coupling), format_number(field),
                   std::to_string(realizations), format_number(window_fraction),
                   std::to_string(stats.unfolded_spacings.size()), format_number(stats.mean_spacing),
                   format_number(stats.ks_distance_goe), format_number(stats.ks_distance_poisson)});
        return t;
    }

    /// Histogram next to bin averages of the two reference densities.
    CsvTable histogram_table() const {
        CsvTable t{{"s_lo", "s_hi", "density", "wigner_surmise", "poisson"}, {}};
        for (std::size_t b = 0; b < histogram.density.size(); ++b) {
            const double lo = histogram.edges[b];
            const double hi = histogram.edges[b + 1];
            const double w = (wigner_surmise_cdf(hi) - wigner_surmise_cdf(lo)) / (hi - lo);
            const double p = (poisson_spacing_cdf(hi) - poisson_spacing_cdf(lo)) / (hi - lo);
            t.add_row({format_number(lo), format_number(hi), format_number(histogram.density[b]), format_number(w),
                       format_number(p)});
        }
        return t;
    }
};

/// Pools the unfolded central-window spacings of `realizations` disorder samples.
inline SpacingResult spin_spacing(int n, double coupling, double field, std::size_t realizations,
                                  std::uint64_t seed, double window_fraction = 0.5, int bins = 40,
                                  unsigned threads = 1) {
    pin_blas_threads();
    const auto per = parallel_map(realizations, threads, [&](std::size_t i) {
        const auto levels = eigenvalues_only(build_hamiltonian(sample_spec(n, coupling, field, {seed, i})));
        return unfolded_spacings(levels, window_fraction);
    });
    std::vector<double> pooled;
    for (const auto &s : per) {
        pooled.insert(pooled.end(), s.begin(), s.end());
    }
    SpacingResult out;
    out.n_sites = n;
    out.coupling = coupling;
    out.field = field;
    out.realizations = realizations;
    out.window_fraction = window_fraction;
    out.stats = spacing_statistics(std::move(pooled));
    out.histogram = spacing_histogram(out.stats.unfolded_spacings, bins, 4.0);
    return out;
}

inline SpacingResult run_spacing(const ExperimentConfig &c) {
    validate(c);
    const int n = n_values_of(c).front();
    return spin_spacing(n, c.coupling, c.field, c.spacing_realizations,
                        derive_seed(c.master_seed, {3, static_cast<std::uint64_t>(n)}), c.spacing_window,
                        c.spacing_bins, c.threads);
}

/// The same pooling applied to levels whose spacings follow the Wigner surmise exactly.
/// Gives the KS distance expected from finite-sample noise and unfolding alone.
inline SpacingStatistics synthetic_wigner_spacing(std::size_t levels_per_sample, std::size_t realizations,
                                                  std::uint64_t seed, double window_fraction = 0.5) {
    std::vector<double> pooled;
    for (std::size_t i = 0; i < realizations; ++i) {
        const auto levels = sample_wigner_levels(levels_per_sample, {seed, i});
        const auto s = unfolded_spacings(levels, window_fraction);
        pooled.insert(pooled.end(), s.begin(), s.end());
    }
    return spacing_statistics(std::move(pooled));
}

// ---------------------------------------------------------------------------------------
// Invariance under measurement

struct InvarianceRun {
    std::vector<InvarianceReport> reports;

    bool all_agree() const {
        return std::all_of(reports.begin(), reports.end(), [](const InvarianceReport &r) { return r.all_agree(); });
    }

    CsvTable table() const {
        CsvTable t{{"ensemble", "statistic", "N_initial", "measurements", "N", "samples", "mean", "std", "se",
                    "predicted", "z", "agree"},
                   {}};
        for (const auto &r : reports) {
            for (const auto &s : r.steps) {
                t.add_row({std::string(to_string(r.ensemble)), std::string(to_string(r.statistic)),
                           std::to_string(r.initial_sites), std::to_string(s.measurements), std::to_string(s.n_sites),
                           std::to_string(s.summary.count), format_number(s.summary.mean),
                           format_number(s.summary.std), format_number(s.summary.std_error),
                           format_number(s.predicted), format_number(s.z), s.agrees ? "true" : "false"});
            }
        }
        return t;
    }
};

inline InvarianceOptions invariance_options(const ExperimentConfig &c, std::uint64_t seed) {
    InvarianceOptions opt;
    opt.statistic = c.invariance_statistic;
    opt.purity_sites = c.purity_sites;
    opt.final_sites = c.final_sites;
    opt.random_local_basis = c.random_local_basis;
    opt.seed = seed;
    opt.threads = c.threads;
    return opt;
}

inline InvarianceRun run_invariance(const ExperimentConfig &c) {
    validate(c);
    InvarianceRun out;
    for (Source source : ensembles_of(c)) {
        if (source == Source::SpinChain) {
            throw ConfigError("invariance runs take GUE or GOE states");
        }
        for (int n : n_values_of(c)) {
            const std::uint64_t seed = derive_seed(c.master_seed, {4, tag_of(source), static_cast<std::uint64_t>(n)});
            out.reports.push_back(
                invariance_experiment(ensemble_class_of(source), n, c.invariance_samples, invariance_options(c, seed)));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Disentangling probe

struct DisentangleRun {
    StateFamily family = StateFamily::Chaotic;
    std::vector<std::pair<int, DisentangleResult>> results; ///< (N, result)

    CsvTable table() const {
        CsvTable t{{"family", "N", "measurements", "n_remaining", "max_deficit", "half_cut_purity",
                    "predicted_half_cut", "disentangled"},
                   {}};
        for (const auto &[n, r] : results) {
            for (const auto &s : r.trajectory) {
                const bool done = r.count && *r.count == s.measurements;
                t.add_row({std::string(to_string(family)), std::to_string(n), std::to_string(s.measurements),
                           std::to_string(s.n_sites), format_number(s.max_deficit), format_number(s.half_cut_purity),
                           format_optional(s.predicted_half_cut), done ? "true" : "false"});
            }
        }
        return t;
    }
};

inline DisentangleRun run_disentangle(const ExperimentConfig &c) {
    validate(c);
    DisentangleRun out;
    out.family = c.family;
    for (int n : n_values_of(c)) {
        const int ops = c.max_ops == 0 ? n : c.max_ops;
        out.results.emplace_back(n, disentangling_cost_probe(c.family, n, ops,
                                                             derive_seed(c.master_seed, {5, static_cast<std::uint64_t>(n)})));
    }
    return out;
}

} // namespace chaoscorr::harness
