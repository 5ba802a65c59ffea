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
 * Purity sweeps over subsystem size and their random-matrix predictions.
 *
 * The plotted quantity is -log2 of the ensemble-averaged purity: purities are averaged
 * first and the logarithm is taken of the mean. The mean of per-sample -log2 purities is
 * stored alongside.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/parallel.hpp"
#include "chaoscorr/random.hpp"
#include "chaoscorr/state.hpp"
#include "chaoscorr/statistics.hpp"

namespace chaoscorr {

/// Which sites form subsystem A for a given size m.
struct SubsystemPolicy {
    enum class Kind {
        Contiguous,   ///< sites 1..m
        RandomSubset, ///< a fresh uniformly random m-subset per sample and m
        Explicit,     ///< sites_by_m[m - 1]
    };
    Kind kind = Kind::Contiguous;
    std::uint64_t seed = 0;                  ///< RandomSubset only
    std::vector<std::vector<int>> sites_by_m; ///< Explicit only

    static SubsystemPolicy contiguous() { return {}; }
    static SubsystemPolicy random_subset(std::uint64_t seed) { return {Kind::RandomSubset, seed, {}}; }
    static SubsystemPolicy explicit_sites(std::vector<std::vector<int>> sites) {
        return {Kind::Explicit, 0, std::move(sites)};
    }

    std::string describe() const {
        switch (kind) {
        case Kind::Contiguous:
            return "contiguous-from-site-1";
        case Kind::RandomSubset:
            return "random-subset";
        case Kind::Explicit:
            return "explicit";
        }
        return "?";
    }

    std::vector<int> sites(int m, int n_sites, std::uint64_t sample_index) const {
        switch (kind) {
        case Kind::Contiguous:
            return leading_sites(m);
        case Kind::RandomSubset: {
            Rng rng = make_stream({seed ^ mix64(static_cast<std::uint64_t>(m)), sample_index}, StreamDomain::Subsystem);
            std::vector<int> all = leading_sites(n_sites);
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(static_cast<std::size_t>(m));
            std::sort(all.begin(), all.end());
            return all;
        }
        case Kind::Explicit: {
            if (m < 1 || static_cast<std::size_t>(m) > sites_by_m.size()) {
                throw ConfigError("explicit subsystem policy has no site list for m = " + std::to_string(m));
            }
            const auto &s = sites_by_m[static_cast<std::size_t>(m - 1)];
            if (static_cast<int>(s.size()) != m) {
                throw ConfigError("explicit site list for m = " + std::to_string(m) + " has the wrong length");
            }
            return s;
        }
        }
        throw ConfigError("unknown subsystem policy");
    }
};

/// Lowest possible purity of an m-site subsystem of an N-site pure state:
/// 2^{-min(m, N-m)}, set by the Schmidt rank.
inline double purity_bound(int m, int n_sites) {
    if (m < 1 || m >= n_sites) {
        throw Error("subsystem size must satisfy 1 <= m < N");
    }
    return std::ldexp(1.0, -std::min(m, n_sites - m));
}

struct PuritySweepRow {
    int m = 0;
    SampleSummary purity;                ///< per-sample Tr rho_m^2
    double neg_log2_mean_purity = 0.0;   ///< -log2 of the averaged purity (plotted quantity)
    SampleSummary neg_log2_purity;       ///< per-sample -log2 Tr rho_m^2
    std::optional<double> analytic_purity;
    std::optional<double> analytic_neg_log2;
    double bound = 0.0;                  ///< min(m, N-m), the largest possible -log2 purity
};

struct PuritySweepResult {
    int n_sites = 0;
    std::string subsystem_policy;
    std::vector<PuritySweepRow> per_m;
};

using StateSource = std::function<StateVector(std::uint64_t sample_index)>;

/// For each m, evaluates Tr rho_m^2 on `samples` states from `source` and aggregates.
/// `q` selects the random-matrix prediction attached to each row (none if empty).
inline PuritySweepResult purity_sweep(const StateSource &source, int n_sites, std::span<const int> m_values,
                                      std::size_t samples, const SubsystemPolicy &policy,
                                      std::optional<int> q = std::nullopt, unsigned threads = 1) {
    if (samples == 0) {
        throw ConfigError("purity sweep needs at least one sample");
    }
    for (int m : m_values) {
        if (m < 1 || m >= n_sites) {
            throw ConfigError("subsystem size m = " + std::to_string(m) + " outside [1, N-1]");
        }
    }
    const auto per_sample = parallel_map(samples, threads, [&](std::size_t i) {
        const StateVector state = source(i);
        if (state.n_sites() != n_sites) {
            throw Error("state source produced the wrong number of sites");
        }
        std::vector<double> purities;
        for (int m : m_values) {
            purities.push_back(purity_direct(state, policy.sites(m, n_sites, i)));
        }
        return purities;
    });

    PuritySweepResult out;
    out.n_sites = n_sites;
    out.subsystem_policy = policy.describe();
    for (std::size_t k = 0; k < m_values.size(); ++k) {
        const int m = m_values[k];
        std::vector<double> p(samples);
        std::vector<double> logs(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            p[i] = per_sample[i][k];
            logs[i] = -std::log2(p[i]);
        }
        PuritySweepRow row;
        row.m = m;
        row.purity = summarize(p);
        row.neg_log2_mean_purity = -std::log2(row.purity.mean);
        row.neg_log2_purity = summarize(logs);
        if (q) {
            row.analytic_purity = predicted_purity(m, n_sites - m, *q);
            row.analytic_neg_log2 = -std::log2(*row.analytic_purity);
        }
        row.bound = std::min(m, n_sites - m);
        out.per_m.push_back(row);
    }
    return out;
}

inline PuritySweepResult purity_sweep(EnsembleClass cls, int n_sites, std::span<const int> m_values,
                                      std::size_t samples, std::uint64_t master_seed,
                                      const SubsystemPolicy &policy = {}, unsigned threads = 1) {
    return purity_sweep([&](std::uint64_t i) { return sample_state(cls, n_sites, {master_seed, i}); }, n_sites,
                        m_values, samples, policy, symmetry_index(cls), threads);
}

struct PurityAsymptoticRow {
    int delta_n = 0;        ///< N_B - N_A >= 0
    int n_a_sites = 0;
    double exact = 0.0;     ///< (d_A + d_B + q) / (d_A d_B + 1 + q)
    double leading = 0.0;   ///< (1/d_A)(1 + 2^{-dN})
    double relative_gap = 0.0; ///< |exact - leading| / exact
    double excess = 0.0;    ///< exact d_A - 1, which approaches 2^{-dN}
};

/// Exact mean purity against its leading expansion for every cut N_A <= N_B of N sites,
/// ordered by increasing dN.
inline std::vector<PurityAsymptoticRow> purity_asymptotic_check(int n_sites, int q) {
    if (n_sites < 4) {
        throw Error("asymptotic check needs N >= 4");
    }
    std::vector<PurityAsymptoticRow> rows;
    for (int na = n_sites / 2; na >= 1; --na) {
        const int nb = n_sites - na;
        PurityAsymptoticRow r;
        r.delta_n = nb - na;
        r.n_a_sites = na;
        r.exact = predicted_purity(na, nb, q);
        r.leading = predicted_purity_leading(na, nb);
        r.relative_gap = std::abs(r.exact - r.leading) / r.exact;
        r.excess = r.exact * std::ldexp(1.0, na) - 1.0;
        rows.push_back(r);
    }
    return rows;
}

} // namespace chaoscorr
