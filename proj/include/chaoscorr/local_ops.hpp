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
 * Single-site unitaries and projective measurements, and the experiments built on them.
 *
 * After measuring site l the remaining sites are relabelled 1..N-1 in their original
 * order.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/correlations.hpp"
#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/parallel.hpp"
#include "chaoscorr/random.hpp"
#include "chaoscorr/state.hpp"
#include "chaoscorr/statistics.hpp"

namespace chaoscorr {

namespace detail {

inline void require_unitary(const Eigen::Matrix2cd &u) {
    if (!u.allFinite() || (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > kPhysicalTol) {
        throw Error("local operator is not unitary");
    }
}

inline bool is_real_matrix(const Eigen::Matrix2cd &u) { return u.imag().isZero(0.0); }

inline void require_site(int site, int n_sites) {
    if (site < 1 || site > n_sites) {
        throw Error("site " + std::to_string(site) + " outside [1, " + std::to_string(n_sites) + "]");
    }
}

/// Inserts bit `b` at position `pos` of `r`, shifting the higher bits up.
inline std::uint64_t insert_bit(std::uint64_t r, int pos, std::uint64_t b) {
    const std::uint64_t low = r & ((std::uint64_t{1} << pos) - 1);
    return ((r >> pos) << (pos + 1)) | (b << pos) | low;
}

} // namespace detail

/// Applies u to the tensor factor of `site`. The result is real only when both the state
/// and u are real.
inline StateVector apply_local_unitary(const StateVector &state, int site, const Eigen::Matrix2cd &u) {
    detail::require_site(site, state.n_sites());
    detail::require_unitary(u);
    const auto amps = state.amplitudes();
    std::vector<Complex> out(amps.begin(), amps.end());
    const std::uint64_t bit = site_bit(site);
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        out[i] = u(0, 0) * a0 + u(0, 1) * a1;
        out[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    const bool real = state.is_real() && detail::is_real_matrix(u);
    if (real) {
        for (auto &c : out) {
            c = Complex(c.real(), 0.0);
        }
    }
    return StateVector(state.n_sites(), std::move(out), real);
}

/// Haar-random single-qubit unitary (orthogonal when `real`).
inline Eigen::Matrix2cd random_local_basis(Rng &rng, bool real) {
    std::normal_distribution<double> normal;
    Eigen::Matrix2cd q;
    if (real) {
        Eigen::Matrix2d a;
        for (int j = 0; j < 2; ++j) {
            for (int i = 0; i < 2; ++i) {
                a(i, j) = normal(rng);
            }
        }
        Eigen::HouseholderQR<Eigen::Matrix2d> qr(a);
        Eigen::Matrix2d qd = qr.householderQ();
        const Eigen::Matrix2d r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int k = 0; k < 2; ++k) {
            if (r(k, k) < 0.0) {
                qd.col(k) *= -1.0;
            }
        }
        q = qd.cast<Complex>();
    } else {
        Eigen::Matrix2cd a;
        for (int j = 0; j < 2; ++j) {
            for (int i = 0; i < 2; ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                a(i, j) = Complex(re, im) / std::sqrt(2.0);
            }
        }
        Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
        q = qr.householderQ();
        const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int k = 0; k < 2; ++k) {
            const double mag = std::abs(r(k, k));
            if (mag > 0.0) {
                q.col(k) *= r(k, k) / mag;
            }
        }
    }
    return q;
}

enum class MeasurementMode { Sample, ForceZero, ForceOne };

struct MeasurementRecord {
    int site = 0;
    Eigen::Matrix2cd basis = Eigen::Matrix2cd::Identity();
    int outcome = 0;
    double probability = 0.0;             ///< Born probability of `outcome`
    double outcome_probabilities[2] = {0.0, 0.0};
    StateVector post_state;               ///< N-1 sites, relabelled in order
};

/// Smallest probability a forced outcome may have.
inline constexpr double kMinForcedProbability = 1e-12;

namespace detail {

/// Unnormalized slice <b_k|_site |psi> for both outcomes k.
inline std::array<std::vector<Complex>, 2> measurement_slices(const StateVector &state, int site,
                                                              const Eigen::Matrix2cd &basis) {
    const int pos = site - 1;
    const std::size_t half = state.dimension() / 2;
    const auto amps = state.amplitudes();
    std::array<std::vector<Complex>, 2> slice{std::vector<Complex>(half), std::vector<Complex>(half)};
    for (std::uint64_t r = 0; r < half; ++r) {
        const Complex a0 = amps[insert_bit(r, pos, 0)];
        const Complex a1 = amps[insert_bit(r, pos, 1)];
        for (int k = 0; k < 2; ++k) {
            slice[k][r] = std::conj(basis(0, k)) * a0 + std::conj(basis(1, k)) * a1;
        }
    }
    return slice;
}

inline MeasurementRecord finish_measurement(const StateVector &state, int site, const Eigen::Matrix2cd &basis,
                                            std::array<std::vector<Complex>, 2> &slices, int outcome,
                                            const double (&p)[2]) {
    const bool real = state.is_real() && is_real_matrix(basis);
    std::vector<Complex> post = std::move(slices[outcome]);
    const double scale = 1.0 / std::sqrt(p[outcome]);
    for (auto &c : post) {
        c = real ? Complex(c.real() * scale, 0.0) : c * scale;
    }
    MeasurementRecord rec{site, basis, outcome, p[outcome], {p[0], p[1]},
                          StateVector(state.n_sites() - 1, std::move(post), real)};
    return rec;
}

inline void probabilities_of(const std::array<std::vector<Complex>, 2> &slices, double (&p)[2]) {
    for (int k = 0; k < 2; ++k) {
        CompensatedSum acc;
        for (const auto &c : slices[k]) {
            acc.add(std::norm(c));
        }
        p[k] = acc.value();
    }
}

} // namespace detail

/// Measures `site` in the basis whose columns are the outcome vectors, with the outcome
/// fixed by `mode` (ForceZero or ForceOne). Throws when the forced outcome has
/// probability below kMinForcedProbability.
inline MeasurementRecord projective_measure(const StateVector &state, int site, const Eigen::Matrix2cd &basis,
                                            MeasurementMode mode) {
    if (mode == MeasurementMode::Sample) {
        throw Error("sampled measurement needs a random stream");
    }
    if (state.n_sites() < 2) {
        throw Error("measurement needs at least two sites so that a post-measurement state remains");
    }
    detail::require_site(site, state.n_sites());
    detail::require_unitary(basis);
    auto slices = detail::measurement_slices(state, site, basis);
    double p[2];
    detail::probabilities_of(slices, p);
    const int outcome = mode == MeasurementMode::ForceZero ? 0 : 1;
    if (!(p[outcome] >= kMinForcedProbability)) {
        throw Error("forced outcome " + std::to_string(outcome) + " has vanishing probability");
    }
    return detail::finish_measurement(state, site, basis, slices, outcome, p);
}

inline MeasurementRecord projective_measure(const StateVector &state, int site, MeasurementMode mode) {
    return projective_measure(state, site, Eigen::Matrix2cd::Identity(), mode);
}

/// Measures `site` with the outcome drawn from the Born probabilities.
inline MeasurementRecord projective_measure(const StateVector &state, int site, const Eigen::Matrix2cd &basis,
                                            Rng &rng) {
    if (state.n_sites() < 2) {
        throw Error("measurement needs at least two sites so that a post-measurement state remains");
    }
    detail::require_site(site, state.n_sites());
    detail::require_unitary(basis);
    auto slices = detail::measurement_slices(state, site, basis);
    double p[2];
    detail::probabilities_of(slices, p);
    std::uniform_real_distribution<double> u(0.0, p[0] + p[1]);
    int outcome = u(rng) < p[0] ? 0 : 1;
    if (p[outcome] <= 0.0) {
        outcome = 1 - outcome;
    }
    return detail::finish_measurement(state, site, basis, slices, outcome, p);
}

inline MeasurementRecord projective_measure(const StateVector &state, int site, Rng &rng) {
    return projective_measure(state, site, Eigen::Matrix2cd::Identity(), rng);
}

// ---------------------------------------------------------------------------------------
// Invariance of ensemble statistics under measurement

enum class InvarianceStatistic {
    MeanPurity,      ///< Tr rho^2 of the leading `purity_sites` sites
    MeanMoment4,     ///< mean over i of |c_i|^4
    VcmMeanDiagonal, ///< mean VCM diagonal entry (x and z only for real states)
};

inline std::string_view to_string(InvarianceStatistic s) {
    switch (s) {
    case InvarianceStatistic::MeanPurity:
        return "mean-purity";
    case InvarianceStatistic::MeanMoment4:
        return "mean-moment4";
    case InvarianceStatistic::VcmMeanDiagonal:
        return "vcm-mean-diagonal";
    }
    return "?";
}

inline InvarianceStatistic parse_invariance_statistic(std::string_view s) {
    for (auto v : {InvarianceStatistic::MeanPurity, InvarianceStatistic::MeanMoment4,
                   InvarianceStatistic::VcmMeanDiagonal}) {
        if (s == to_string(v)) {
            return v;
        }
    }
    throw ConfigError("unknown invariance statistic '" + std::string(s) + "'");
}

struct InvarianceOptions {
    InvarianceStatistic statistic = InvarianceStatistic::MeanPurity;
    int purity_sites = 3;
    int final_sites = 0; ///< measure down to this many sites; 0 means a single measurement
    bool random_local_basis = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double z_threshold = 3.0;
};

struct InvarianceStep {
    int measurements = 0;
    int n_sites = 0; ///< sites left after `measurements` measurements
    SampleSummary summary;
    double predicted = 0.0;
    double z = 0.0;
    bool agrees = false;
};

struct InvarianceReport {
    EnsembleClass ensemble = EnsembleClass::GUE;
    int initial_sites = 0;
    InvarianceStatistic statistic = InvarianceStatistic::MeanPurity;
    std::vector<InvarianceStep> steps;

    bool all_agree() const {
        return std::all_of(steps.begin(), steps.end(), [](const InvarianceStep &s) { return s.agrees; });
    }
};

namespace detail {

inline double invariance_value(const StateVector &s, const InvarianceOptions &opt) {
    switch (opt.statistic) {
    case InvarianceStatistic::MeanPurity:
        return purity_direct(s, leading_sites(opt.purity_sites));
    case InvarianceStatistic::MeanMoment4: {
        CompensatedSum acc;
        for (const auto &c : s.amplitudes()) {
            const double p = std::norm(c);
            acc.add(p * p);
        }
        return acc.value() / static_cast<double>(s.dimension());
    }
    case InvarianceStatistic::VcmMeanDiagonal: {
        const auto bloch = bloch_vectors(s);
        CompensatedSum acc;
        int count = 0;
        for (int l = 1; l <= s.n_sites(); ++l) {
            for (Axis a : kAxes) {
                if (s.is_real() && a == Axis::Y) {
                    continue;
                }
                const double m = bloch[static_cast<std::size_t>(VarianceCovarianceMatrix::index(l, a))];
                acc.add(1.0 - m * m);
                ++count;
            }
        }
        return acc.value() / count;
    }
    }
    throw Error("unknown invariance statistic");
}

inline double invariance_prediction(int n_sites, int q, const InvarianceOptions &opt) {
    switch (opt.statistic) {
    case InvarianceStatistic::MeanPurity:
        return predicted_purity(opt.purity_sites, n_sites - opt.purity_sites, q);
    case InvarianceStatistic::MeanMoment4:
        return predicted_moment4(std::ldexp(1.0, n_sites), q);
    case InvarianceStatistic::VcmMeanDiagonal:
        return predicted_vcm_element(n_sites, q);
    }
    throw Error("unknown invariance statistic");
}

} // namespace detail

/// Samples N-site states of `cls`, repeatedly measures the last site (sampled outcomes)
/// and compares the chosen statistic of the post-measurement states against the
/// prediction for the reduced number of sites.
inline InvarianceReport invariance_experiment(EnsembleClass cls, int n_sites, std::size_t samples,
                                              const InvarianceOptions &opt) {
    const int final_sites = opt.final_sites == 0 ? n_sites - 1 : opt.final_sites;
    if (samples < 2) {
        throw ConfigError("invariance experiment needs at least two samples");
    }
    require_state_cap(n_sites);
    if (final_sites < 1 || final_sites >= n_sites) {
        throw ConfigError("final site count must satisfy 1 <= final < N");
    }
    if (opt.statistic == InvarianceStatistic::MeanPurity &&
        (opt.purity_sites < 1 || opt.purity_sites >= final_sites)) {
        throw ConfigError("purity subsystem must be smaller than the final number of sites");
    }
    const int q = symmetry_index(cls);
    const int steps = n_sites - final_sites;
    const auto values = parallel_map(samples, opt.threads, [&](std::size_t i) {
        const SampleSeed seed{opt.seed, i};
        Rng outcomes = make_stream(seed, StreamDomain::Measurement);
        Rng bases = make_stream(seed, StreamDomain::LocalBasis);
        StateVector s = sample_state(cls, n_sites, seed);
        std::vector<double> per_step;
        per_step.reserve(static_cast<std::size_t>(steps));
        for (int k = 0; k < steps; ++k) {
            const Eigen::Matrix2cd basis = opt.random_local_basis
                                               ? random_local_basis(bases, cls == EnsembleClass::GOE)
                                               : Eigen::Matrix2cd::Identity();
            s = projective_measure(s, s.n_sites(), basis, outcomes).post_state;
            per_step.push_back(detail::invariance_value(s, opt));
        }
        return per_step;
    });

    InvarianceReport report;
    report.ensemble = cls;
    report.initial_sites = n_sites;
    report.statistic = opt.statistic;
    for (int k = 0; k < steps; ++k) {
        std::vector<double> column(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            column[i] = values[i][static_cast<std::size_t>(k)];
        }
        InvarianceStep step;
        step.measurements = k + 1;
        step.n_sites = n_sites - k - 1;
        step.summary = summarize(column);
        step.predicted = detail::invariance_prediction(step.n_sites, q, opt);
        step.z = z_score(step.summary.mean, step.predicted, step.summary.std_error);
        step.agrees = std::abs(step.z) <= opt.z_threshold;
        report.steps.push_back(step);
    }
    return report;
}

// ---------------------------------------------------------------------------------------
// Disentangling probe

/// A state counts as disentangled when every bipartite purity exceeds 1 - this.
inline constexpr double kDisentangleEpsilon = 1e-6;

/// Largest purity deficit 1 - Tr rho_A^2 over all bipartitions (A, B) with A, B nonempty.
/// Zero for a single site.
inline double max_purity_deficit(const StateVector &state) {
    const int n = state.n_sites();
    double worst = 0.0;
    // A never contains site n, so each cut is visited once.
    const std::uint64_t cuts = std::uint64_t{1} << (n - 1);
    std::vector<int> sites;
    for (std::uint64_t mask = 1; mask < cuts; ++mask) {
        sites.clear();
        for (int l = 1; l < n; ++l) {
            if (mask & site_bit(l)) {
                sites.push_back(l);
            }
        }
        worst = std::max(worst, 1.0 - purity_direct(state, sites));
    }
    return worst;
}

enum class StateFamily { Chaotic, Cat, Product };

inline std::string_view to_string(StateFamily f) {
    switch (f) {
    case StateFamily::Chaotic:
        return "chaotic";
    case StateFamily::Cat:
        return "cat";
    case StateFamily::Product:
        return "product";
    }
    return "?";
}

inline StateFamily parse_state_family(std::string_view s) {
    for (auto f : {StateFamily::Chaotic, StateFamily::Cat, StateFamily::Product}) {
        if (s == to_string(f)) {
            return f;
        }
    }
    throw ConfigError("unknown state family '" + std::string(s) + "'");
}

struct DisentangleStep {
    int measurements = 0;
    int n_sites = 0;
    double max_deficit = 0.0;
    double half_cut_purity = 1.0;             ///< leading floor(n/2) sites, 1 for n = 1
    std::optional<double> predicted_half_cut; ///< GUE prediction, n >= 2
};

struct DisentangleResult {
    std::optional<int> count; ///< empty: not disentangled within max_ops
    std::vector<DisentangleStep> trajectory;
};

/// Measures the last site in the computational basis (sampled outcomes) until all
/// bipartite purities exceed 1 - kDisentangleEpsilon or `max_ops` measurements are spent.
inline DisentangleResult disentangling_cost_probe(StateVector state, int max_ops, std::uint64_t seed) {
    if (max_ops < 0 || max_ops > state.n_sites()) {
        throw ConfigError("max_ops must lie in [0, N]");
    }
    Rng rng = make_stream({seed, 0}, StreamDomain::Measurement);
    DisentangleResult result;
    for (int k = 0;; ++k) {
        DisentangleStep step;
        step.measurements = k;
        step.n_sites = state.n_sites();
        step.max_deficit = max_purity_deficit(state);
        if (state.n_sites() >= 2) {
            const int m = state.n_sites() / 2;
            step.half_cut_purity = purity_direct(state, leading_sites(m));
            step.predicted_half_cut = predicted_purity(m, state.n_sites() - m, 0);
        }
        result.trajectory.push_back(step);
        if (step.max_deficit < kDisentangleEpsilon) {
            result.count = k;
            break;
        }
        if (k == max_ops || state.n_sites() < 2) {
            break;
        }
        state = projective_measure(state, state.n_sites(), rng).post_state;
    }
    return result;
}

inline DisentangleResult disentangling_cost_probe(StateFamily family, int n_sites, int max_ops, std::uint64_t seed) {
    switch (family) {
    case StateFamily::Chaotic:
        return disentangling_cost_probe(sample_state(EnsembleClass::GUE, n_sites, {seed, 0}), max_ops, seed);
    case StateFamily::Cat:
        return disentangling_cost_probe(make_cat_state(n_sites), max_ops, seed);
    case StateFamily::Product:
        return disentangling_cost_probe(StateVector::basis_state(n_sites, 0), max_ops, seed);
    }
    throw ConfigError("unknown state family");
}

} // namespace chaoscorr
