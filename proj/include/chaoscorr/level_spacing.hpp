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
 * Spectral unfolding and nearest-neighbour spacing statistics.
 *
 * Unfolding keeps the central `window_fraction` of the levels, fits the integrated
 * density of states (the staircase E_k -> k) with a degree-9 polynomial and maps every
 * level through the fit, so the unfolded mean spacing is 1.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/random.hpp"

namespace chaoscorr {

inline constexpr std::size_t kMinUnfoldLevels = 64;
inline constexpr int kUnfoldDegree = 9;

/// GOE Wigner surmise (pi/2) s exp(-pi s^2 / 4).
inline double wigner_surmise_pdf(double s) {
    return s <= 0.0 ? 0.0 : 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
}
inline double wigner_surmise_cdf(double s) {
    return s <= 0.0 ? 0.0 : 1.0 - std::exp(-0.25 * std::numbers::pi * s * s);
}
inline double poisson_spacing_pdf(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }
inline double poisson_spacing_cdf(double s) { return s <= 0.0 ? 0.0 : 1.0 - std::exp(-s); }

/// Kolmogorov-Smirnov distance sup |F_empirical - F| of a sample against a continuous CDF.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf &&cdf) {
    if (samples.empty()) {
        throw Error("KS distance of an empty sample");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        worst = std::max({worst, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
    }
    return worst;
}

struct SpacingStatistics {
    std::vector<double> unfolded_spacings;
    double mean_spacing = 0.0;
    double ks_distance_goe = 0.0;
    double ks_distance_poisson = 0.0;
};

/// Unfolded nearest-neighbour spacings of one sorted spectrum.
inline std::vector<double> unfolded_spacings(std::span<const double> eigenvalues, double window_fraction = 0.5,
                                             int degree = kUnfoldDegree) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
        throw Error("window fraction must lie in (0, 1]");
    }
    if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end())) {
        throw Error("eigenvalues must be sorted ascending");
    }
    const std::size_t total = eigenvalues.size();
    const auto kept = static_cast<std::size_t>(std::llround(window_fraction * static_cast<double>(total)));
    if (kept < kMinUnfoldLevels) {
        throw Error("need at least " + std::to_string(kMinUnfoldLevels) + " levels in the window, got " +
                    std::to_string(kept));
    }
    const std::size_t first = (total - kept) / 2;
    const auto levels = eigenvalues.subspan(first, kept);

    const double lo = levels.front();
    const double hi = levels.back();
    if (!(hi > lo)) {
        throw Error("window spectrum is fully degenerate");
    }
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const int cols = std::min<int>(degree, static_cast<int>(kept) - 1) + 1;

    // Chebyshev basis on [-1, 1] keeps the least-squares problem well conditioned.
    const auto rows = static_cast<Eigen::Index>(kept);
    Eigen::MatrixXd basis(rows, cols);
    Eigen::VectorXd staircase(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double x = (levels[static_cast<std::size_t>(i)] - mid) / half;
        basis(i, 0) = 1.0;
        if (cols > 1) {
            basis(i, 1) = x;
        }
        for (int k = 2; k < cols; ++k) {
            basis(i, k) = 2.0 * x * basis(i, k - 1) - basis(i, k - 2);
        }
        staircase[i] = static_cast<double>(first) + static_cast<double>(i);
    }
    const Eigen::VectorXd coeffs = basis.colPivHouseholderQr().solve(staircase);
    const Eigen::VectorXd unfolded = basis * coeffs;

    std::vector<double> spacings(kept - 1);
    for (std::size_t i = 0; i + 1 < kept; ++i) {
        spacings[i] = unfolded[static_cast<Eigen::Index>(i + 1)] - unfolded[static_cast<Eigen::Index>(i)];
    }
    return spacings;
}

/// KS distances of (possibly pooled) unfolded spacings to the Wigner surmise and to the
/// Poisson law.
inline SpacingStatistics spacing_statistics(std::vector<double> spacings) {
    if (spacings.empty()) {
        throw Error("no spacings");
    }
    SpacingStatistics out;
    double sum = 0.0;
    for (double s : spacings) {
        sum += s;
    }
    out.mean_spacing = sum / static_cast<double>(spacings.size());
    out.ks_distance_goe = ks_distance(spacings, wigner_surmise_cdf);
    out.ks_distance_poisson = ks_distance(spacings, poisson_spacing_cdf);
    out.unfolded_spacings = std::move(spacings);
    return out;
}

inline SpacingStatistics unfold_and_spacings(std::span<const double> eigenvalues, double window_fraction = 0.5) {
    return spacing_statistics(unfolded_spacings(eigenvalues, window_fraction));
}

/// A level sequence whose spacings are i.i.d. Wigner-surmise variables (inverse-CDF
/// sampling), starting at 0.
inline std::vector<double> sample_wigner_levels(std::size_t count, SampleSeed seed) {
    Rng rng = make_stream(seed, StreamDomain::Synthetic);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> levels(count);
    double e = 0.0;
    for (auto &level : levels) {
        level = e;
        e += std::sqrt(-4.0 * std::log1p(-uniform(rng)) / std::numbers::pi);
    }
    return levels;
}

/// Histogram of spacings on [0, s_max) with `bins` equal bins, normalized as a density.
struct SpacingHistogram {
    std::vector<double> edges;   ///< bins + 1 values
    std::vector<double> density; ///< bins values
};

inline SpacingHistogram spacing_histogram(std::span<const double> spacings, int bins = 40, double s_max = 4.0) {
    if (bins < 1 || !(s_max > 0.0)) {
        throw Error("invalid histogram layout");
    }
    SpacingHistogram h;
    h.density.assign(static_cast<std::size_t>(bins), 0.0);
    const double width = s_max / bins;
    for (int b = 0; b <= bins; ++b) {
        h.edges.push_back(b * width);
    }
    for (double s : spacings) {
        if (s >= 0.0 && s < s_max) {
            h.density[static_cast<std::size_t>(std::min(bins - 1, static_cast<int>(s / width)))] += 1.0;
        }
    }
    const double norm = spacings.empty() ? 1.0 : static_cast<double>(spacings.size()) * width;
    for (auto &d : h.density) {
        d /= norm;
    }
    return h;
}

} // namespace chaoscorr
