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
#include <numbers>
#include <random>
#include <vector>

#include "chaoscorr/level_spacing.hpp"

namespace chaoscorr {
namespace {

TEST(Surmise, DensitiesIntegrateToOne) {
    double w = 0.0;
    double p = 0.0;
    double mean = 0.0;
    const double ds = 1e-4;
    for (double s = 0.5 * ds; s < 20.0; s += ds) {
        w += wigner_surmise_pdf(s) * ds;
        p += poisson_spacing_pdf(s) * ds;
        mean += s * wigner_surmise_pdf(s) * ds;
    }
    EXPECT_NEAR(w, 1.0, 1e-8);
    EXPECT_NEAR(p, 1.0, 1e-8);
    EXPECT_NEAR(mean, 1.0, 1e-8);
    EXPECT_NEAR(wigner_surmise_cdf(1.0), 1.0 - std::exp(-std::numbers::pi / 4.0), 1e-15);
}

TEST(KsDistance, ExactForTinySample) {
    // one point at the median: sup distance is 1/2
    EXPECT_NEAR(ks_distance({std::log(2.0)}, poisson_spacing_cdf), 0.5, 1e-15);
    EXPECT_THROW(ks_distance({}, poisson_spacing_cdf), Error);
}

TEST(Unfolding, EquallySpacedLevelsGiveUnitSpacings) {
    std::vector<double> levels(400);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        levels[i] = 0.37 * static_cast<double>(i) - 5.0;
    }
    const auto s = unfolded_spacings(levels);
    ASSERT_EQ(s.size(), 199U);
    for (double x : s) {
        EXPECT_NEAR(x, 1.0, 1e-9);
    }
}

TEST(Unfolding, SmoothDensityIsRemoved) {
    // levels of a semicircle-like density: E_k = sin(pi (k/n - 1/2)), unit spacing after unfolding
    const std::size_t n = 2000;
    std::vector<double> levels(n);
    for (std::size_t k = 0; k < n; ++k) {
        levels[k] = std::sin(std::numbers::pi * ((static_cast<double>(k) + 0.5) / static_cast<double>(n) - 0.5));
    }
    const auto stats = unfold_and_spacings(levels);
    EXPECT_NEAR(stats.mean_spacing, 1.0, 1e-3);
    for (double x : stats.unfolded_spacings) {
        EXPECT_NEAR(x, 1.0, 1e-3);
    }
}

TEST(Unfolding, RejectsBadInput) {
    std::vector<double> few(100, 0.0);
    for (std::size_t i = 0; i < few.size(); ++i) {
        few[i] = static_cast<double>(i);
    }
    EXPECT_THROW(unfolded_spacings(few, 0.5), Error);
    std::vector<double> unsorted{3.0, 1.0, 2.0};
    EXPECT_THROW(unfolded_spacings(unsorted, 1.0), Error);
    EXPECT_THROW(unfolded_spacings(few, 0.0), Error);
}

TEST(Unfolding, SyntheticWignerLevelsMatchSurmise) {
    const auto levels = sample_wigner_levels(2000, {2024, 0});
    const auto stats = unfold_and_spacings(levels, 1.0);
    EXPECT_NEAR(stats.mean_spacing, 1.0, 0.02);
    EXPECT_LT(stats.ks_distance_goe, 0.03);
    EXPECT_LT(stats.ks_distance_goe, stats.ks_distance_poisson);
    for (double s : stats.unfolded_spacings) {
        EXPECT_GE(s, 0.0);
    }
}

TEST(Unfolding, PoissonLevelsPreferPoisson) {
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> levels(4000);
    double e = 0.0;
    for (auto &x : levels) {
        x = e;
        e += expo(rng);
    }
    const auto stats = unfold_and_spacings(levels);
    EXPECT_LT(stats.ks_distance_poisson, stats.ks_distance_goe);
    EXPECT_LT(stats.ks_distance_poisson, 0.05);
}

TEST(Histogram, NormalizedDensity) {
    const auto levels = sample_wigner_levels(5000, {1, 1});
    const auto s = unfolded_spacings(levels, 1.0);
    const auto h = spacing_histogram(s, 40, 4.0);
    ASSERT_EQ(h.edges.size(), 41U);
    double mass = 0.0;
    for (double d : h.density) {
        mass += d * 0.1;
    }
    EXPECT_NEAR(mass, 1.0, 1e-3);
    EXPECT_THROW(spacing_histogram(s, 0, 4.0), Error);
}

} // namespace
} // namespace chaoscorr
