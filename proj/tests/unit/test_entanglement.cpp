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
#include <vector>

#include "chaoscorr/entanglement.hpp"

namespace chaoscorr {
namespace {

std::vector<int> all_cuts(int n) {
    std::vector<int> m;
    for (int k = 1; k < n; ++k) {
        m.push_back(k);
    }
    return m;
}

TEST(PurityBound, Values) {
    EXPECT_DOUBLE_EQ(purity_bound(3, 12), 1.0 / 8.0);
    EXPECT_DOUBLE_EQ(purity_bound(7, 12), 1.0 / 32.0);
    EXPECT_DOUBLE_EQ(purity_bound(6, 12), 1.0 / 64.0);
    EXPECT_DOUBLE_EQ(predicted_purity(6, 6, 0), 2.0 * 64.0 / 4097.0);
    EXPECT_THROW(purity_bound(0, 12), Error);
    EXPECT_THROW(purity_bound(12, 12), Error);
}

TEST(PuritySweep, ProductStatesGiveZero) {
    const auto cuts = all_cuts(6);
    const auto r = purity_sweep([](std::uint64_t i) { return StateVector::basis_state(6, i % 64); }, 6, cuts, 10,
                                SubsystemPolicy::contiguous());
    for (const auto &row : r.per_m) {
        EXPECT_NEAR(row.neg_log2_mean_purity, 0.0, 1e-12);
        EXPECT_FALSE(row.analytic_purity.has_value());
    }
}

TEST(PuritySweep, BoundColumn) {
    const auto cuts = all_cuts(12);
    const auto r = purity_sweep(EnsembleClass::GUE, 12, cuts, 2, 1);
    std::vector<double> bounds;
    for (const auto &row : r.per_m) {
        bounds.push_back(row.bound);
    }
    EXPECT_EQ(bounds, (std::vector<double>{1, 2, 3, 4, 5, 6, 5, 4, 3, 2, 1}));
}

TEST(PuritySweep, GueMidpointAndSingleSite) {
    const std::vector<int> cuts{1, 6};
    const auto r = purity_sweep(EnsembleClass::GUE, 12, cuts, 100, 2026);
    const auto &m1 = r.per_m[0];
    const auto &m6 = r.per_m[1];
    EXPECT_NEAR(*m1.analytic_purity, 2050.0 / 4097.0, 1e-15);
    EXPECT_NEAR(*m6.analytic_neg_log2, std::log2(4097.0 / 128.0), 1e-12);
    EXPECT_NEAR(*m6.analytic_neg_log2, 5.000352, 1e-6);
    EXPECT_LE(std::abs(z_score(m6.purity.mean, *m6.analytic_purity, m6.purity.std_error)), 3.0);
    EXPECT_LE(std::abs(z_score(m1.purity.mean, *m1.analytic_purity, m1.purity.std_error)), 3.0);
    // plotted quantity is -log2 of the averaged purity, not the average of -log2
    EXPECT_DOUBLE_EQ(m6.neg_log2_mean_purity, -std::log2(m6.purity.mean));
    EXPECT_GE(m6.neg_log2_purity.mean, m6.neg_log2_mean_purity - 1e-12); // Jensen
}

TEST(PuritySweep, SampledPuritiesRespectBounds) {
    const int n = 8;
    const auto cuts = all_cuts(n);
    for (auto cls : {EnsembleClass::GUE, EnsembleClass::GOE}) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            const auto s = sample_state(cls, n, {50, i});
            for (int m : cuts) {
                const double p = purity_direct(s, leading_sites(m));
                EXPECT_GE(p, purity_bound(m, n) - 1e-12);
                EXPECT_LE(p, 1.0 + 1e-12);
                EXPECT_NEAR(p, purity_direct(s, complement_sites(leading_sites(m), n)), 1e-10);
            }
        }
    }
}

TEST(PuritySweep, RmtMatchAtEveryCut) {
    const int n = 10;
    const auto cuts = all_cuts(n);
    for (auto cls : {EnsembleClass::GUE, EnsembleClass::GOE}) {
        const auto r = purity_sweep(cls, n, cuts, 200, 51);
        for (const auto &row : r.per_m) {
            EXPECT_LE(std::abs(z_score(row.purity.mean, *row.analytic_purity, row.purity.std_error)), 3.0)
                << to_string(cls) << " m=" << row.m;
            EXPECT_LE(row.neg_log2_mean_purity, row.bound + 1e-9);
        }
    }
}

TEST(PuritySweep, RandomSubsetsAgreeWithContiguous) {
    const int n = 8;
    const auto cuts = all_cuts(n);
    const auto a = purity_sweep(EnsembleClass::GUE, n, cuts, 300, 52, SubsystemPolicy::contiguous());
    const auto b = purity_sweep(EnsembleClass::GUE, n, cuts, 300, 53, SubsystemPolicy::random_subset(9));
    EXPECT_EQ(b.subsystem_policy, "random-subset");
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const double se = std::hypot(a.per_m[k].purity.std_error, b.per_m[k].purity.std_error);
        EXPECT_LE(std::abs(a.per_m[k].purity.mean - b.per_m[k].purity.mean), 3.0 * se) << k;
    }
}

TEST(PuritySweep, ExplicitPolicy) {
    const auto policy = SubsystemPolicy::explicit_sites({{3}, {2, 4}});
    const std::vector<int> cuts{1, 2};
    const auto r = purity_sweep([](std::uint64_t i) { return sample_state(EnsembleClass::GUE, 4, {54, i}); }, 4, cuts,
                                1, policy);
    const auto s = sample_state(EnsembleClass::GUE, 4, {54, 0});
    EXPECT_DOUBLE_EQ(r.per_m[0].purity.mean, purity_direct(s, {3}));
    EXPECT_DOUBLE_EQ(r.per_m[1].purity.mean, purity_direct(s, {2, 4}));
    const std::vector<int> bad{3};
    EXPECT_THROW(purity_sweep([](std::uint64_t i) { return sample_state(EnsembleClass::GUE, 4, {54, i}); }, 4, bad,
                              1, policy),
                 ConfigError);
}

TEST(PuritySweep, InvalidCutsRejected) {
    const std::vector<int> bad{0};
    EXPECT_THROW(purity_sweep(EnsembleClass::GUE, 4, bad, 1, 0), ConfigError);
    const std::vector<int> full{4};
    EXPECT_THROW(purity_sweep(EnsembleClass::GUE, 4, full, 1, 0), ConfigError);
    const std::vector<int> ok{1};
    EXPECT_THROW(purity_sweep(EnsembleClass::GUE, 4, ok, 0, 0), ConfigError);
}

TEST(PuritySweep, ThreadCountDoesNotChangeResults) {
    const auto cuts = all_cuts(8);
    const auto a = purity_sweep(EnsembleClass::GUE, 8, cuts, 64, 55, {}, 1);
    const auto b = purity_sweep(EnsembleClass::GUE, 8, cuts, 64, 55, {}, 4);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        EXPECT_EQ(a.per_m[k].purity.mean, b.per_m[k].purity.mean);
        EXPECT_EQ(a.per_m[k].purity.std, b.per_m[k].purity.std);
    }
}

TEST(PurityAsymptotics, SingleSiteGap) {
    const auto rows = purity_asymptotic_check(12, 0);
    const auto &last = rows.back();
    EXPECT_EQ(last.delta_n, 10);
    // exact: 2 (2 + 2048) / 4097 - 1 = 3 / 4097; leading term 2^-10
    EXPECT_NEAR(last.excess, 3.0 / 4097.0, 1e-15);
    EXPECT_GT(last.excess, 0.5 * std::ldexp(1.0, -10));
    EXPECT_LT(last.excess, 2.0 * std::ldexp(1.0, -10));
}

TEST(PurityAsymptotics, GapShrinksAndExcessTracksLeadingTerm) {
    for (int q : {0, 1}) {
        for (int n : {5, 7, 12}) {
            const auto rows = purity_asymptotic_check(n, q);
            for (std::size_t k = 1; k < rows.size(); ++k) {
                EXPECT_GT(rows[k].delta_n, rows[k - 1].delta_n);
                if (q == 1) {
                    EXPECT_LT(rows[k].relative_gap, rows[k - 1].relative_gap);
                } else {
                    EXPECT_LE(rows[k].relative_gap, rows[k - 1].relative_gap * (1.0 + 1e-12));
                }
            }
            for (const auto &r : rows) {
                if (r.delta_n >= 2) {
                    const double lead = std::ldexp(1.0, -r.delta_n);
                    EXPECT_GT(r.excess, 0.5 * lead);
                    EXPECT_LT(r.excess, 2.0 * lead);
                }
            }
        }
    }
}

TEST(PurityAsymptotics, GueGapIsConstant) {
    // for q = 0 the relative gap is exactly 1 / (d_A d_B) at every cut
    for (const auto &r : purity_asymptotic_check(10, 0)) {
        EXPECT_NEAR(r.relative_gap, std::ldexp(1.0, -10), 1e-15);
    }
}

TEST(PurityAsymptotics, SymmetricCutErrorIsSmall) {
    const auto rows = purity_asymptotic_check(12, 0);
    ASSERT_EQ(rows.front().delta_n, 0);
    EXPECT_LT(rows.front().relative_gap, 1e-3);
    EXPECT_THROW(purity_asymptotic_check(3, 0), Error);
}

TEST(PurityAsymptotics, GoeAboveGue) {
    for (int na = 1; na <= 6; ++na) {
        EXPECT_GT(predicted_purity(na, 12 - na, 1), predicted_purity(na, 12 - na, 0));
    }
}

} // namespace
} // namespace chaoscorr
