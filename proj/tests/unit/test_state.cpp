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
#include <numeric>
#include <vector>

#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/state.hpp"
#include "oracle.hpp"

namespace chaoscorr {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

StateVector bell_state() {
    std::vector<Complex> a(4);
    a[0] = kInvSqrt2;
    a[3] = kInvSqrt2;
    return StateVector(2, a, true);
}

TEST(StateVector, RejectsWrongLengthAndNorm) {
    EXPECT_THROW(StateVector(2, std::vector<Complex>(3)), Error);
    EXPECT_THROW(StateVector(1, std::vector<Complex>{1.0, 1.0}), Error);
    EXPECT_THROW(StateVector(1, std::vector<Complex>{Complex(0.0, 1.0), 0.0}, true), Error);
    EXPECT_NO_THROW(StateVector(1, std::vector<Complex>{Complex(0.0, 1.0), 0.0}));
}

TEST(StateVector, CapIsAConfigError) {
    EXPECT_THROW(StateVector::basis_state(max_state_sites() + 1, 0), ConfigError);
    EXPECT_THROW(StateVector::basis_state(0, 0), ConfigError);
}

TEST(StateVector, NormalizedRescales) {
    const auto s = StateVector::normalized(1, {3.0, 4.0}, true);
    EXPECT_NEAR(s[0].real(), 0.6, 1e-15);
    EXPECT_NEAR(s[1].real(), 0.8, 1e-15);
    EXPECT_THROW(StateVector::normalized(1, {0.0, 0.0}), Error);
}

TEST(PauliString, RejectsRepeatedSite) {
    EXPECT_THROW((PauliString{{1, Axis::X}, {1, Axis::Z}}), Error);
    EXPECT_THROW((PauliString{{0, Axis::X}}), Error);
}

TEST(PauliExpectation, ProductEigenstate) {
    const auto up = StateVector::basis_state(2, 0);
    EXPECT_DOUBLE_EQ(pauli_expectation(up, PauliString{{1, Axis::Z}, {2, Axis::Z}}).real(), 1.0);
}

TEST(PauliExpectation, BellXX) {
    EXPECT_NEAR(pauli_expectation(bell_state(), PauliString{{1, Axis::X}, {2, Axis::X}}).real(), 1.0, 1e-15);
    EXPECT_NEAR(pauli_expectation(bell_state(), PauliString{{1, Axis::Y}, {2, Axis::Y}}).real(), -1.0, 1e-15);
}

TEST(PauliExpectation, EmptyStringIsIdentity) {
    const auto s = sample_state(EnsembleClass::GUE, 3, {1, 0});
    EXPECT_NEAR(pauli_expectation(s, PauliString{}).real(), 1.0, 1e-12);
}

TEST(PauliExpectation, SiteOutOfRangeThrows) {
    const auto s = sample_state(EnsembleClass::GUE, 3, {1, 0});
    EXPECT_THROW(pauli_expectation(s, PauliString{{4, Axis::X}}), Error);
}

TEST(PauliExpectation, MatchesDenseOracleN3) {
    const auto s = sample_state(EnsembleClass::GUE, 3, {11, 0});
    const Complex fast = pauli_expectation(s, PauliString{{2, Axis::Y}});
    const Complex slow = oracle::expectation(s, oracle::pauli_string(3, {{2, Axis::Y}}));
    EXPECT_NEAR(std::abs(fast - slow), 0.0, 1e-10);
    EXPECT_LT(std::abs(fast.imag()), 1e-10);
}

TEST(PauliExpectation, AllStringsMatchOracleUpToFourSites) {
    for (int n = 1; n <= 4; ++n) {
        const auto s = sample_state(EnsembleClass::GUE, n, {5, static_cast<std::uint64_t>(n)});
        // every string: base-4 digit per site, 0 = identity
        int total = 1;
        for (int k = 0; k < n; ++k) {
            total *= 4;
        }
        for (int code = 0; code < total; ++code) {
            std::vector<LocalObservable> f;
            std::vector<std::pair<int, Axis>> g;
            int c = code;
            for (int l = 1; l <= n; ++l, c /= 4) {
                if (c % 4 != 0) {
                    f.push_back({l, static_cast<Axis>(c % 4 - 1)});
                    g.emplace_back(l, static_cast<Axis>(c % 4 - 1));
                }
            }
            const Complex fast = pauli_expectation(s, PauliString(f));
            const Complex slow = oracle::expectation(s, oracle::pauli_string(n, g));
            ASSERT_NEAR(std::abs(fast - slow), 0.0, 1e-10) << "n=" << n << " code=" << code;
            ASSERT_LT(std::abs(fast.imag()), 1e-10);
            ASSERT_LE(std::abs(fast.real()), 1.0 + 1e-10);
        }
    }
}

TEST(ApplyPauli, MatchesOracle) {
    const auto s = sample_state(EnsembleClass::GUE, 4, {3, 3});
    const PauliString p{{1, Axis::Y}, {3, Axis::X}, {4, Axis::Z}};
    const auto out = apply_pauli(s, p);
    const Eigen::VectorXcd ref = oracle::pauli_string(4, {{1, Axis::Y}, {3, Axis::X}, {4, Axis::Z}}) *
                                 oracle::to_vector(s);
    for (std::size_t i = 0; i < out.size(); ++i) {
        EXPECT_NEAR(std::abs(out[i] - ref(static_cast<Eigen::Index>(i))), 0.0, 1e-12);
    }
}

TEST(PartialTrace, ProductState) {
    const auto rho = partial_trace(StateVector::basis_state(3, 0), {1});
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(rho.matrix()(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.0, 1e-15);
}

TEST(PartialTrace, BellIsMaximallyMixed) {
    const auto rho = partial_trace(bell_state(), {1});
    EXPECT_TRUE(rho.matrix().isApprox(0.5 * Eigen::MatrixXcd::Identity(2, 2), 1e-14));
}

TEST(PartialTrace, MatchesNaiveDoubleSum) {
    const auto s = sample_state(EnsembleClass::GUE, 4, {21, 0});
    const auto rho = partial_trace(s, {2, 4});
    const Eigen::MatrixXcd ref = oracle::naive_partial_trace(s, {2, 4});
    EXPECT_LT((rho.matrix() - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, KeepOrderDefinesLocalBits) {
    const auto s = sample_state(EnsembleClass::GUE, 4, {21, 1});
    for (const std::vector<int> &keep : {std::vector<int>{3, 1}, {4, 2, 1}, {2}, {1, 2, 3, 4}, {4, 3, 2, 1}}) {
        const auto rho = partial_trace(s, keep);
        EXPECT_LT((rho.matrix() - oracle::naive_partial_trace(s, keep)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PartialTrace, RejectsBadSiteLists) {
    const auto s = sample_state(EnsembleClass::GUE, 3, {1, 0});
    EXPECT_THROW(partial_trace(s, {1, 1}), Error);
    EXPECT_THROW(partial_trace(s, {4}), Error);
    EXPECT_THROW(partial_trace(s, std::vector<int>{}), Error);
}

TEST(DensityMatrix, ValidatesInvariants) {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.5, 0.1, 0.2, 0.5;
    EXPECT_THROW(DensityMatrix(1, bad), Error);
    EXPECT_THROW(DensityMatrix(1, Eigen::MatrixXcd::Identity(2, 2)), Error);
    Eigen::MatrixXcd negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    EXPECT_THROW(DensityMatrix(1, negative), Error);
}

TEST(Purity, TrivialCases) {
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
    pure(0, 0) = 1.0;
    EXPECT_DOUBLE_EQ(purity(DensityMatrix(1, pure)), 1.0);
    EXPECT_DOUBLE_EQ(purity(DensityMatrix(1, 0.5 * Eigen::MatrixXcd::Identity(2, 2))), 0.5);
}

TEST(Purity, EqualsSumOfSquaredEigenvalues) {
    const auto s = sample_state(EnsembleClass::GUE, 6, {8, 0});
    const auto rho = partial_trace(s, {1, 2, 3});
    const Eigen::VectorXd ev = rho.eigenvalues();
    EXPECT_NEAR(purity(rho), ev.squaredNorm(), 1e-10);
    EXPECT_GE(rho.min_eigenvalue(), -1e-10);
}

TEST(PurityDirect, ProductAndBell) {
    const auto p = StateVector::basis_state(4, 0b1010);
    for (const std::vector<int> &keep : {std::vector<int>{1}, {2, 3}, {1, 2, 4}}) {
        EXPECT_NEAR(purity_direct(p, keep), 1.0, 1e-15);
    }
    EXPECT_NEAR(purity_direct(bell_state(), {2}), 0.5, 1e-15);
}

TEST(PurityDirect, MatchesExplicitPathN10) {
    const auto s = sample_state(EnsembleClass::GUE, 10, {9, 0});
    const auto keep = leading_sites(5);
    EXPECT_NEAR(purity_direct(s, keep), purity(partial_trace(s, keep)), 1e-12);
    const std::vector<int> scattered{2, 5, 7, 8, 10, 1, 3};
    EXPECT_NEAR(purity_direct(s, scattered), purity(partial_trace(s, scattered)), 1e-12);
}

TEST(PurityDirect, SchmidtSymmetry) {
    for (std::uint64_t k = 0; k < 5; ++k) {
        const auto s = sample_state(k % 2 ? EnsembleClass::GOE : EnsembleClass::GUE, 7, {4, k});
        const std::vector<int> a{1, 4, 6};
        EXPECT_NEAR(purity(partial_trace(s, a)), purity(partial_trace(s, complement_sites(a, 7))), 1e-10);
    }
}

TEST(CatState, Amplitudes) {
    const auto c1 = make_cat_state(1);
    EXPECT_DOUBLE_EQ(c1[0].real(), kInvSqrt2);
    EXPECT_DOUBLE_EQ(c1[1].real(), kInvSqrt2);
    const auto c3 = make_cat_state(3);
    for (std::size_t i = 0; i < 8; ++i) {
        EXPECT_DOUBLE_EQ(std::abs(c3[i]), (i == 0 || i == 7) ? kInvSqrt2 : 0.0);
    }
    const auto c4 = make_cat_state(4);
    for (int l = 1; l <= 4; ++l) {
        EXPECT_NEAR(purity_direct(c4, {l}), 0.5, 1e-15);
    }
}

TEST(StateVector, NormPreservedBySampling) {
    for (int n = 1; n <= 10; ++n) {
        for (auto cls : {EnsembleClass::GUE, EnsembleClass::GOE}) {
            EXPECT_NEAR(sample_state(cls, n, {2, 0}).norm_squared(), 1.0, 1e-10);
        }
    }
}

} // namespace
} // namespace chaoscorr
