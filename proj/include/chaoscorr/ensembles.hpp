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
 * Random-matrix eigenstates (GUE / GOE) and their closed-form ensemble averages.
 *
 * Eigenvectors of GUE (GOE) matrices are uniformly distributed on the complex (real) unit
 * sphere, so sample_state draws i.i.d. Gaussians and normalizes them. The slower
 * sample_state_via_matrix path diagonalizes a full random matrix and exists to cross-check
 * that equivalence.
 */

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/random.hpp"
#include "chaoscorr/state.hpp"

namespace chaoscorr {

enum class EnsembleClass { GUE, GOE };

/// q = 0 for GUE, 1 for GOE.
inline constexpr int symmetry_index(EnsembleClass c) { return c == EnsembleClass::GOE ? 1 : 0; }

inline constexpr std::string_view to_string(EnsembleClass c) {
    return c == EnsembleClass::GOE ? "GOE" : "GUE";
}

inline EnsembleClass parse_ensemble_class(std::string_view s) {
    if (s == "GUE" || s == "gue") {
        return EnsembleClass::GUE;
    }
    if (s == "GOE" || s == "goe") {
        return EnsembleClass::GOE;
    }
    throw ConfigError("unknown ensemble class '" + std::string(s) + "'");
}

inline constexpr int kMaxMatrixSamplerSites = 8;

/// Unnormalized i.i.d. Gaussian amplitudes (complex for GUE, real for GOE).
inline std::vector<Complex> gaussian_amplitudes(EnsembleClass cls, int n_sites, SampleSeed seed) {
    require_state_cap(n_sites);
    Rng rng = make_stream(seed, StreamDomain::State);
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(dimension_of(n_sites));
    if (cls == EnsembleClass::GUE) {
        for (auto &c : amps) {
            const double re = normal(rng);
            const double im = normal(rng);
            c = Complex(re, im);
        }
    } else {
        for (auto &c : amps) {
            c = Complex(normal(rng), 0.0);
        }
    }
    return amps;
}

/// A chaotic eigenstate of the given class, uniform on the unit sphere. Deterministic in
/// `seed`.
inline StateVector sample_state(EnsembleClass cls, int n_sites, SampleSeed seed) {
    return StateVector::normalized(n_sites, gaussian_amplitudes(cls, n_sites, seed),
                                   cls == EnsembleClass::GOE);
}

/// Draws a full d x d GUE/GOE matrix, diagonalizes it and returns a uniformly chosen
/// eigenvector. Only meant for validating sample_state, hence the N <= 8 cap.
inline StateVector sample_state_via_matrix(EnsembleClass cls, int n_sites, SampleSeed seed) {
    require_state_cap(n_sites);
    if (n_sites > kMaxMatrixSamplerSites) {
        throw ConfigError("matrix sampler is limited to N <= " + std::to_string(kMaxMatrixSamplerSites));
    }
    const auto d = static_cast<Eigen::Index>(dimension_of(n_sites));
    Rng rng = make_stream(seed, StreamDomain::RandomMatrix);
    std::normal_distribution<double> normal;

    std::vector<Complex> amps(static_cast<std::size_t>(d));
    std::uniform_int_distribution<Eigen::Index> pick(0, d - 1);
    if (cls == EnsembleClass::GUE) {
        Eigen::MatrixXcd a(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                const double re = normal(rng);
                const double im = normal(rng);
                a(i, j) = Complex(re, im);
            }
        }
        const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        const Eigen::Index k = pick(rng);
        for (Eigen::Index i = 0; i < d; ++i) {
            amps[static_cast<std::size_t>(i)] = es.eigenvectors()(i, k);
        }
        return StateVector::normalized(n_sites, std::move(amps), false);
    }
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            a(i, j) = normal(rng);
        }
    }
    const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::Index k = pick(rng);
    for (Eigen::Index i = 0; i < d; ++i) {
        amps[static_cast<std::size_t>(i)] = Complex(es.eigenvectors()(i, k), 0.0);
    }
    return StateVector::normalized(n_sites, std::move(amps), true);
}

namespace detail {
inline void require_dimension(double d) {
    if (!(d >= 2.0)) {
        throw Error("Hilbert-space dimension must be >= 2");
    }
}
inline void require_q(int q) {
    if (q != 0 && q != 1) {
        throw Error("q must be 0 (GUE) or 1 (GOE)");
    }
}
} // namespace detail

/// Mean of |c_i|^2: 1/d.
inline double predicted_moment2(double d) {
    detail::require_dimension(d);
    return 1.0 / d;
}

/// Mean of |c_i|^4: (2+q) / (d(d+1+q)).
inline double predicted_moment4(double d, int q) {
    detail::require_dimension(d);
    detail::require_q(q);
    return (2.0 + q) / (d * (d + 1.0 + q));
}

/// Mean of |c_i|^2 |c_j|^2 for i != j: 1 / (d(d+1+q)).
inline double predicted_cross_moment(double d, int q) {
    detail::require_dimension(d);
    detail::require_q(q);
    return 1.0 / (d * (d + 1.0 + q));
}

/// Mean diagonal element of the variance-covariance matrix, 2^N / (2^N + 1 + q). The
/// mean off-diagonal element is 0.
///
/// For real (GOE) states <sigma_y> vanishes identically, so the yy diagonal entries are
/// exactly 1; the prediction applies to the x and z entries.
inline double predicted_vcm_element(int n_sites, int q) {
    if (n_sites < 1) {
        throw Error("n_sites must be >= 1");
    }
    detail::require_q(q);
    const double d = std::ldexp(1.0, n_sites);
    return d / (d + 1.0 + q);
}

/// Mean of |<sigma_a(l) sigma_b(l')>|^2 for l != l': (1+q) / (2^N + 1 + q).
///
/// For real (GOE) states the strings with a single sigma_y have identically zero
/// expectation; the prediction applies to the five real-symmetric axis pairs.
inline double predicted_sq_correlation(int n_sites, int q) {
    if (n_sites < 2) {
        throw Error("two-point correlations need n_sites >= 2");
    }
    detail::require_q(q);
    const double d = std::ldexp(1.0, n_sites);
    return (1.0 + q) / (d + 1.0 + q);
}

/// Mean purity of an N_A-site subsystem: (d_A + d_B + q) / (d_A d_B + 1 + q).
inline double predicted_purity(int n_a_sites, int n_b_sites, int q) {
    if (n_a_sites < 1 || n_b_sites < 1) {
        throw Error("both subsystems need at least one site");
    }
    detail::require_q(q);
    const double da = std::ldexp(1.0, n_a_sites);
    const double db = std::ldexp(1.0, n_b_sites);
    return (da + db + q) / (da * db + 1.0 + q);
}

/// Leading large-dimension form of predicted_purity: (1/d_A)(1 + 2^-dN) with
/// d_A the smaller factor and dN = |N_B - N_A|.
inline double predicted_purity_leading(int n_a_sites, int n_b_sites) {
    if (n_a_sites < 1 || n_b_sites < 1) {
        throw Error("both subsystems need at least one site");
    }
    const int small = std::min(n_a_sites, n_b_sites);
    const int delta = std::abs(n_b_sites - n_a_sites);
    return std::ldexp(1.0, -small) * (1.0 + std::ldexp(1.0, -delta));
}

} // namespace chaoscorr
