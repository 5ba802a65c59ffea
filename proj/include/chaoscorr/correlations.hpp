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
 * Variance-covariance matrix of single-site Pauli observables, additive-operator
 * fluctuations, and connected multi-point correlations.
 *
 * VCM indexing is site-major: row/column 3(l-1) + axis for site l and axis x=0, y=1, z=2.
 * The local observable normalization is the Pauli one, Tr[sigma_a sigma_b] = 2 delta_ab,
 * so a product state has e_max = 2.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/state.hpp"
#include "chaoscorr/statistics.hpp"

namespace chaoscorr {

class VarianceCovarianceMatrix {
  public:
    VarianceCovarianceMatrix(int n_sites, Eigen::MatrixXcd matrix) : n_sites_(n_sites), matrix_(std::move(matrix)) {
        const auto size = static_cast<Eigen::Index>(3 * n_sites);
        if (matrix_.rows() != size || matrix_.cols() != size) {
            throw Error("VCM of " + std::to_string(n_sites) + " sites must be " + std::to_string(size) + " square");
        }
    }

    static constexpr Eigen::Index index(int site, Axis axis) { return 3 * (site - 1) + axis_index(axis); }

    int n_sites() const noexcept { return n_sites_; }
    const Eigen::MatrixXcd &matrix() const noexcept { return matrix_; }
    Complex operator()(int site, Axis a, int other_site, Axis b) const {
        return matrix_(index(site, a), index(other_site, b));
    }

  private:
    int n_sites_;
    Eigen::MatrixXcd matrix_;
};

/// Single-site expectation values <sigma_a(l)>, indexed [3(l-1) + a].
inline std::vector<double> bloch_vectors(const StateVector &state) {
    const int n = state.n_sites();
    std::vector<double> out(static_cast<std::size_t>(3 * n));
    for (int l = 1; l <= n; ++l) {
        for (Axis a : kAxes) {
            out[static_cast<std::size_t>(VarianceCovarianceMatrix::index(l, a))] =
                pauli_expectation(state, PauliString{{l, a}}).real();
        }
    }
    return out;
}

/// V_{al, bl'} = <d sigma_a(l) d sigma_b(l')> with d sigma = sigma - <sigma>.
///
/// Different sites use two-point Pauli expectations. The same-site block uses
/// sigma_a sigma_b = delta_ab + i eps_abc sigma_c, so no extra expectations are needed.
inline VarianceCovarianceMatrix compute_vcm(const StateVector &state) {
    const int n = state.n_sites();
    const auto size = static_cast<Eigen::Index>(3 * n);
    const auto s = bloch_vectors(state);
    auto mean = [&](int site, Axis a) { return s[static_cast<std::size_t>(VarianceCovarianceMatrix::index(site, a))]; };

    Eigen::MatrixXcd v(size, size);
    for (int l = 1; l <= n; ++l) {
        const double sx = mean(l, Axis::X);
        const double sy = mean(l, Axis::Y);
        const double sz = mean(l, Axis::Z);
        const double sv[3] = {sx, sy, sz};
        // i eps_abc <sigma_c>
        const Complex i_sx(0.0, sx);
        const Complex i_sy(0.0, sy);
        const Complex i_sz(0.0, sz);
        const Complex cross[3][3] = {
            {0.0, i_sz, -i_sy},
            {-i_sz, 0.0, i_sx},
            {i_sy, -i_sx, 0.0},
        };
        const Eigen::Index base = VarianceCovarianceMatrix::index(l, Axis::X);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                v(base + a, base + b) = (a == b ? 1.0 : 0.0) + cross[a][b] - sv[a] * sv[b];
            }
        }
    }
    for (int l = 1; l <= n; ++l) {
        for (int lp = l + 1; lp <= n; ++lp) {
            for (Axis a : kAxes) {
                for (Axis b : kAxes) {
                    // Factors on distinct sites commute, so the product is Hermitian and its
                    // expectation is real.
                    const double two_point = pauli_expectation(state, PauliString{{l, a}, {lp, b}}).real();
                    const double c = two_point - mean(l, a) * mean(lp, b);
                    v(VarianceCovarianceMatrix::index(l, a), VarianceCovarianceMatrix::index(lp, b)) = c;
                    v(VarianceCovarianceMatrix::index(lp, b), VarianceCovarianceMatrix::index(l, a)) = c;
                }
            }
        }
    }
    return VarianceCovarianceMatrix(n, std::move(v));
}

struct ExtremalEigenvalues {
    double e_max = 0.0;
    double e_min = 0.0;
};

inline Eigen::VectorXd vcm_eigenvalues(const VarianceCovarianceMatrix &vcm) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(vcm.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
}

inline ExtremalEigenvalues extremal_eigenvalues(const VarianceCovarianceMatrix &vcm) {
    const Eigen::VectorXd ev = vcm_eigenvalues(vcm);
    return {ev.maxCoeff(), ev.minCoeff()};
}

/// Coefficients c_{al} of A = sum c_{al} sigma_a(l), normalized to sum |c|^2 = N.
class AdditiveOperatorSpec {
  public:
    AdditiveOperatorSpec(int n_sites, Eigen::VectorXcd coefficients)
        : n_sites_(n_sites), coefficients_(std::move(coefficients)) {
        if (coefficients_.size() != 3 * n_sites) {
            throw Error("additive operator needs 3N coefficients");
        }
        const double norm2 = coefficients_.squaredNorm();
        if (std::abs(norm2 - n_sites) > kPhysicalTol * std::max(1, n_sites)) {
            throw Error("additive operator coefficients must satisfy sum |c|^2 = N, got " + std::to_string(norm2));
        }
    }

    /// Rescales arbitrary nonzero coefficients to the required normalization.
    static AdditiveOperatorSpec normalized(int n_sites, Eigen::VectorXcd raw) {
        const double norm = raw.norm();
        if (!(norm > 0.0)) {
            throw Error("additive operator coefficients are all zero");
        }
        raw *= std::sqrt(static_cast<double>(n_sites)) / norm;
        return AdditiveOperatorSpec(n_sites, std::move(raw));
    }

    /// A = sum_l sigma_axis(l).
    static AdditiveOperatorSpec uniform(int n_sites, Axis axis) {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(3 * n_sites);
        for (int l = 1; l <= n_sites; ++l) {
            c[VarianceCovarianceMatrix::index(l, axis)] = 1.0;
        }
        return AdditiveOperatorSpec(n_sites, std::move(c));
    }

    int n_sites() const noexcept { return n_sites_; }
    const Eigen::VectorXcd &coefficients() const noexcept { return coefficients_; }

  private:
    int n_sites_;
    Eigen::VectorXcd coefficients_;
};

/// <dA^dag dA> = c^dag V c. Never exceeds N e_max.
inline double additive_fluctuation(const VarianceCovarianceMatrix &vcm, const AdditiveOperatorSpec &spec) {
    if (spec.n_sites() != vcm.n_sites()) {
        throw Error("additive operator and VCM have different sizes");
    }
    const Eigen::VectorXcd &c = spec.coefficients();
    return std::max(0.0, c.dot(vcm.matrix() * c).real());
}

inline double additive_fluctuation(const StateVector &state, const AdditiveOperatorSpec &spec) {
    return additive_fluctuation(compute_vcm(state), spec);
}

// ---------------------------------------------------------------------------------------
// Connected correlations
// ---------------------------------------------------------------------------------------

inline constexpr int kMaxCumulantOrder = 6;

/// Observables sigma_{a_i}(l_i) on m pairwise-distinct sites.
class CumulantRequest {
  public:
    explicit CumulantRequest(std::vector<LocalObservable> observables) : observables_(std::move(observables)) {
        if (observables_.empty()) {
            throw Error("cumulant needs at least one observable");
        }
        if (static_cast<int>(observables_.size()) > kMaxCumulantOrder) {
            throw Error("cumulant order is capped at " + std::to_string(kMaxCumulantOrder));
        }
        std::uint64_t seen = 0;
        for (const auto &o : observables_) {
            if (o.site < 1 || o.site > 64) {
                throw Error("observable site out of range");
            }
            if (seen & site_bit(o.site)) {
                throw Error("cumulant observables must sit on distinct sites");
            }
            seen |= site_bit(o.site);
        }
    }
    CumulantRequest(std::initializer_list<LocalObservable> obs) : CumulantRequest(std::vector<LocalObservable>(obs)) {}

    const std::vector<LocalObservable> &observables() const noexcept { return observables_; }
    int order() const noexcept { return static_cast<int>(observables_.size()); }
    std::vector<int> sites() const {
        std::vector<int> s;
        for (const auto &o : observables_) {
            s.push_back(o.site);
        }
        return s;
    }

  private:
    std::vector<LocalObservable> observables_;
};

/// All set partitions of {0..m-1}, each block a bitmask.
inline std::vector<std::vector<unsigned>> set_partitions(int m) {
    std::vector<std::vector<unsigned>> out;
    if (m <= 0) {
        return out;
    }
    // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    for (;;) {
        int blocks = 0;
        for (int v : a) {
            blocks = std::max(blocks, v + 1);
        }
        std::vector<unsigned> partition(static_cast<std::size_t>(blocks), 0U);
        for (int i = 0; i < m; ++i) {
            partition[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])] |= 1U << i;
        }
        out.push_back(std::move(partition));

        int i = m - 1;
        for (; i > 0; --i) {
            int prefix_max = 0;
            for (int k = 0; k < i; ++k) {
                prefix_max = std::max(prefix_max, a[static_cast<std::size_t>(k)]);
            }
            if (a[static_cast<std::size_t>(i)] <= prefix_max) {
                ++a[static_cast<std::size_t>(i)];
                for (int k = i + 1; k < m; ++k) {
                    a[static_cast<std::size_t>(k)] = 0;
                }
                break;
            }
        }
        if (i == 0) {
            return out;
        }
    }
}

/// Tr(rho P) for a Pauli string P on the local sites of rho.
inline Complex local_expectation(const DensityMatrix &rho, const PauliString &p) {
    if (p.max_site() > rho.n_sites()) {
        throw Error("Pauli string exceeds the density matrix support");
    }
    const auto &m = rho.matrix();
    const std::uint64_t flip = p.flip_mask();
    const std::uint64_t phase = p.phase_mask();
    Complex acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
        const auto uj = static_cast<std::uint64_t>(j);
        const Complex term = m(j, static_cast<Eigen::Index>(uj ^ flip));
        acc += parity_sign(uj & phase) > 0 ? term : -term;
    }
    return acc * p.global_phase();
}

/// Joint cumulant of sigma_{axes[i]} acting on local site i+1 of rho, via the partition
/// (Moebius) formula kappa = sum_pi (-1)^{|pi|-1} (|pi|-1)! prod_{B in pi} E[prod_{i in B} a_i].
inline double connected_correlation(const DensityMatrix &rho, std::span<const Axis> axes) {
    const int m = static_cast<int>(axes.size());
    if (m < 1 || m > kMaxCumulantOrder) {
        throw Error("cumulant order must lie in [1, " + std::to_string(kMaxCumulantOrder) + "]");
    }
    if (m > rho.n_sites()) {
        throw Error("more observables than density-matrix sites");
    }
    std::vector<double> moment(std::size_t{1} << m, 0.0);
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        std::vector<LocalObservable> factors;
        for (int i = 0; i < m; ++i) {
            if (mask & (1U << i)) {
                factors.push_back({i + 1, axes[static_cast<std::size_t>(i)]});
            }
        }
        moment[mask] = local_expectation(rho, PauliString(std::move(factors))).real();
    }
    double factorial[kMaxCumulantOrder] = {1, 1, 2, 6, 24, 120};
    CompensatedSum kappa;
    for (const auto &partition : set_partitions(m)) {
        const int blocks = static_cast<int>(partition.size());
        double term = (blocks % 2 == 1 ? 1.0 : -1.0) * factorial[blocks - 1];
        for (unsigned block : partition) {
            term *= moment[block];
        }
        kappa.add(term);
    }
    return kappa.value();
}

inline double connected_correlation(const DensityMatrix &rho, std::initializer_list<Axis> axes) {
    return connected_correlation(rho, std::span<const Axis>(axes.begin(), axes.size()));
}

/// Joint cumulant <a_1(l_1) ... a_m(l_m)>_c of the request, with moments taken from the
/// reduced density matrix of the m sites.
inline double connected_correlation(const StateVector &state, const CumulantRequest &request) {
    const auto sites = request.sites();
    const DensityMatrix rho = partial_trace(state, sites);
    std::vector<Axis> axes;
    for (const auto &o : request.observables()) {
        axes.push_back(o.axis);
    }
    return connected_correlation(rho, axes);
}

/// Empirical mean of |<sigma_a(l) sigma_b(l')>|^2 over axis pairs and states.
struct SqCorrelationStat {
    SampleSummary summary;          ///< over per-state averages of the included axis pairs
    double pair_means[3][3] = {};   ///< per (a, b) mean over states
    bool included[3][3] = {};
};

/// For complex states all nine axis pairs enter the average. For real states the strings
/// containing exactly one sigma_y are purely imaginary operators with zero expectation, so
/// the average runs over the five real-symmetric pairs only. The states must be all real
/// or all complex.
inline SqCorrelationStat two_point_sq_correlation_stat(std::span<const StateVector> states, int l, int lp) {
    if (l == lp) {
        throw Error("two-point correlation needs distinct sites");
    }
    if (states.empty()) {
        throw Error("no states");
    }
    const bool real = states.front().is_real();
    SqCorrelationStat out;
    int count = 0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            const bool odd_y = (a == 1) != (b == 1);
            out.included[a][b] = !(real && odd_y);
            count += out.included[a][b] ? 1 : 0;
        }
    }
    std::vector<double> per_state;
    per_state.reserve(states.size());
    std::vector<double> pair_values[3][3];
    for (const auto &s : states) {
        if (s.is_real() != real) {
            throw Error("mixed real and complex states");
        }
        double acc = 0.0;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double v =
                    std::norm(pauli_expectation(s, PauliString{{l, kAxes[a]}, {lp, kAxes[b]}}));
                pair_values[a][b].push_back(v);
                if (out.included[a][b]) {
                    acc += v;
                }
            }
        }
        per_state.push_back(acc / count);
    }
    out.summary = summarize(per_state);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            out.pair_means[a][b] = summarize(pair_values[a][b]).mean;
        }
    }
    return out;
}

} // namespace chaoscorr
