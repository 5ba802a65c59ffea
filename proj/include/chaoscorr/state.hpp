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
 * N-qubit pure states, Pauli-string observables and reduced density matrices.
 *
 * Basis convention: site l (1-based) is bit l-1 of the basis index, and bit value 0 is
 * spin up (sigma_z = +1). |up up ... up> is index 0.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "chaoscorr/core.hpp"

namespace chaoscorr {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

inline constexpr int axis_index(Axis a) { return static_cast<int>(a); }

inline constexpr char axis_name(Axis a) {
    switch (a) {
    case Axis::X:
        return 'x';
    case Axis::Y:
        return 'y';
    case Axis::Z:
        return 'z';
    }
    return '?';
}

inline Axis parse_axis(char c) {
    switch (c) {
    case 'x':
    case 'X':
        return Axis::X;
    case 'y':
    case 'Y':
        return Axis::Y;
    case 'z':
    case 'Z':
        return Axis::Z;
    default:
        throw Error(std::string("unknown Pauli axis '") + c + "'");
    }
}

/// sigma_axis acting on one site.
struct LocalObservable {
    int site = 1;
    Axis axis = Axis::Z;

    friend bool operator==(const LocalObservable &, const LocalObservable &) = default;
};

/// Product of single-site Pauli matrices on pairwise-distinct sites. The empty string is
/// the identity.
class PauliString {
  public:
    PauliString() = default;

    explicit PauliString(std::vector<LocalObservable> factors) : factors_(std::move(factors)) {
        int y_count = 0;
        for (const auto &f : factors_) {
            if (f.site < 1 || f.site > 64) {
                throw Error("Pauli factor site " + std::to_string(f.site) + " out of range");
            }
            const std::uint64_t bit = site_bit(f.site);
            if ((flip_mask_ | phase_mask_) & bit) {
                throw Error("Pauli string repeats site " + std::to_string(f.site));
            }
            switch (f.axis) {
            case Axis::X:
                flip_mask_ |= bit;
                break;
            case Axis::Y:
                flip_mask_ |= bit;
                phase_mask_ |= bit;
                ++y_count;
                break;
            case Axis::Z:
                phase_mask_ |= bit;
                break;
            }
            max_site_ = std::max(max_site_, f.site);
        }
        y_count_ = y_count;
        // i^{#Y}
        static constexpr Complex kPowersOfI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        global_phase_ = kPowersOfI[y_count % 4];
    }

    PauliString(std::initializer_list<LocalObservable> factors)
        : PauliString(std::vector<LocalObservable>(factors)) {}

    const std::vector<LocalObservable> &factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    int max_site() const noexcept { return max_site_; }

    /// Bits flipped by the string (sites carrying X or Y).
    std::uint64_t flip_mask() const noexcept { return flip_mask_; }
    /// Bits contributing a (-1)^bit sign (sites carrying Y or Z).
    std::uint64_t phase_mask() const noexcept { return phase_mask_; }
    int y_count() const noexcept { return y_count_; }
    /// P|i> = global_phase * (-1)^popcount(i & phase_mask) |i ^ flip_mask>.
    Complex global_phase() const noexcept { return global_phase_; }

  private:
    std::vector<LocalObservable> factors_;
    std::uint64_t flip_mask_ = 0;
    std::uint64_t phase_mask_ = 0;
    int y_count_ = 0;
    int max_site_ = 0;
    Complex global_phase_{1, 0};
};

inline int parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

/// Normalized pure state of N qubits.
class StateVector {
  public:
    /// Validates length 2^N, exact realness when `is_real`, and unit norm within kPhysicalTol.
    StateVector(int n_sites, std::vector<Complex> amplitudes, bool is_real = false)
        : n_sites_(n_sites), amplitudes_(std::move(amplitudes)), is_real_(is_real) {
        require_state_cap(n_sites);
        if (amplitudes_.size() != dimension_of(n_sites)) {
            throw Error("state of " + std::to_string(n_sites) + " sites needs " +
                        std::to_string(dimension_of(n_sites)) + " amplitudes, got " +
                        std::to_string(amplitudes_.size()));
        }
        if (is_real_) {
            for (const auto &c : amplitudes_) {
                if (c.imag() != 0.0) {
                    throw Error("real state has a nonzero imaginary part");
                }
            }
        }
        const double n2 = norm_squared();
        if (!(std::abs(n2 - 1.0) <= kPhysicalTol)) {
            throw Error("state is not normalized: squared norm " + std::to_string(n2));
        }
    }

    /// Rescales `raw` to unit norm before validating.
    static StateVector normalized(int n_sites, std::vector<Complex> raw, bool is_real = false) {
        double n2 = 0.0;
        for (const auto &c : raw) {
            n2 += std::norm(c);
        }
        if (!(n2 > 0.0) || !std::isfinite(n2)) {
            throw Error("cannot normalize a zero or non-finite vector");
        }
        const double scale = 1.0 / std::sqrt(n2);
        for (auto &c : raw) {
            c *= scale;
        }
        return StateVector(n_sites, std::move(raw), is_real);
    }

    static StateVector basis_state(int n_sites, std::uint64_t index) {
        require_state_cap(n_sites);
        if (index >= dimension_of(n_sites)) {
            throw Error("basis index out of range");
        }
        std::vector<Complex> amps(dimension_of(n_sites));
        amps[index] = 1.0;
        return StateVector(n_sites, std::move(amps), true);
    }

    int n_sites() const noexcept { return n_sites_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    bool is_real() const noexcept { return is_real_; }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto &c : amplitudes_) {
            acc += std::norm(c);
        }
        return acc;
    }

  private:
    int n_sites_;
    std::vector<Complex> amplitudes_;
    bool is_real_;
};

/// Reduced density matrix of m sites. Local site k (1-based) of the matrix is bit k-1 of
/// its row/column index.
class DensityMatrix {
  public:
    /// Tag for matrices that are positive semidefinite by construction (Gram matrices),
    /// which skips the eigenvalue check.
    struct GramTag {};

    /// Validates shape, Hermiticity, unit trace and eigenvalues >= -kPhysicalTol.
    DensityMatrix(int n_sites, Eigen::MatrixXcd matrix) : DensityMatrix(n_sites, std::move(matrix), GramTag{}) {
        if (min_eigenvalue() < -kPhysicalTol) {
            throw Error("density matrix has a negative eigenvalue");
        }
    }

    DensityMatrix(int n_sites, Eigen::MatrixXcd matrix, GramTag) : n_sites_(n_sites), matrix_(std::move(matrix)) {
        require_state_cap(n_sites);
        const auto d = static_cast<Eigen::Index>(dimension_of(n_sites));
        if (matrix_.rows() != d || matrix_.cols() != d) {
            throw Error("density matrix of " + std::to_string(n_sites) + " sites must be " +
                        std::to_string(d) + "x" + std::to_string(d));
        }
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kPhysicalTol) {
            throw Error("density matrix is not Hermitian");
        }
        if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kPhysicalTol) {
            throw Error("density matrix trace differs from 1");
        }
    }

    int n_sites() const noexcept { return n_sites_; }
    const Eigen::MatrixXcd &matrix() const noexcept { return matrix_; }

    Eigen::VectorXd eigenvalues() const {
        return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(matrix_, Eigen::EigenvaluesOnly)
            .eigenvalues();
    }
    double min_eigenvalue() const { return eigenvalues().minCoeff(); }

  private:
    int n_sites_;
    Eigen::MatrixXcd matrix_;
};

namespace detail {

inline void require_sites_in(const PauliString &p, int n_sites) {
    if (p.max_site() > n_sites) {
        throw Error("Pauli string acts on site " + std::to_string(p.max_site()) +
                    " but the state has " + std::to_string(n_sites) + " sites");
    }
}

inline void validate_site_list(std::span<const int> sites, int n_sites, bool allow_empty) {
    if (!allow_empty && sites.empty()) {
        throw Error("site list must not be empty");
    }
    std::uint64_t seen = 0;
    for (int s : sites) {
        if (s < 1 || s > n_sites) {
            throw Error("site " + std::to_string(s) + " out of range [1, " + std::to_string(n_sites) + "]");
        }
        if (seen & site_bit(s)) {
            throw Error("duplicate site " + std::to_string(s));
        }
        seen |= site_bit(s);
    }
}

} // namespace detail

/// <state| P |state> in O(2^N) without forming P.
inline Complex pauli_expectation(const StateVector &state, const PauliString &obs) {
    detail::require_sites_in(obs, state.n_sites());
    if (obs.empty()) {
        return {1.0, 0.0};
    }
    const auto amps = state.amplitudes();
    const std::uint64_t flip = obs.flip_mask();
    const std::uint64_t phase = obs.phase_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const Complex term = std::conj(amps[i ^ flip]) * amps[i];
        acc += parity_sign(i & phase) > 0 ? term : -term;
    }
    return acc * obs.global_phase();
}

/// out = P * in. `out` must not alias `in`.
inline void apply_pauli(std::span<const Complex> in, const PauliString &p, std::span<Complex> out) {
    const std::uint64_t flip = p.flip_mask();
    const std::uint64_t phase = p.phase_mask();
    const Complex g = p.global_phase();
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        out[i ^ flip] = parity_sign(i & phase) > 0 ? g * in[i] : -g * in[i];
    }
}

inline std::vector<Complex> apply_pauli(const StateVector &state, const PauliString &p) {
    detail::require_sites_in(p, state.n_sites());
    std::vector<Complex> out(state.dimension());
    apply_pauli(state.amplitudes(), p, out);
    return out;
}

/// Coefficient matrix C with rows indexed by the kept sites (bit k <-> keep_sites[k]) and
/// columns by the remaining sites in ascending order. |psi> = sum C[r,c] |r>_A |c>_B.
inline Eigen::MatrixXcd coefficient_matrix(const StateVector &state, std::span<const int> keep_sites) {
    const int n = state.n_sites();
    detail::validate_site_list(keep_sites, n, false);
    const int m = static_cast<int>(keep_sites.size());

    std::vector<int> kept_bits(keep_sites.begin(), keep_sites.end());
    for (auto &b : kept_bits) {
        b -= 1;
    }
    std::vector<int> rest_bits;
    std::uint64_t kept_mask = 0;
    for (int b : kept_bits) {
        kept_mask |= std::uint64_t{1} << b;
    }
    for (int b = 0; b < n; ++b) {
        if (!(kept_mask & (std::uint64_t{1} << b))) {
            rest_bits.push_back(b);
        }
    }

    const auto rows = static_cast<Eigen::Index>(dimension_of(m));
    const auto cols = static_cast<Eigen::Index>(dimension_of(n - m));
    Eigen::MatrixXcd c(rows, cols);

    // Contiguous prefix 1..m is a plain reshape.
    bool prefix = true;
    for (int k = 0; k < m; ++k) {
        prefix = prefix && kept_bits[k] == k;
    }
    const auto amps = state.amplitudes();
    if (prefix) {
        for (Eigen::Index col = 0; col < cols; ++col) {
            for (Eigen::Index row = 0; row < rows; ++row) {
                c(row, col) = amps[static_cast<std::size_t>(col * rows + row)];
            }
        }
        return c;
    }

    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        std::uint64_t row = 0;
        for (int k = 0; k < m; ++k) {
            row |= ((i >> kept_bits[k]) & 1U) << k;
        }
        std::uint64_t col = 0;
        for (std::size_t k = 0; k < rest_bits.size(); ++k) {
            col |= ((i >> rest_bits[k]) & 1U) << k;
        }
        c(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amps[i];
    }
    return c;
}

/// rho_A = Tr_B |psi><psi| for A = keep_sites (in the given order).
inline DensityMatrix partial_trace(const StateVector &state, std::span<const int> keep_sites) {
    const Eigen::MatrixXcd c = coefficient_matrix(state, keep_sites);
    Eigen::MatrixXcd rho = c * c.adjoint();
    // Exact Hermiticity; the product is Hermitian only up to rounding.
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(static_cast<int>(keep_sites.size()), std::move(rho), DensityMatrix::GramTag{});
}

inline DensityMatrix partial_trace(const StateVector &state, std::initializer_list<int> keep_sites) {
    return partial_trace(state, std::span<const int>(keep_sites.begin(), keep_sites.size()));
}

/// Tr(rho^2), the squared Frobenius norm of rho.
inline double purity(const DensityMatrix &rho) { return rho.matrix().squaredNorm(); }

/// Tr(rho_A^2) without forming rho_A explicitly: ||C C^dag||_F^2 or ||C^dag C||_F^2,
/// whichever Gram matrix is smaller.
inline double purity_direct(const StateVector &state, std::span<const int> keep_sites) {
    const Eigen::MatrixXcd c = coefficient_matrix(state, keep_sites);
    if (c.rows() <= c.cols()) {
        return (c * c.adjoint()).squaredNorm();
    }
    return (c.adjoint() * c).squaredNorm();
}

inline double purity_direct(const StateVector &state, std::initializer_list<int> keep_sites) {
    return purity_direct(state, std::span<const int>(keep_sites.begin(), keep_sites.size()));
}

/// (|up...up> + |down...down>)/sqrt(2).
inline StateVector make_cat_state(int n_sites) {
    require_state_cap(n_sites);
    std::vector<Complex> amps(dimension_of(n_sites));
    const double a = 1.0 / std::sqrt(2.0);
    amps.front() = a;
    amps.back() = a;
    return StateVector(n_sites, std::move(amps), true);
}

/// Sites 1..m.
inline std::vector<int> leading_sites(int m) {
    std::vector<int> s(static_cast<std::size_t>(std::max(m, 0)));
    for (int k = 0; k < m; ++k) {
        s[static_cast<std::size_t>(k)] = k + 1;
    }
    return s;
}

/// All sites of an N-site system not in `sites`, ascending.
inline std::vector<int> complement_sites(std::span<const int> sites, int n_sites) {
    std::uint64_t mask = 0;
    for (int s : sites) {
        mask |= site_bit(s);
    }
    std::vector<int> out;
    for (int s = 1; s <= n_sites; ++s) {
        if (!(mask & site_bit(s))) {
            out.push_back(s);
        }
    }
    return out;
}

} // namespace chaoscorr
