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
 * Thin RAII wrappers over the LAPACK routines used for real symmetric matrices.
 */

#pragma once

#include <Eigen/Dense>
#include <lapacke.h>

#include <cstddef>
#include <string>
#include <vector>

#include "chaoscorr/core.hpp"

namespace chaoscorr::lapack {

inline lapack_int checked_size(Eigen::Index n) {
    if (n <= 0) {
        throw Error("matrix must be non-empty");
    }
    return static_cast<lapack_int>(n);
}

inline void require_square(const Eigen::MatrixXd &a) {
    if (a.rows() != a.cols()) {
        throw Error("matrix must be square");
    }
}

/// All eigenvalues (ascending) and, if requested, eigenvectors of a real symmetric matrix.
/// Only the lower triangle of `a` is read.
inline void symmetric_eigen(Eigen::MatrixXd a, bool want_vectors, std::vector<double> &values,
                            Eigen::MatrixXd *vectors) {
    require_square(a);
    const lapack_int n = checked_size(a.rows());
    values.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    Eigen::MatrixXd z;
    if (want_vectors) {
        z.resize(n, n);
    } else {
        z.resize(1, 1);
    }
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'A', 'L', n, a.data(), n, 0.0, 0.0,
                       0, 0, 0.0, &found, values.data(), z.data(), want_vectors ? n : 1, support.data());
    if (info != 0 || found != n) {
        throw Error("dsyevr failed (info = " + std::to_string(info) + ")");
    }
    if (want_vectors && vectors != nullptr) {
        *vectors = std::move(z);
    }
}

/// The eigenpair with 1-based ascending ordinal `ordinal`.
inline void symmetric_eigenpair(Eigen::MatrixXd a, std::size_t ordinal, double &value, Eigen::VectorXd &vector) {
    require_square(a);
    const lapack_int n = checked_size(a.rows());
    if (ordinal < 1 || ordinal > static_cast<std::size_t>(n)) {
        throw Error("eigenvalue ordinal out of range");
    }
    const auto k = static_cast<lapack_int>(ordinal);
    lapack_int found = 0;
    double w[1] = {0.0};
    vector.resize(n);
    lapack_int support[2] = {0, 0};
    const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, k, k,
                                           0.0, &found, w, vector.data(), n, support);
    if (info != 0 || found != 1) {
        throw Error("dsyevr failed (info = " + std::to_string(info) + ")");
    }
    value = w[0];
}

/// Bunch-Kaufman factorization L D L^T of (a - shift I). Gives the inertia (number of
/// eigenvalues below the shift) and solves with the shifted matrix.
class ShiftedLdlt {
  public:
    ShiftedLdlt(const Eigen::MatrixXd &a, double shift) : factor_(a), shift_(shift) {
        require_square(a);
        const lapack_int n = checked_size(a.rows());
        factor_.diagonal().array() -= shift;
        pivots_.resize(static_cast<std::size_t>(n));
        info_ = LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, factor_.data(), n, pivots_.data());
        if (info_ < 0) {
            throw Error("dsytrf rejected argument " + std::to_string(-info_));
        }
    }

    /// True when D has an exactly zero pivot (the shift hit an eigenvalue).
    bool singular() const noexcept { return info_ > 0; }
    double shift() const noexcept { return shift_; }

    /// Number of negative eigenvalues of D, equal to the number of eigenvalues of `a`
    /// strictly below the shift (Sylvester's law of inertia).
    std::size_t negative_count() const {
        const auto n = factor_.rows();
        std::size_t count = 0;
        Eigen::Index k = 0;
        while (k < n) {
            if (pivots_[static_cast<std::size_t>(k)] > 0 || k + 1 == n) {
                count += factor_(k, k) < 0.0 ? 1 : 0;
                k += 1;
            } else {
                const double a = factor_(k, k);
                const double b = factor_(k + 1, k);
                const double c = factor_(k + 1, k + 1);
                const double det = a * c - b * b;
                if (det < 0.0) {
                    count += 1;
                } else if (a + c < 0.0) {
                    count += 2;
                }
                k += 2;
            }
        }
        return count;
    }

    /// x <- (a - shift I)^{-1} x
    void solve_in_place(Eigen::VectorXd &x) const {
        if (singular()) {
            throw Error("cannot solve with a singular shifted matrix");
        }
        const auto n = static_cast<lapack_int>(factor_.rows());
        const lapack_int info =
            LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, factor_.data(), n, pivots_.data(), x.data(), n);
        if (info != 0) {
            throw Error("dsytrs failed (info = " + std::to_string(info) + ")");
        }
    }

  private:
    Eigen::MatrixXd factor_;
    std::vector<lapack_int> pivots_;
    double shift_;
    lapack_int info_ = 0;
};

} // namespace chaoscorr::lapack
