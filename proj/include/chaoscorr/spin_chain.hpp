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
 * Periodic nearest-neighbour spin-1/2 chain with random y-couplings and a random
 * in-plane field:
 *
 *   H = J sum_l [ X_l X_{l+1} + Z_l Z_{l+1} + sqrt(2) cos(phi_l) Y_l Y_{l+1} ]
 *       - h sum_l [ sin(theta_l) X_l + cos(theta_l) Z_l ],     site N+1 == site 1.
 *
 * Every term is real in the computational basis, so H is stored as a dense real
 * symmetric matrix.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chaoscorr/core.hpp"
#include "chaoscorr/lapack.hpp"
#include "chaoscorr/random.hpp"
#include "chaoscorr/state.hpp"

namespace chaoscorr {

struct SpinChainSpec {
    int n_sites = 0;
    double coupling = 1.0; ///< J
    double field = 1.0;    ///< h
    std::vector<double> phases; ///< phi_l in [0, 2 pi), one per bond (l, l+1)
    std::vector<double> angles; ///< theta_l in [0, 2 pi), one per site

    void validate() const {
        if (n_sites < 2) {
            throw ConfigError("spin chain needs at least 2 sites");
        }
        require_state_cap(n_sites);
        if (!std::isfinite(coupling) || !std::isfinite(field)) {
            throw ConfigError("J and h must be finite");
        }
        const auto n = static_cast<std::size_t>(n_sites);
        if (phases.size() != n || angles.size() != n) {
            throw ConfigError("spin chain needs exactly N phases and N angles");
        }
        constexpr double two_pi = 2.0 * std::numbers::pi;
        for (std::size_t l = 0; l < n; ++l) {
            if (!(phases[l] >= 0.0 && phases[l] < two_pi) || !(angles[l] >= 0.0 && angles[l] < two_pi)) {
                throw ConfigError("phases and angles must lie in [0, 2 pi)");
            }
        }
    }
};

/// i.i.d. uniform phases and angles, deterministic in `seed`.
inline SpinChainSpec sample_spec(int n_sites, double coupling, double field, SampleSeed seed) {
    SpinChainSpec spec;
    spec.n_sites = n_sites;
    spec.coupling = coupling;
    spec.field = field;
    Rng rng = make_stream(seed, StreamDomain::Disorder);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::uniform_real_distribution<double> uniform(0.0, two_pi);
    auto draw = [&] {
        const double x = uniform(rng);
        return x < two_pi ? x : std::nextafter(two_pi, 0.0);
    };
    for (int l = 0; l < n_sites; ++l) {
        spec.phases.push_back(draw());
    }
    for (int l = 0; l < n_sites; ++l) {
        spec.angles.push_back(draw());
    }
    spec.validate();
    return spec;
}

struct PauliTerm {
    double coefficient = 0.0;
    PauliString string;
};

/// The Hamiltonian as a sum of weighted Pauli strings.
inline std::vector<PauliTerm> hamiltonian_terms(const SpinChainSpec &spec) {
    spec.validate();
    const int n = spec.n_sites;
    const double sqrt2 = std::numbers::sqrt2;
    std::vector<PauliTerm> terms;
    for (int l = 1; l <= n; ++l) {
        const int next = l == n ? 1 : l + 1;
        const double phi = spec.phases[static_cast<std::size_t>(l - 1)];
        terms.push_back({spec.coupling, PauliString{{l, Axis::X}, {next, Axis::X}}});
        terms.push_back({spec.coupling, PauliString{{l, Axis::Z}, {next, Axis::Z}}});
        terms.push_back({spec.coupling * sqrt2 * std::cos(phi), PauliString{{l, Axis::Y}, {next, Axis::Y}}});
    }
    for (int l = 1; l <= n; ++l) {
        const double theta = spec.angles[static_cast<std::size_t>(l - 1)];
        terms.push_back({-spec.field * std::sin(theta), PauliString{{l, Axis::X}}});
        terms.push_back({-spec.field * std::cos(theta), PauliString{{l, Axis::Z}}});
    }
    return terms;
}

/// Dense real symmetric H built directly from the bit structure of each term.
inline Eigen::MatrixXd build_hamiltonian(const SpinChainSpec &spec) {
    spec.validate();
    require_dense_cap(spec.n_sites);
    const int n = spec.n_sites;
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const double J = spec.coupling;
    const double sqrt2 = std::numbers::sqrt2;

    std::vector<double> yy(static_cast<std::size_t>(n));
    std::vector<double> hx(static_cast<std::size_t>(n));
    std::vector<double> hz(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        yy[static_cast<std::size_t>(l)] = J * sqrt2 * std::cos(spec.phases[static_cast<std::size_t>(l)]);
        hx[static_cast<std::size_t>(l)] = -spec.field * std::sin(spec.angles[static_cast<std::size_t>(l)]);
        hz[static_cast<std::size_t>(l)] = -spec.field * std::cos(spec.angles[static_cast<std::size_t>(l)]);
    }

    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto i = static_cast<std::uint64_t>(col);
        double diag = 0.0;
        for (int l = 0; l < n; ++l) {
            const int r = (l + 1) % n;
            const int bl = static_cast<int>((i >> l) & 1U);
            const int br = static_cast<int>((i >> r) & 1U);
            const double zz = (bl ^ br) ? -1.0 : 1.0;
            diag += J * zz;
            diag += hz[static_cast<std::size_t>(l)] * (bl ? -1.0 : 1.0);

            // XX flips both bits with coefficient J; YY flips both with -(-1)^(bl+br).
            const auto j = static_cast<Eigen::Index>(i ^ ((std::uint64_t{1} << l) | (std::uint64_t{1} << r)));
            h(j, col) += J - yy[static_cast<std::size_t>(l)] * zz;

            const auto jx = static_cast<Eigen::Index>(i ^ (std::uint64_t{1} << l));
            h(jx, col) += hx[static_cast<std::size_t>(l)];
        }
        h(col, col) += diag;
    }
    return h;
}

/// H v computed term by term with the Pauli kernels, never forming H.
inline std::vector<Complex> apply_hamiltonian(const SpinChainSpec &spec, std::span<const Complex> v) {
    if (v.size() != dimension_of(spec.n_sites)) {
        throw Error("vector length does not match the chain");
    }
    const auto terms = hamiltonian_terms(spec);
    std::vector<Complex> out(v.size());
    std::vector<Complex> scratch(v.size());
    for (const auto &t : terms) {
        apply_pauli(v, t.string, scratch);
        for (std::size_t i = 0; i < v.size(); ++i) {
            out[i] += t.coefficient * scratch[i];
        }
    }
    return out;
}

/// Real-arithmetic version of apply_hamiltonian, used by the iterative solvers.
class RealHamiltonianOperator {
  public:
    explicit RealHamiltonianOperator(const SpinChainSpec &spec) : dim_(dimension_of(spec.n_sites)) {
        for (const auto &t : hamiltonian_terms(spec)) {
            if (t.string.y_count() % 2 != 0) {
                throw Error("term is not real in the computational basis");
            }
            // i^{#Y} is +-1 for an even number of Y factors.
            terms_.push_back({t.coefficient * t.string.global_phase().real(), t.string.flip_mask(),
                              t.string.phase_mask()});
        }
    }

    std::size_t dimension() const noexcept { return dim_; }

    void apply(const Eigen::VectorXd &in, Eigen::VectorXd &out) const {
        out.setZero(static_cast<Eigen::Index>(dim_));
        for (const auto &t : terms_) {
            for (std::uint64_t i = 0; i < dim_; ++i) {
                const double s = parity_sign(i & t.phase) > 0 ? t.coefficient : -t.coefficient;
                out[static_cast<Eigen::Index>(i ^ t.flip)] += s * in[static_cast<Eigen::Index>(i)];
            }
        }
    }

  private:
    struct Term {
        double coefficient;
        std::uint64_t flip;
        std::uint64_t phase;
    };
    std::size_t dim_;
    std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------------------
// Spectra and eigenstates
// ---------------------------------------------------------------------------------------

inline int sites_of_dimension(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw Error("matrix dimension must be a power of two >= 2");
    }
    return std::countr_zero(static_cast<std::uint64_t>(dim));
}

namespace detail {

inline void require_symmetric(const Eigen::MatrixXd &h) {
    if (h.rows() != h.cols()) {
        throw Error("Hamiltonian must be square");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > kAlgebraicTol * scale) {
        throw Error("Hamiltonian is not symmetric");
    }
}

/// max row sum of |H|, an upper bound on the spectral norm.
inline double infinity_norm(const Eigen::MatrixXd &h) { return h.cwiseAbs().rowwise().sum().maxCoeff(); }

inline StateVector real_state(int n_sites, const Eigen::VectorXd &v) {
    std::vector<Complex> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        amps[static_cast<std::size_t>(i)] = Complex(v[i], 0.0);
    }
    return StateVector::normalized(n_sites, std::move(amps), true);
}

} // namespace detail

inline constexpr double kEigenResidualTol = 1e-8;

/// Full or eigenvalue-only spectrum of a chain Hamiltonian.
struct SpectrumResult {
    int n_sites = 0;
    std::vector<double> eigenvalues; ///< ascending
    Eigen::MatrixXd eigenvectors;    ///< column k belongs to eigenvalues[k]; empty if values only

    bool has_vectors() const noexcept { return eigenvectors.cols() > 0; }

    /// Eigenstate with 1-based ascending ordinal.
    StateVector eigenstate(std::size_t ordinal) const {
        if (!has_vectors()) {
            throw Error("spectrum was computed without eigenvectors");
        }
        if (ordinal < 1 || ordinal > eigenvalues.size()) {
            throw Error("eigenstate ordinal " + std::to_string(ordinal) + " out of range");
        }
        return detail::real_state(n_sites, eigenvectors.col(static_cast<Eigen::Index>(ordinal - 1)));
    }
};

/// Full eigendecomposition. Every eigenpair is checked to satisfy
/// ||H v - E v|| < 1e-8 ||H||.
inline SpectrumResult diagonalize(const Eigen::MatrixXd &h) {
    detail::require_symmetric(h);
    SpectrumResult out;
    out.n_sites = sites_of_dimension(h.rows());
    require_dense_cap(out.n_sites);
    lapack::symmetric_eigen(h, true, out.eigenvalues, &out.eigenvectors);

    const double norm = std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
    const Eigen::Map<const Eigen::VectorXd> values(out.eigenvalues.data(),
                                                   static_cast<Eigen::Index>(out.eigenvalues.size()));
    const Eigen::MatrixXd residual = h * out.eigenvectors - out.eigenvectors * values.asDiagonal();
    const double worst = residual.colwise().norm().maxCoeff();
    if (worst > kEigenResidualTol * std::max(norm, 1e-300)) {
        throw Error("eigenvector residual " + std::to_string(worst) + " exceeds tolerance");
    }
    return out;
}

/// Eigenvalues only, ascending.
inline std::vector<double> eigenvalues_only(const Eigen::MatrixXd &h) {
    detail::require_symmetric(h);
    require_dense_cap(sites_of_dimension(h.rows()));
    std::vector<double> values;
    lapack::symmetric_eigen(h, false, values, nullptr);
    return values;
}

/// The 2^{N-1}-th state in 1-based ascending order, i.e. the lower of the two middle
/// states of the even-dimensional spectrum.
inline std::size_t central_ordinal(int n_sites) { return dimension_of(n_sites) / 2; }

struct CentralEigenstate {};
/// 1-based position in the ascending spectrum.
struct EigenstateOrdinal {
    std::size_t ordinal = 1;
};
/// All states with energy in (center - width/2, center + width/2].
struct EnergyWindow {
    double center = 0.0;
    double width = 0.0;
};
using EigenstateSelector = std::variant<CentralEigenstate, EigenstateOrdinal, EnergyWindow>;

inline std::vector<StateVector> select_eigenstates(const SpectrumResult &spectrum,
                                                   const EigenstateSelector &selector) {
    std::vector<StateVector> out;
    if (std::holds_alternative<CentralEigenstate>(selector)) {
        out.push_back(spectrum.eigenstate(central_ordinal(spectrum.n_sites)));
    } else if (const auto *k = std::get_if<EigenstateOrdinal>(&selector)) {
        out.push_back(spectrum.eigenstate(k->ordinal));
    } else {
        const auto &w = std::get<EnergyWindow>(selector);
        const double lo = w.center - 0.5 * w.width;
        const double hi = w.center + 0.5 * w.width;
        for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
            const double e = spectrum.eigenvalues[k];
            if (e > lo && e <= hi) {
                out.push_back(spectrum.eigenstate(k + 1));
            }
        }
        if (out.empty()) {
            throw Error("energy window contains no eigenstates");
        }
    }
    return out;
}

/// One eigenpair together with how it was obtained.
struct Eigenpair {
    std::size_t ordinal = 0; ///< 1-based ascending
    double energy = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;   ///< ||H v - E v||
    bool used_shift_invert = false;
    int factorizations = 0;
    int lanczos_steps = 0;
};

enum class EigenpairMethod {
    Auto,        ///< dense for small matrices, shift-invert for dimension >= 2048
    Dense,       ///< partial dsyevr
    ShiftInvert, ///< inertia counting plus shift-invert Lanczos; falls back to Dense on failure
};

namespace detail {

/// Gauss-quadrature estimate of the energy below which a fraction `target` of the spectrum
/// lies, from a few Lanczos runs with random starting vectors.
template <class MatVec>
double estimate_spectral_quantile(std::size_t dim, double target, const MatVec &apply, std::uint64_t seed,
                                  int vectors = 4, int steps = 40) {
    const auto n = static_cast<Eigen::Index>(dim);
    steps = static_cast<int>(std::min<Eigen::Index>(steps, n));
    Rng rng(seed);
    std::bernoulli_distribution coin;
    std::vector<std::pair<double, double>> nodes; // (theta, weight)

    Eigen::MatrixXd q(n, steps);
    Eigen::VectorXd w(n);
    for (int v = 0; v < vectors; ++v) {
        Eigen::VectorXd start(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            start[i] = coin(rng) ? 1.0 : -1.0;
        }
        q.col(0) = start.normalized();
        std::vector<double> alpha;
        std::vector<double> beta;
        int used = 0;
        for (int j = 0; j < steps; ++j) {
            apply(Eigen::VectorXd(q.col(j)), w);
            const double a = q.col(j).dot(w);
            alpha.push_back(a);
            used = j + 1;
            w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
            w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
            const double b = w.norm();
            if (j + 1 == steps || b < 1e-12 * std::max(1.0, std::abs(a))) {
                break;
            }
            beta.push_back(b);
            q.col(j + 1) = w / b;
        }
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), used);
        Eigen::VectorXd sub = Eigen::VectorXd::Zero(std::max(used - 1, 0));
        for (int j = 0; j + 1 < used; ++j) {
            sub[j] = beta[static_cast<std::size_t>(j)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        for (int k = 0; k < used; ++k) {
            const double s = tri.eigenvectors()(0, k);
            nodes.emplace_back(tri.eigenvalues()[k], s * s / vectors);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    // Linear interpolation of the cumulative weight placed at node midpoints.
    double cumulative = 0.0;
    double prev_x = nodes.front().first;
    double prev_c = 0.0;
    for (const auto &[x, weight] : nodes) {
        const double c = cumulative + 0.5 * weight;
        if (c >= target) {
            if (c == prev_c) {
                return x;
            }
            return prev_x + (x - prev_x) * (target - prev_c) / (c - prev_c);
        }
        cumulative += weight;
        prev_x = x;
        prev_c = c;
    }
    return nodes.back().first;
}

/// Gaussian density-of-states estimate at `e`, from the first two spectral moments.
inline double gaussian_level_density(const Eigen::MatrixXd &h, double e) {
    const double n = static_cast<double>(h.rows());
    const double mean = h.trace() / n;
    const double var = std::max(h.squaredNorm() / n - mean * mean, 1e-300);
    return n * std::exp(-(e - mean) * (e - mean) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// Shift-invert Lanczos with full reorthogonalization around the factored shift. Returns
/// the eigenpair with 0-based ascending index `target` once it is identified from the
/// inertia `below` and a contiguous run of converged Ritz values on its side of the
/// shift. Returns nullopt if that does not happen within `max_steps`.
inline std::optional<std::pair<double, Eigen::VectorXd>>
shift_invert_lanczos(const lapack::ShiftedLdlt &factor, Eigen::Index n, std::size_t below, std::size_t target,
                     int max_steps, std::uint64_t seed, int &steps_taken) {
    constexpr double kRitzTol = 1e-10;
    const bool above = target >= below;
    const std::size_t need = above ? target - below + 1 : below - target;
    max_steps = static_cast<int>(std::min<Eigen::Index>(max_steps, n));

    Rng rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd q(n, max_steps + 1);
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        start[i] = normal(rng);
    }
    q.col(0) = start.normalized();

    std::vector<double> alpha;
    std::vector<double> beta;
    Eigen::VectorXd w(n);
    for (int j = 0; j < max_steps; ++j) {
        steps_taken = j + 1;
        w = q.col(j);
        factor.solve_in_place(w);
        const double a = q.col(j).dot(w);
        alpha.push_back(a);
        w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
        w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
        const double b = w.norm();

        const int size = j + 1;
        const bool exhausted = b <= 1e-14 * std::max(1.0, std::abs(a));
        if (size >= static_cast<int>(2 * need) && (size % 4 == 0 || exhausted || size == max_steps)) {
            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), size);
            Eigen::VectorXd sub(size - 1);
            for (int k = 0; k + 1 < size; ++k) {
                sub[k] = beta[static_cast<std::size_t>(k)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const auto &mu = tri.eigenvalues(); // ascending
            // Positive Ritz values sit above the shift, nearest first when read from the top.
            bool identified = true;
            int pick = -1;
            for (std::size_t r = 0; r < need; ++r) {
                const int idx = above ? size - 1 - static_cast<int>(r) : static_cast<int>(r);
                if (idx < 0 || idx >= size) {
                    identified = false;
                    break;
                }
                const double m = mu[idx];
                const double res = std::abs(b * tri.eigenvectors()(size - 1, idx));
                if ((above ? m <= 0.0 : m >= 0.0) || res > kRitzTol * std::abs(m)) {
                    identified = false;
                    break;
                }
                pick = idx;
            }
            if (identified) {
                Eigen::VectorXd v = q.leftCols(size) * tri.eigenvectors().col(pick);
                v.normalize();
                return std::make_pair(factor.shift() + 1.0 / mu[pick], std::move(v));
            }
        }
        if (exhausted) {
            return std::nullopt;
        }
        beta.push_back(b);
        q.col(j + 1) = w / b;
    }
    return std::nullopt;
}

} // namespace detail

/// Dense partial diagonalization for a single eigenpair.
inline Eigenpair eigenpair_dense(const Eigen::MatrixXd &h, std::size_t ordinal) {
    detail::require_symmetric(h);
    Eigenpair out;
    out.ordinal = ordinal;
    lapack::symmetric_eigenpair(h, ordinal, out.energy, out.vector);
    out.vector.normalize();
    out.residual = (h * out.vector - out.energy * out.vector).norm();
    if (out.residual > kEigenResidualTol * std::max(detail::infinity_norm(h), 1e-300)) {
        throw Error("eigenvector residual exceeds tolerance");
    }
    return out;
}

/// Eigenpair with 1-based ascending `ordinal`. With ShiftInvert the shift is first moved
/// until at most a couple of dozen levels separate it from the target (each move costs one
/// LDL^T factorization), then shift-invert Lanczos resolves the target. The result is
/// accepted only if ||H v - E v|| <= 1e-8 ||H||_inf; otherwise the dense path is used.
/// `apply` is an optional fast matrix-vector product used to locate the first shift.
inline Eigenpair eigenpair_at(const Eigen::MatrixXd &h, std::size_t ordinal,
                              EigenpairMethod method = EigenpairMethod::Auto,
                              const std::function<void(const Eigen::VectorXd &, Eigen::VectorXd &)> &apply = {}) {
    detail::require_symmetric(h);
    const Eigen::Index n = h.rows();
    if (ordinal < 1 || ordinal > static_cast<std::size_t>(n)) {
        throw Error("eigenvalue ordinal out of range");
    }
    if (method == EigenpairMethod::Auto) {
        method = n >= 2048 ? EigenpairMethod::ShiftInvert : EigenpairMethod::Dense;
    }
    if (method == EigenpairMethod::Dense) {
        return eigenpair_dense(h, ordinal);
    }

    constexpr std::size_t kReach = 24;
    constexpr int kMaxFactorizations = 6;
    const std::size_t target = ordinal - 1;
    const double norm = std::max(detail::infinity_norm(h), 1e-300);
    const std::uint64_t seed = mix64(0x6c616e637a6f73ULL ^ ordinal);

    const double fraction = (static_cast<double>(target) + 0.5) / static_cast<double>(n);
    double shift = 0.0;
    if (apply) {
        shift = detail::estimate_spectral_quantile(static_cast<std::size_t>(n), fraction, apply, seed);
    } else {
        shift = detail::estimate_spectral_quantile(
            static_cast<std::size_t>(n), fraction,
            [&](const Eigen::VectorXd &x, Eigen::VectorXd &y) { y.noalias() = h * x; }, seed, 2, 25);
    }

    std::optional<std::pair<double, std::size_t>> previous; // (shift, count)
    for (int attempt = 0; attempt < kMaxFactorizations; ++attempt) {
        lapack::ShiftedLdlt factor(h, shift);
        if (factor.singular()) {
            shift += 1e-9 * norm;
            continue;
        }
        const std::size_t below = factor.negative_count();
        const auto gap = static_cast<double>(target) + 0.5 - static_cast<double>(below);
        if (std::abs(gap) <= static_cast<double>(kReach)) {
            int steps = 0;
            auto found = detail::shift_invert_lanczos(factor, n, below, target, 6 * static_cast<int>(kReach) + 40,
                                                      seed, steps);
            if (found) {
                Eigenpair out;
                out.ordinal = ordinal;
                out.vector = std::move(found->second);
                out.energy = out.vector.dot(h * out.vector);
                out.residual = (h * out.vector - out.energy * out.vector).norm();
                out.used_shift_invert = true;
                out.factorizations = attempt + 1;
                out.lanczos_steps = steps;
                if (out.residual <= kEigenResidualTol * norm) {
                    return out;
                }
            }
            break;
        }
        double density = detail::gaussian_level_density(h, shift);
        if (previous && previous->second != below) {
            density = (static_cast<double>(below) - static_cast<double>(previous->second)) /
                      (shift - previous->first);
        }
        previous = std::make_pair(shift, below);
        shift += gap / std::max(density, 1e-300);
    }
    return eigenpair_dense(h, ordinal);
}

/// Central eigenpair of a chain, using the matrix-free operator to place the first shift.
inline Eigenpair central_eigenpair(const SpinChainSpec &spec, EigenpairMethod method = EigenpairMethod::Auto) {
    const Eigen::MatrixXd h = build_hamiltonian(spec);
    const RealHamiltonianOperator op(spec);
    return eigenpair_at(h, central_ordinal(spec.n_sites), method,
                        [&op](const Eigen::VectorXd &x, Eigen::VectorXd &y) { op.apply(x, y); });
}

inline StateVector to_state(int n_sites, const Eigenpair &pair) { return detail::real_state(n_sites, pair.vector); }

} // namespace chaoscorr
