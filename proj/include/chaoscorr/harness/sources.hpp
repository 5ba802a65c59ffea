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
 * Seed derivation and state sources shared by the experiment runners.
 */

#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/harness/config.hpp"
#include "chaoscorr/random.hpp"
#include "chaoscorr/spin_chain.hpp"

extern "C" void openblas_set_num_threads(int num_threads);

namespace chaoscorr::harness {

/// Keeps LAPACK single-threaded. Parallelism comes from the sample loop, and a fixed BLAS
/// thread count keeps floating-point results independent of --threads.
inline void pin_blas_threads() { openblas_set_num_threads(1); }

/// Master seed of one (experiment, source, N, ...) stream family, so that different system
/// sizes and sources never share random draws.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = mix64(master);
    for (std::uint64_t t : tags) {
        h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline std::uint64_t tag_of(Source s) { return static_cast<std::uint64_t>(s) + 1; }

/// Eigenstates of the spin chain picked by the configured selector for disorder
/// realization `index`. The central and ordinal selectors return one state; the window
/// selector returns every state in the window.
inline std::vector<StateVector> spin_chain_states(const ExperimentConfig &c, int n_sites, std::uint64_t seed,
                                                  std::uint64_t index) {
    const SpinChainSpec spec = sample_spec(n_sites, c.coupling, c.field, {seed, index});
    switch (c.selector) {
    case SelectorKind::Central:
        return {to_state(n_sites, central_eigenpair(spec))};
    case SelectorKind::Ordinal:
        return {to_state(n_sites, eigenpair_at(build_hamiltonian(spec), c.selector_ordinal))};
    case SelectorKind::Window:
        return select_eigenstates(diagonalize(build_hamiltonian(spec)), EnergyWindow{c.window_center, c.window_width});
    }
    throw ConfigError("unknown selector");
}

/// One state of `source` for sample `index`: a random-matrix eigenvector or the first
/// selected spin-chain eigenstate.
inline StateVector draw_state(const ExperimentConfig &c, Source source, int n_sites, std::uint64_t seed,
                              std::uint64_t index) {
    if (source == Source::SpinChain) {
        return spin_chain_states(c, n_sites, seed, index).front();
    }
    return sample_state(ensemble_class_of(source), n_sites, {seed, index});
}

} // namespace chaoscorr::harness
