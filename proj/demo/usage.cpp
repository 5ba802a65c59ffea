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

// Walk-through of the library: a chaotic state against a cat state, then a
// spin-chain eigenstate.

#include <cstdio>

#include "chaoscorr/correlations.hpp"
#include "chaoscorr/ensembles.hpp"
#include "chaoscorr/entanglement.hpp"
#include "chaoscorr/local_ops.hpp"
#include "chaoscorr/spin_chain.hpp"

using namespace chaoscorr;

namespace {

void describe(const char *label, const StateVector &s) {
    const int n = s.n_sites();
    const auto e = extremal_eigenvalues(compute_vcm(s));
    const double half = purity_direct(s, leading_sites(n / 2));
    std::printf("%-22s N=%d  e_max=%8.4f  e_min=%8.4f  Tr rho_{N/2}^2=%.6f\n", label, n, e.e_max, e.e_min, half);
}

} // namespace

int main() {
    const int n = 10;

    const StateVector gue = sample_state(EnsembleClass::GUE, n, {2026, 0});
    const StateVector cat = make_cat_state(n);
    describe("GUE eigenvector", gue);
    describe("cat state", cat);
    std::printf("  GUE mean half-cut purity prediction: %.6f\n", predicted_purity(n / 2, n - n / 2, 0));

    // Fluctuation of the total magnetization: N^2 for the cat state, O(N) for chaotic states.
    const auto mz = AdditiveOperatorSpec::uniform(n, Axis::Z);
    std::printf("  <dM_z^2>: GUE %.4f, cat %.4f\n", additive_fluctuation(gue, mz), additive_fluctuation(cat, mz));

    // One measurement destroys the cat state's entanglement; a chaotic state shrugs it off.
    const auto cat_after = projective_measure(cat, n, MeasurementMode::ForceZero).post_state;
    const auto gue_after = projective_measure(gue, n, MeasurementMode::ForceZero).post_state;
    std::printf("  after measuring site %d: max purity deficit cat %.2e, GUE %.4f\n", n, max_purity_deficit(cat_after),
                max_purity_deficit(gue_after));

    // Central eigenstate of one disorder realization of the spin chain.
    const SpinChainSpec spec = sample_spec(n, 1.0, 1.0, {2026, 0});
    describe("spin-chain central", to_state(n, central_eigenpair(spec)));
    std::printf("  GOE half-cut purity prediction: %.6f\n", predicted_purity(n / 2, n - n / 2, 1));
    return 0;
}
