// Copyright 2026 The qsagnac Authors
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

#include "qsagnac/moment_oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "qsagnac/detection.hpp"
#include "qsagnac/sources.hpp"

using namespace qsagnac;

namespace {

constexpr double kPi = std::numbers::pi;

PureState squeezed(double r, double theta, std::size_t modes = 2) {
    SqueezedSourceParams p{r, theta};
    return two_mode_squeezed_vacuum(p, squeezed_basis(p, modes));
}

// Moments read straight off the Fock amplitudes. Lowering mode i then mode j maps |n> to
// sqrt(n_i) sqrt(n_j - [i == j]) |n - e_i - e_j>.
GaussianMoments fock_moments(const PureState &state) {
    const FockBasis &basis = state.basis();
    const auto n = static_cast<Eigen::Index>(basis.mode_count());
    GaussianMoments m{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
    for (const auto &[key, amp] : state.entries()) {
        const auto occ = basis.unpack(key);
        for (Eigen::Index i = 0; i < n; i++) {
            for (Eigen::Index j = 0; j < n; j++) {
                if (occ[i] == 0) {
                    continue;
                }
                auto lowered = occ;
                lowered[i]--;
                const double fi = std::sqrt(double(occ[i]));
                if (lowered[j] > 0) {
                    auto twice = lowered;
                    twice[j]--;
                    // <a_i a_j>: amplitude of the bra at |n - e_i - e_j>.
                    m.anomalous(i, j) += std::conj(state.amplitude(twice)) * fi * std::sqrt(double(lowered[j])) * amp;
                }
                // <a_j^dag a_i> = sum conj(psi(n - e_i + e_j)) sqrt(n_i) sqrt(n_j - [i==j] + 1) psi(n).
                auto moved = lowered;
                moved[j]++;
                if (moved.total() <= basis.total_photon_cutoff()) {
                    m.normal(j, i) += std::conj(state.amplitude(moved)) * fi * std::sqrt(double(moved[j])) * amp;
                }
            }
        }
    }
    return m;
}

double max_abs(const Eigen::MatrixXcd &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST(SqueezedInputMoments, values) {
    const auto zero = squeezed_input_moments(0.0, 0.0, 3);
    EXPECT_EQ(max_abs(zero.normal), 0.0);
    EXPECT_EQ(max_abs(zero.anomalous), 0.0);

    const auto m = squeezed_input_moments(1.0, 0.0, 4);
    EXPECT_NEAR(m.mean_photons(0), 1.38109784554181573, 1e-15);
    EXPECT_NEAR(m.mean_photons(1), 1.38109784554181573, 1e-15);
    EXPECT_EQ(m.mean_photons(2), 0.0);
    EXPECT_NEAR(std::abs(m.anomalous(0, 1)), 1.81343020392350938, 1e-15);
    EXPECT_LT(m.structure_defect(), 1e-16);
    EXPECT_THROW(squeezed_input_moments(1.0, 0.0, 1), basis_error);
    EXPECT_THROW(squeezed_input_moments(-1.0, 0.0, 2), domain_error);
}

TEST(SqueezedInputMoments, pure_state_saturation) {
    for (double r : {0.1, 0.5, 1.0, 1.39, 2.5}) {
        const auto m = squeezed_input_moments(r, 0.4, 2);
        const double lhs = std::norm(m.anomalous(0, 1)) - m.mean_photons(0) * m.mean_photons(1);
        EXPECT_NEAR(lhs / (std::sinh(r) * std::sinh(r)), 1.0, 1e-12) << r;
    }
}

TEST(SqueezedInputMoments, sign_matches_fock_amplitudes) {
    for (double theta : {0.0, 0.8, kPi}) {
        for (double r : {0.3, 1.0}) {
            const auto fock = fock_moments(squeezed(r, theta));
            const auto gauss = squeezed_input_moments(r, theta, 2);
            EXPECT_LT(std::abs(fock.anomalous(0, 1) - gauss.anomalous(0, 1)), 1e-10) << r << " " << theta;
            EXPECT_LT(max_abs(fock.normal - gauss.normal), 1e-10);
        }
    }
    // theta = 0 gives a negative real pair amplitude.
    EXPECT_LT(fock_moments(squeezed(1.0, 0.0)).anomalous(0, 1).real(), -1.8);
}

TEST(TransformMoments, identity_and_invariants) {
    const auto m = squeezed_input_moments(0.9, 0.3, 4);
    const auto same = transform_moments(ScatteringMatrix::identity(4), m);
    EXPECT_LT(max_abs(same.normal - m.normal), 1e-16);
    EXPECT_LT(max_abs(same.anomalous - m.anomalous), 1e-16);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; trial++) {
        Eigen::MatrixXcd z(4, 4);
        for (Eigen::Index i = 0; i < 4; i++) {
            for (Eigen::Index j = 0; j < 4; j++) {
                z(i, j) = {gauss(rng), gauss(rng)};
            }
        }
        const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
        const auto out = transform_moments(ScatteringMatrix(q), m);
        EXPECT_NEAR(out.total_photons(), m.total_photons(), 1e-13);
        EXPECT_LT(out.structure_defect(), 1e-13);
    }
    EXPECT_THROW(transform_moments(ScatteringMatrix::identity(3), m), basis_error);
}

TEST(TransformMoments, ring_keeps_single_counts_flat) {
    const double r = 1.0;
    for (double phi : {0.0, 0.5, 1.7, kPi, 5.0}) {
        const auto out = transform_moments(sagnac_scattering(phi), squeezed_input_moments(r, 0.0, 2));
        EXPECT_NEAR(out.mean_photons(0), std::sinh(r) * std::sinh(r), 1e-13);
        EXPECT_NEAR(out.mean_photons(1), std::sinh(r) * std::sinh(r), 1e-13);
    }
}

TEST(TransformMoments, agrees_with_fock_evolution_on_four_modes) {
    // Both pictures through ring plus 2-by-2 splitters.
    const double r = 0.6;
    const double theta = 0.5;
    std::vector<NetworkElement> elements = sagnac_elements(1.1);
    elements.emplace_back(splitter_with_transmissivity(0.6, {0, 2}));
    elements.emplace_back(splitter_with_transmissivity(0.3, {1, 3}));
    const auto evolved = evolve_network(squeezed(r, theta, 4), elements);
    const auto fock = fock_moments(evolved);
    const auto gauss = transform_moments(compose_scattering(elements, 4), squeezed_input_moments(r, theta, 4));
    EXPECT_LT(max_abs(fock.normal - gauss.normal), 1e-10);
    EXPECT_LT(max_abs(fock.anomalous - gauss.anomalous), 1e-10);
    EXPECT_NEAR(pair_correlator(evolved, 0, 3), wick_pair_correlator(gauss, 0, 3), 1e-10);
    EXPECT_NEAR(pair_correlator(evolved, 1, 2), wick_pair_correlator(gauss, 1, 2), 1e-10);
}

TEST(WickPairCorrelator, values) {
    EXPECT_EQ(wick_pair_correlator(squeezed_input_moments(0.0, 0.0, 2), 0, 1), 0.0);
    const auto m = squeezed_input_moments(1.0, 0.0, 2);
    EXPECT_NEAR(wick_pair_correlator(m, 0, 1), 5.19596036346230593, 1e-14);
    EXPECT_NEAR(pair_correlator(squeezed(1.0, 0.0), 0, 1), 5.19596036346230593, 1e-10);
    EXPECT_THROW(wick_pair_correlator(m, 1, 1), basis_error);
    EXPECT_THROW(wick_pair_correlator(m, 0, 2), basis_error);
}

TEST(OracleG2, values_and_limits) {
    for (double r : {0.3, 1.0, 2.0}) {
        EXPECT_NEAR(oracle_g2(r, 0.0, kPi / 2), 0.0, 1e-14);
    }
    EXPECT_NEAR(oracle_g2(1.0, 0.0, 0.0), 1.72406166096631047, 1e-14);
    EXPECT_NEAR(oracle_g2(5.0, 0.0, 0.0), 1.00018161620940190, 1e-12);
    for (int k = 0; k <= 240; k++) {
        const double phi = 2 * kPi * k / 240.0;
        EXPECT_NEAR(oracle_g2(1.0, 0.0, phi), closed_form::g2(1.0, phi), 1e-12);
    }
    EXPECT_THROW(oracle_g2(0.0, 0.0, 0.1), domain_error);
}

TEST(OracleG2, theta_independent) {
    for (double phi : {0.0, 0.9, 2.0}) {
        for (double theta : {kPi / 3, kPi, 4.0}) {
            EXPECT_NEAR(oracle_g2(1.2, theta, phi), oracle_g2(1.2, 0.0, phi), 1e-13);
        }
    }
}

TEST(OracleG2, agrees_with_fock_simulation) {
    for (double r : {0.3, 1.0, 1.39}) {
        const auto in = squeezed(r, 0.0);
        for (int k = 0; k <= 240; k += 8) {
            const double phi = 2 * kPi * k / 240.0;
            EXPECT_NEAR(g2_normalized(in, phi), oracle_g2(r, 0.0, phi), 1e-11) << r << " " << phi;
        }
    }
}
