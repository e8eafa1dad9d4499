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

#include "qsagnac/fock.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

#include "qsagnac/sources.hpp"

using namespace qsagnac;

namespace {

const FockBasis kTwoModes(2, 2);

// -sin(phi/2)|10> + cos(phi/2)|01>
PureState single_photon_output(double phi) {
    return PureState(FockBasis(2, 1), {{FockBasis(2, 1).pack({1, 0}), -std::sin(phi / 2)},
                                       {FockBasis(2, 1).pack({0, 1}), std::cos(phi / 2)}});
}

// sin(phi)/sqrt2 (-|20> + |02>) + cos(phi)|11>
PureState pair_output(double phi) {
    const double s = std::sin(phi) / std::numbers::sqrt2;
    return PureState(kTwoModes, {{kTwoModes.pack({2, 0}), -s}, {kTwoModes.pack({0, 2}), s},
                                 {kTwoModes.pack({1, 1}), std::cos(phi)}});
}

}  // namespace

TEST(FockBasis, rejects_empty_and_oversized) {
    EXPECT_THROW(FockBasis(0, 3), basis_error);
    EXPECT_THROW(FockBasis(20, 1000), basis_error);
    EXPECT_NO_THROW(FockBasis(4, 300));
}

TEST(FockBasis, pack_round_trip_and_order) {
    const FockBasis basis(3, 9);
    const OccupationVector occ{4, 0, 5};
    EXPECT_EQ(basis.unpack(basis.pack(occ)), occ);
    EXPECT_LT(basis.pack({0, 9, 0}), basis.pack({1, 0, 0}));
    EXPECT_EQ(basis.key_total(basis.pack(occ)), 9u);
}

TEST(FockBasis, enumeration_is_total_and_deterministic) {
    const FockBasis basis(3, 4);
    std::vector<OccupationVector> first;
    std::vector<OccupationVector> second;
    basis.for_each_occupation([&](const OccupationVector &o) { first.push_back(o); });
    basis.for_each_occupation([&](const OccupationVector &o) { second.push_back(o); });
    EXPECT_EQ(first, second);
    EXPECT_EQ(static_cast<double>(first.size()), basis.dimension());  // C(7, 3) = 35
    EXPECT_EQ(first.size(), 35u);
    EXPECT_EQ(first.front(), (OccupationVector{0, 0, 0}));
    EXPECT_EQ(first.back(), (OccupationVector{0, 0, 4}));
}

TEST(MakeFockState, single_photon) {
    auto s = make_fock_state(kTwoModes, {1, 0});
    EXPECT_EQ(number_expectation(s, 0), 1.0);
    EXPECT_EQ(number_expectation(s, 1), 0.0);
}

TEST(MakeFockState, pair_norm) {
    EXPECT_EQ(norm(make_fock_state(kTwoModes, {1, 1})), 1.0);
}

TEST(MakeFockState, exceeds_cutoff) {
    EXPECT_THROW(make_fock_state(FockBasis(2, 1), {1, 1}), basis_error);
    EXPECT_THROW(make_fock_state(FockBasis(2, 1), {1, 0, 0}), basis_error);
}

TEST(NumberExpectation, single_photon_ring_output) {
    EXPECT_NEAR(number_expectation(single_photon_output(std::numbers::pi / 3), 0), 0.25, 1e-15);
}

TEST(NumberExpectation, truncated_squeezed_state) {
    SqueezedSourceParams params{1.0, 0.0, 60, 1e-12};
    auto state = two_mode_squeezed_vacuum(params, squeezed_basis(params));
    EXPECT_NEAR(number_expectation(state, 0), 1.38109784554181573, 1e-9);
}

TEST(NumberExpectation, bad_mode) {
    EXPECT_THROW(number_expectation(make_fock_state(kTwoModes, {1, 0}), 2), basis_error);
}

TEST(PairCorrelator, values) {
    EXPECT_EQ(pair_correlator(make_fock_state(kTwoModes, {1, 1}), 0, 1), 1.0);
    EXPECT_NEAR(pair_correlator(pair_output(std::numbers::pi / 2), 0, 1), 0.0, 1e-30);
    EXPECT_NEAR(pair_correlator(pair_output(std::numbers::pi / 4), 0, 1), 0.5, 1e-15);
}

TEST(PairCorrelator, same_mode_unsupported) {
    EXPECT_THROW(pair_correlator(make_fock_state(kTwoModes, {1, 1}), 1, 1), basis_error);
}

TEST(ProjectionProbability, values) {
    EXPECT_EQ(projection_probability(make_fock_state(kTwoModes, {1, 1}), {1, 1}), 1.0);
    EXPECT_NEAR(projection_probability(pair_output(std::numbers::pi / 2), {2, 0}), 0.5, 1e-15);
    EXPECT_EQ(projection_probability(pair_output(0.0), {1, 1}), 1.0);
    EXPECT_EQ(projection_probability(pair_output(0.0), {0, 0}), 0.0);
}

TEST(Amplitude, absent_is_zero_and_norm) {
    auto s = make_fock_state(kTwoModes, {0, 2});
    EXPECT_EQ(amplitude(s, {0, 2}), Amplitude(1.0, 0.0));
    EXPECT_EQ(amplitude(s, {1, 1}), Amplitude());
    EXPECT_EQ(norm(s), 1.0);
}

TEST(Amplitude, truncated_squeezed_norm_and_vacuum) {
    SqueezedSourceParams params{1.0, 0.0, 10, 0.01};
    auto state = two_mode_squeezed_vacuum(params, squeezed_basis(params));
    // 1 - tanh^22(1)
    EXPECT_NEAR(state.norm_squared(), 1.0 - 2.49988058047151512e-3, 1e-15);
    EXPECT_NEAR(amplitude(state, {0, 0}).real(), 0.648054273663885400, 1e-15);
}

TEST(PureState, rejects_overnormalized_and_merges_duplicates) {
    const auto k = kTwoModes.pack({1, 0});
    EXPECT_THROW(PureState(kTwoModes, {{k, 1.0}, {kTwoModes.pack({0, 1}), 1.0}}), domain_error);
    PureState merged(kTwoModes, {{k, 0.5}, {k, 0.25}});
    EXPECT_EQ(merged.stored_count(), 1u);
    EXPECT_EQ(amplitude(merged, {1, 0}), Amplitude(0.75, 0.0));
}

TEST(PureState, global_phase_invariance) {
    auto s = pair_output(0.3);
    auto rotated = s.with_global_phase(1.234);
    EXPECT_NEAR(number_expectation(rotated, 0), number_expectation(s, 0), 1e-15);
    EXPECT_NEAR(pair_correlator(rotated, 0, 1), pair_correlator(s, 0, 1), 1e-15);
    EXPECT_NEAR(projection_probability(rotated, {2, 0}), projection_probability(s, {2, 0}), 1e-15);
}

TEST(PureState, projection_probabilities_sum_to_one) {
    auto s = pair_output(0.77);
    double total = 0.0;
    s.basis().for_each_occupation([&](const OccupationVector &o) { total += projection_probability(s, o); });
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(PureState, restrict_photon_number) {
    SqueezedSourceParams params{0.8, 0.0, 20, 1e-3};
    auto state = two_mode_squeezed_vacuum(params, squeezed_basis(params));
    auto low = restrict_photon_number(state, 4);
    EXPECT_EQ(low.stored_count(), 3u);
    EXPECT_EQ(amplitude(low, {2, 2}), amplitude(state, {2, 2}));
    EXPECT_EQ(amplitude(low, {3, 3}), Amplitude());
}
