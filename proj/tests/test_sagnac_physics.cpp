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

#include "qsagnac/sagnac_physics.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace qsagnac;

namespace {

RotationParameters ring(double radius, double omega, double wavelength = 1550e-9) {
    RotationParameters p;
    p.radius = radius;
    p.angular_velocity = omega;
    p.wavelength = wavelength;
    return p;
}

}  // namespace

TEST(RoundTripDelay, no_rotation_no_delay) {
    EXPECT_EQ(round_trip_delay(ring(1.0, 0.0), true), 0.0);
    EXPECT_EQ(round_trip_delay(ring(1.0, 0.0), false), 0.0);
}

TEST(RoundTripDelay, unit_ring_unit_rate) {
    // 4 pi / c^2 with c = 299792458 m/s, evaluated in 30-digit arithmetic.
    EXPECT_NEAR(round_trip_delay(ring(1.0, 1.0), false), 1.39819729684572772e-16, 1e-30);
    EXPECT_GE(round_trip_delay(ring(1.0, 1.0), true), round_trip_delay(ring(1.0, 1.0), false));
}

TEST(RoundTripDelay, exact_vs_approximate_relative_gap) {
    // beta = R Omega / c = 1e-3: the relative gap equals beta^2 to leading order.
    const double c = kVacuumLightSpeed;
    const double beta = 1e-3;
    const auto p = ring(1.0, beta * c);
    const double exact = round_trip_delay(p, true);
    const double approx = round_trip_delay(p, false);
    const double gap = (exact - approx) / exact;
    EXPECT_NEAR(gap, beta * beta, 1e-10);
    EXPECT_LT(gap, 2.0 * beta * beta);
}

TEST(RoundTripDelay, sign_follows_rotation) {
    EXPECT_LT(round_trip_delay(ring(2.0, -3.0), true), 0.0);
    EXPECT_DOUBLE_EQ(round_trip_delay(ring(2.0, -3.0), true), -round_trip_delay(ring(2.0, 3.0), true));
}

TEST(RoundTripDelay, superluminal_rim_rejected) {
    EXPECT_THROW(round_trip_delay(ring(1.0, kVacuumLightSpeed), true), domain_error);
    EXPECT_THROW(round_trip_delay(ring(2.0, -kVacuumLightSpeed), false), domain_error);
}

TEST(RotationPhase, zero_rate) {
    auto p = ring(0.1, 0.0);
    EXPECT_EQ(rotation_phase(p), 0.0);
    p.fiber_length = 1000.0;
    EXPECT_EQ(rotation_phase(p), 0.0);
}

TEST(RotationPhase, earth_rate_fiber_coil) {
    auto p = ring(0.1, 7.292e-5);
    p.fiber_length = 1000.0;
    // 4 pi L R Omega / (lambda c) evaluated in 30-digit arithmetic.
    const double expected = 1.97198734194473081e-4;
    EXPECT_NEAR(rotation_phase(p), expected, 1e-12 * expected);
}

TEST(RotationPhase, linear_in_length_and_rate) {
    auto p = ring(0.1, 7.292e-5);
    p.fiber_length = 1000.0;
    const double base = rotation_phase(p);
    auto longer = p;
    longer.fiber_length *= 2.0;
    auto faster = p;
    faster.angular_velocity *= 2.0;
    EXPECT_DOUBLE_EQ(rotation_phase(longer), 2.0 * base);
    EXPECT_DOUBLE_EQ(rotation_phase(faster), 2.0 * base);
    auto reversed = p;
    reversed.angular_velocity = -p.angular_velocity;
    EXPECT_DOUBLE_EQ(rotation_phase(reversed), -base);
}

TEST(RotationPhase, area_mode_matches_delay_times_frequency) {
    // phi = omega * dt with omega = 2 pi c / lambda and dt from the slow-rim delay.
    const auto p = ring(0.5, 0.01, 633e-9);
    const double omega = 2.0 * std::numbers::pi * p.light_speed / p.wavelength;
    EXPECT_NEAR(rotation_phase(p), omega * round_trip_delay(p, false), 1e-15 * std::abs(rotation_phase(p)));
}

TEST(RotationPhase, area_override) {
    auto p = ring(0.5, 0.01);
    p.area = 2.0;
    const double expected = 8.0 * std::numbers::pi * 2.0 * 0.01 / (p.wavelength * p.light_speed);
    EXPECT_DOUBLE_EQ(rotation_phase(p), expected);
}

TEST(RotationPhase, invalid_parameters) {
    auto p = ring(0.1, 1.0);
    p.wavelength = 0.0;
    EXPECT_THROW(rotation_phase(p), domain_error);
    p = ring(0.1, 1.0);
    p.light_speed = -1.0;
    EXPECT_THROW(rotation_phase(p), domain_error);
    p = ring(-0.1, 1.0);
    EXPECT_THROW(rotation_phase(p), domain_error);
}

TEST(ClassicalFringe, endpoints) {
    const ClassicalField field{{0.0, 2.0}, 1e15};
    auto at0 = classical_fringe(field, 0.0);
    EXPECT_EQ(at0.detector1, 0.0);
    EXPECT_DOUBLE_EQ(at0.detector2, 4.0);
    auto at_pi = classical_fringe(field, std::numbers::pi);
    EXPECT_DOUBLE_EQ(at_pi.detector1, 4.0);
    EXPECT_NEAR(at_pi.detector2, 0.0, 1e-30);
}

TEST(ClassicalFringe, quadrature_point) {
    auto mid = classical_fringe(ClassicalField{}, std::numbers::pi / 2.0);
    EXPECT_NEAR(mid.detector1, 0.5, 1e-15);
    EXPECT_NEAR(mid.detector2, 0.5, 1e-15);
}

TEST(ClassicalFringe, energy_conservation_and_period) {
    const ClassicalField field{{0.3, -1.1}, 0.0};
    const double input = std::norm(field.amplitude);
    double lo = 1e9;
    double hi = -1e9;
    for (int k = 0; k <= 240; k++) {
        const double phi = 2.0 * std::numbers::pi * k / 240.0;
        const auto i = classical_fringe(field, phi);
        EXPECT_NEAR(i.detector1 + i.detector2, input, 1e-14);
        const auto shifted = classical_fringe(field, phi + 2.0 * std::numbers::pi);
        EXPECT_NEAR(shifted.detector1, i.detector1, 1e-14);
        lo = std::min(lo, i.detector1 / input);
        hi = std::max(hi, i.detector1 / input);
    }
    EXPECT_NEAR((hi - lo) / (hi + lo), 1.0, 1e-14);
}
