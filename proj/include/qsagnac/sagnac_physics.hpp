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

#ifndef QSAGNAC_SAGNAC_PHYSICS_HPP
#define QSAGNAC_SAGNAC_PHYSICS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>

#include "qsagnac/errors.hpp"

namespace qsagnac {

inline constexpr double kVacuumLightSpeed = 299'792'458.0;  // m/s, exact

/// Geometry and rotation of a ring interferometer, SI units throughout.
///
/// With `fiber_length == 0` the phase is computed from the enclosed area (single loop);
/// otherwise from the total fiber length wound at `radius`. `area` defaults to pi R^2.
struct RotationParameters {
    double radius = 0.0;
    double angular_velocity = 0.0;
    double wavelength = 0.0;
    double fiber_length = 0.0;
    std::optional<double> area;
    double light_speed = kVacuumLightSpeed;

    double enclosed_area() const {
        return area.value_or(std::numbers::pi * radius * radius);
    }

    /// Throws domain_error unless R > 0, lambda > 0, c > 0, L >= 0, A > 0 and |R Omega| < c.
    void validate() const {
        if (!(radius > 0.0)) {
            throw domain_error("radius must be positive");
        }
        if (!(wavelength > 0.0)) {
            throw domain_error("wavelength must be positive");
        }
        if (!(light_speed > 0.0)) {
            throw domain_error("light speed must be positive");
        }
        if (!(fiber_length >= 0.0)) {
            throw domain_error("fiber length must be non-negative");
        }
        if (area && !(*area > 0.0)) {
            throw domain_error("area must be positive");
        }
        if (!std::isfinite(angular_velocity) || !(std::abs(radius * angular_velocity) < light_speed)) {
            throw domain_error("perimeter speed |R*Omega| must be below the speed of light");
        }
    }
};

struct ClassicalField {
    std::complex<double> amplitude{1.0, 0.0};
    double frequency = 0.0;  // rad/s
};

struct FringeIntensities {
    double detector1 = 0.0;
    double detector2 = 0.0;
};

/// Arrival-time difference of the counter-propagating beams after one round trip.
/// `exact` keeps the (c^2 - R^2 Omega^2) denominator; otherwise the slow-rim approximation.
inline double round_trip_delay(const RotationParameters &params, bool exact) {
    params.validate();
    const double c = params.light_speed;
    const double rim = params.radius * params.angular_velocity;
    const double numerator = 4.0 * std::numbers::pi * params.radius * params.radius * params.angular_velocity;
    return exact ? numerator / (c * c - rim * rim) : numerator / (c * c);
}

/// Sagnac phase in radians; sign follows the sense of rotation.
inline double rotation_phase(const RotationParameters &params) {
    params.validate();
    const double denom = params.wavelength * params.light_speed;
    if (params.fiber_length > 0.0) {
        return 4.0 * std::numbers::pi * params.fiber_length * params.radius * params.angular_velocity / denom;
    }
    return 8.0 * std::numbers::pi * params.enclosed_area() * params.angular_velocity / denom;
}

/// Output intensities of the balanced two-port ring for a classical input field.
inline FringeIntensities classical_fringe(const ClassicalField &field, double phi) {
    const double input = std::norm(field.amplitude);
    const double s = std::sin(phi / 2.0);
    const double c = std::cos(phi / 2.0);
    return {input * s * s, input * c * c};
}

}  // namespace qsagnac

#endif
