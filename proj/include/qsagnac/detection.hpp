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

#ifndef QSAGNAC_DETECTION_HPP
#define QSAGNAC_DETECTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsagnac/errors.hpp"
#include "qsagnac/fock.hpp"
#include "qsagnac/optics_network.hpp"
#include "qsagnac/sagnac_physics.hpp"

namespace qsagnac {

enum class SchemeKind { single_counts, coincidence_12, g2_normalized, p2_projective, p4_2x2, p4_3x1 };

/// The two ancilla splitters in front of the four-photon detectors. Their mode pairs are assigned by
/// the scheme: in 2-by-2, `first` couples output b1 (mode 0) to vacuum mode 2 and `second` couples b2
/// (mode 1) to vacuum mode 3. In 3-by-1, `first` couples b1 to mode 2 and `second` couples the
/// transmitted part of b1 to mode 3, so that b1^dag -> r1 d1^dag + t1 (r2 d2^dag + t2 d3^dag) with
/// d1, d2, d3 = modes 2, 3, 0.
struct DetectorSplitters {
    BeamSplitterSpec first = balanced_bs();
    BeamSplitterSpec second = balanced_bs();

    static DetectorSplitters balanced() {
        return {};
    }
    static DetectorSplitters with_transmissivity(double first_t2, double second_t2) {
        return {splitter_with_transmissivity(first_t2), splitter_with_transmissivity(second_t2)};
    }
};

struct DetectionScheme {
    SchemeKind kind = SchemeKind::single_counts;
    DetectorSplitters detector_splitters{};
    std::vector<std::size_t> ancilla_modes{};

    static DetectionScheme make(SchemeKind kind, DetectorSplitters splitters = {}) {
        DetectionScheme scheme{kind, splitters, {}};
        if (kind == SchemeKind::p4_2x2 || kind == SchemeKind::p4_3x1) {
            scheme.ancilla_modes = {2, 3};
        }
        return scheme;
    }

    bool is_four_photon() const {
        return kind == SchemeKind::p4_2x2 || kind == SchemeKind::p4_3x1;
    }

    std::size_t required_modes() const {
        return is_four_photon() ? 4 : 2;
    }

    void validate() const {
        if (!detector_splitters.first.is_unitary() || !detector_splitters.second.is_unitary()) {
            throw domain_error("detector splitters must be unitary to 1e-12");
        }
        if (is_four_photon() && ancilla_modes != std::vector<std::size_t>{2, 3}) {
            throw domain_error("four-photon schemes use vacuum ancilla modes 2 and 3");
        }
    }
};

struct FringePoint {
    double phi = 0.0;
    double value = 0.0;
    double closed_form = 0.0;
    double abs_error = 0.0;

    static FringePoint make(double phi, double value, double closed_form) {
        return {phi, value, closed_form, std::abs(value - closed_form)};
    }
};

namespace detail {

inline void require_two_mode_input(const PureState &input) {
    if (input.basis().mode_count() < 2) {
        throw basis_error("detection schemes need at least two modes");
    }
}

inline OccupationVector ones_then_vacuum(std::size_t mode_count, std::size_t ones) {
    std::vector<std::uint32_t> counts(mode_count, 0);
    std::fill(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(ones), 1u);
    return OccupationVector(std::move(counts));
}

/// The projective outcomes read a single photon-number block; number conservation guarantees that
/// no other block leaks into it. Verify that instead of assuming it.
inline void check_number_conservation(const PureState &before, const PureState &after) {
    const auto in = photon_number_distribution(before);
    const auto out = photon_number_distribution(after);
    for (std::size_t n = 0; n < in.size(); n++) {
        if (std::abs(in[n] - out[n]) > 1e-12) {
            throw std::logic_error("photon number block " + std::to_string(n) + " not conserved by the network");
        }
    }
}

inline void require_vacuum_ancillas(const PureState &input, std::span<const std::size_t> ancillas) {
    const FockBasis &basis = input.basis();
    for (const auto &[key, amp] : input.entries()) {
        for (auto mode : ancillas) {
            if (basis.count(key, mode) != 0 && std::abs(amp) > 0.0) {
                throw domain_error("ancilla mode " + std::to_string(mode) + " of the input is not vacuum");
            }
        }
    }
}

inline PureState four_photon_output(
    const PureState &input, double phi, const DetectorSplitters &splitters, ModePair second_pair) {
    const FockBasis &basis = input.basis();
    if (basis.mode_count() < 4) {
        throw basis_error("four-photon detection needs four modes (two outputs, two vacuum ancillas)");
    }
    if (basis.total_photon_cutoff() < 4) {
        throw basis_error("four-photon detection needs a total photon cutoff of at least 4");
    }
    const std::size_t ancillas[] = {2, 3};
    require_vacuum_ancillas(input, ancillas);
    BeamSplitterSpec first = splitters.first;
    BeamSplitterSpec second = splitters.second;
    first.modes = {0, 2};
    second.modes = second_pair;
    std::vector<NetworkElement> elements = sagnac_elements(phi);
    elements.emplace_back(first);
    elements.emplace_back(second);
    PureState out = evolve_network(input, elements);
    check_number_conservation(input, out);
    return out;
}

}  // namespace detail

/// Input evolved through the ring on modes (0, 1), global phase kept.
inline PureState sagnac_output(const PureState &input, double phi) {
    detail::require_two_mode_input(input);
    return evolve_network(input, sagnac_elements(phi));
}

/// Mean photon numbers <b1^dag b1>, <b2^dag b2> at the two ring outputs.
inline FringeIntensities single_counts(const PureState &input, double phi) {
    const PureState out = sagnac_output(input, phi);
    return {number_expectation(out, 0), number_expectation(out, 1)};
}

/// <b1^dag b2^dag b2 b1> at the ring outputs.
inline double coincidence_12(const PureState &input, double phi) {
    return pair_correlator(sagnac_output(input, phi), 0, 1);
}

/// <b1^dag b2^dag b2 b1> / (<b1^dag b1><b2^dag b2>) - 1.
inline double g2_normalized(const PureState &input, double phi) {
    const PureState out = sagnac_output(input, phi);
    const double n1 = number_expectation(out, 0);
    const double n2 = number_expectation(out, 1);
    if (!(n1 * n2 > 0.0)) {
        throw domain_error("g2 is undefined when an output carries no photons (r = 0)");
    }
    return pair_correlator(out, 0, 1) / (n1 * n2) - 1.0;
}

/// Probability of exactly one photon in each ring output.
inline double p2_projective(const PureState &input, double phi) {
    const PureState out = sagnac_output(input, phi);
    detail::check_number_conservation(input, out);
    return projection_probability(out, detail::ones_then_vacuum(input.basis().mode_count(), 2));
}

/// One photon at each of D1..D4 with a splitter behind each ring output.
inline double p4_2x2(const PureState &input, double phi, const DetectorSplitters &splitters = {}) {
    const PureState out = detail::four_photon_output(input, phi, splitters, {1, 3});
    return projection_probability(out, detail::ones_then_vacuum(input.basis().mode_count(), 4));
}

/// Three photons split over d1, d2, d3 behind output b1 and one photon directly at b2.
inline double p4_3x1(const PureState &input, double phi, const DetectorSplitters &splitters = {}) {
    const PureState out = detail::four_photon_output(input, phi, splitters, {0, 3});
    return projection_probability(out, detail::ones_then_vacuum(input.basis().mode_count(), 4));
}

/// Scheme value at one phase; single counts report detector 1.
inline double evaluate(const DetectionScheme &scheme, const PureState &input, double phi) {
    scheme.validate();
    switch (scheme.kind) {
        case SchemeKind::single_counts:
            return single_counts(input, phi).detector1;
        case SchemeKind::coincidence_12:
            return coincidence_12(input, phi);
        case SchemeKind::g2_normalized:
            return g2_normalized(input, phi);
        case SchemeKind::p2_projective:
            return p2_projective(input, phi);
        case SchemeKind::p4_2x2:
            return p4_2x2(input, phi, scheme.detector_splitters);
        case SchemeKind::p4_3x1:
            return p4_3x1(input, phi, scheme.detector_splitters);
    }
    throw std::logic_error("unknown detection scheme");
}

/// (max - min) / (max + min) of the sampled values.
inline double visibility(std::span<const double> values) {
    if (values.size() < 2) {
        throw domain_error("visibility needs at least two samples");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double sum = *hi + *lo;
    if (sum == 0.0) {
        throw domain_error("visibility undefined: max + min = 0");
    }
    return (*hi - *lo) / sum;
}

inline double visibility(std::span<const FringePoint> fringe) {
    std::vector<double> values;
    values.reserve(fringe.size());
    for (const auto &p : fringe) {
        values.push_back(p.value);
    }
    return visibility(values);
}

/// Analytic fringes the simulation is checked against.
namespace closed_form {

inline FringeIntensities single_photon(double phi) {
    const double s = std::sin(phi / 2.0);
    const double c = std::cos(phi / 2.0);
    return {s * s, c * c};
}

inline double two_photon_coincidence(double phi) {
    const double c = std::cos(phi);
    return c * c;
}

inline double squeezed_single_counts(double r) {
    const double s = std::sinh(r);
    return s * s;
}

/// sinh^4 r + cos^2(phi) sinh^2 r cosh^2 r, i.e. (1 + g2) <n1><n2>.
inline double squeezed_coincidence(double r, double phi) {
    const double s2 = std::sinh(r) * std::sinh(r);
    const double c2 = std::cosh(r) * std::cosh(r);
    const double cp = std::cos(phi);
    return s2 * s2 + cp * cp * s2 * c2;
}

inline double g2(double r, double phi) {
    if (!(r > 0.0)) {
        throw domain_error("g2 is undefined at r = 0");
    }
    const double cp = std::cos(phi);
    const double coth = 1.0 / std::tanh(r);
    return cp * cp * coth * coth;
}

inline double p2(double r, double phi) {
    const double t = std::tanh(r);
    const double c = std::cosh(r);
    const double cp = std::cos(phi);
    return t * t / (c * c) * cp * cp;
}

inline double p4_2x2(double r, double phi, const DetectorSplitters &s = {}) {
    const double t = std::tanh(r);
    const double c = std::cosh(r);
    const double coupling = std::norm(s.first.t * s.second.t * s.first.r * s.second.r);
    const double bracket = 1.0 + 3.0 * std::cos(2.0 * phi);
    return t * t * t * t / (c * c) * coupling * 0.25 * bracket * bracket;
}

inline double p4_3x1(double r, double phi, const DetectorSplitters &s = {}) {
    const double t = std::tanh(r);
    const double c = std::cosh(r);
    const double coupling = std::norm(s.first.t * s.first.t * s.second.t * s.first.r * s.second.r);
    const double s2 = std::sin(2.0 * phi);
    return t * t * t * t / (c * c) * coupling * 2.25 * s2 * s2;
}

}  // namespace closed_form

}  // namespace qsagnac

#endif
