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

#ifndef QSAGNAC_SOURCES_HPP
#define QSAGNAC_SOURCES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qsagnac/errors.hpp"
#include "qsagnac/fock.hpp"

namespace qsagnac {

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr std::size_t kMaxPairCutoff = 100'000;

/// Two-mode squeezed vacuum sum_n c_n |n, n>, c_n = (-e^{i theta} tanh r)^n / cosh r, truncated at
/// `pair_cutoff` pairs. Without an explicit cutoff one is chosen from `tail_tolerance`.
struct SqueezedSourceParams {
    double r = 0.0;
    double theta = 0.0;
    std::optional<std::size_t> pair_cutoff;
    double tail_tolerance = kDefaultTailTolerance;

    void validate() const {
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw domain_error("squeezing magnitude r must be finite and non-negative");
        }
        if (!std::isfinite(theta)) {
            throw domain_error("squeezing phase must be finite");
        }
        if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
            throw domain_error("tail tolerance must lie in (0, 1)");
        }
    }
};

/// Probability discarded by keeping pairs 0..n_cut: tanh^{2(n_cut+1)} r.
inline double truncation_tail(double r, std::size_t n_cut) {
    if (!(r >= 0.0)) {
        throw domain_error("squeezing magnitude r must be non-negative");
    }
    return std::pow(std::tanh(r), 2.0 * (static_cast<double>(n_cut) + 1.0));
}

/// Closed-form tails sum_{n > n_cut} n^k P(n) of the pair-number distribution P(n) = (1-x) x^n,
/// x = tanh^2 r, for k = 0, 1, 2. With mu = sinh^2 r and M = n_cut + 1:
///   k=0: x^M,  k=1: x^M (M + mu),  k=2: x^M (M^2 + 2 M mu + mu + 2 mu^2).
struct TailMoments {
    double probability = 0.0;
    double first = 0.0;
    double second = 0.0;
};

inline TailMoments truncation_tail_moments(double r, std::size_t n_cut) {
    const double tail = truncation_tail(r, n_cut);
    const double mu = std::sinh(r) * std::sinh(r);
    const double m = static_cast<double>(n_cut) + 1.0;
    return {tail, tail * (m + mu), tail * (m * m + 2.0 * m * mu + mu + 2.0 * mu * mu)};
}

/// Smallest pair cutoff whose discarded second moment is below eps * min(1, sinh^4 r).
///
/// That bounds the truncation error of the probability, <n>, <n_1 n_2> and of the normalized
/// correlation <n_1 n_2>/(<n_1><n_2>) by roughly eps; a pure probability bound leaves errors ~n_cut
/// times larger in the moments.
inline std::size_t select_pair_cutoff(double r, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw domain_error("tail tolerance must lie in (0, 1)");
    }
    if (r == 0.0) {
        return 0;
    }
    const double mu = std::sinh(r) * std::sinh(r);
    const double target = eps * std::min(1.0, mu * mu);
    std::size_t n_cut = 0;
    while (truncation_tail_moments(r, n_cut).second > target) {
        if (++n_cut > kMaxPairCutoff) {
            throw truncation_error(
                "squeezing r = " + std::to_string(r) + " needs more than " + std::to_string(kMaxPairCutoff) +
                    " photon pairs for tail tolerance " + std::to_string(eps),
                kMaxPairCutoff);
        }
    }
    return n_cut;
}

/// Explicit cutoff if given (its tail must not exceed the tolerance), otherwise select_pair_cutoff.
inline std::size_t resolve_pair_cutoff(const SqueezedSourceParams &params) {
    params.validate();
    if (!params.pair_cutoff) {
        return select_pair_cutoff(params.r, params.tail_tolerance);
    }
    const std::size_t n_cut = *params.pair_cutoff;
    const double tail = truncation_tail(params.r, n_cut);
    if (tail > params.tail_tolerance) {
        const std::size_t suggested = select_pair_cutoff(params.r, params.tail_tolerance);
        throw truncation_error(
            "pair cutoff " + std::to_string(n_cut) + " discards probability " + std::to_string(tail) +
                " > tolerance " + std::to_string(params.tail_tolerance) + "; use a pair cutoff of at least " +
                std::to_string(suggested),
            suggested);
    }
    return n_cut;
}

/// Smallest basis holding the truncated state on `mode_count` modes.
inline FockBasis squeezed_basis(const SqueezedSourceParams &params, std::size_t mode_count = 2) {
    return FockBasis(mode_count, 2 * resolve_pair_cutoff(params));
}

/// Truncated, not renormalized, two-mode squeezed vacuum on modes 0 and 1 of `basis`; other modes vacuum.
inline PureState two_mode_squeezed_vacuum(const SqueezedSourceParams &params, const FockBasis &basis) {
    const std::size_t n_cut = resolve_pair_cutoff(params);
    if (basis.mode_count() < 2) {
        throw basis_error("two-mode squeezed vacuum needs at least two modes");
    }
    if (2 * n_cut > basis.total_photon_cutoff()) {
        throw basis_error(
            "basis cutoff " + std::to_string(basis.total_photon_cutoff()) + " cannot hold " + std::to_string(n_cut) +
            " photon pairs");
    }
    const double tanh_r = std::tanh(params.r);
    const double inv_cosh = 1.0 / std::cosh(params.r);
    std::vector<std::uint32_t> counts(basis.mode_count(), 0);
    std::vector<PureState::Entry> entries;
    entries.reserve(n_cut + 1);
    for (std::size_t n = 0; n <= n_cut; n++) {
        const double magnitude = (n == 0 ? 1.0 : std::pow(tanh_r, static_cast<double>(n))) * inv_cosh;
        if (magnitude < 1e-300) {
            break;
        }
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        counts[0] = counts[1] = static_cast<std::uint32_t>(n);
        entries.emplace_back(
            basis.pack(OccupationVector(counts)), sign * std::polar(magnitude, static_cast<double>(n) * params.theta));
    }
    return PureState(basis, std::move(entries));
}

/// Entropy of entanglement in bits: cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r, 0 at r = 0.
inline double entanglement_entropy(double r) {
    if (!(r >= 0.0)) {
        throw domain_error("squeezing magnitude r must be non-negative");
    }
    if (r == 0.0) {
        return 0.0;
    }
    const double c2 = std::cosh(r) * std::cosh(r);
    const double s2 = std::sinh(r) * std::sinh(r);
    return c2 * std::log2(c2) - s2 * std::log2(s2);
}

}  // namespace qsagnac

#endif
