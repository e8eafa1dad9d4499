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

#ifndef QSAGNAC_OPTICS_NETWORK_HPP
#define QSAGNAC_OPTICS_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qsagnac/errors.hpp"
#include "qsagnac/fock.hpp"

namespace qsagnac {

inline constexpr double kUnitarityTolerance = 1e-12;
inline constexpr double kPruneThreshold = 1e-300;

struct ModePair {
    std::size_t first = 0;
    std::size_t second = 1;
    bool operator==(const ModePair &) const = default;
};

/// Lossless two-port coupler. A photon entering `modes.first` leaves as t in `first` and r in
/// `second`; one entering `modes.second` leaves as r' in `first` and t' in `second`. The 2x2
/// scattering block is [[t, r'], [r, t']].
struct BeamSplitterSpec {
    Amplitude t{1.0, 0.0};
    Amplitude r{0.0, 0.0};
    Amplitude t_prime{1.0, 0.0};
    Amplitude r_prime{0.0, 0.0};
    ModePair modes{};

    Eigen::Matrix2cd matrix() const {
        Eigen::Matrix2cd m;
        m << t, r_prime, r, t_prime;
        return m;
    }

    bool is_unitary(double tol = kUnitarityTolerance) const {
        const Eigen::Matrix2cd m = matrix();
        return ((m.adjoint() * m) - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < tol;
    }

    static BeamSplitterSpec from_matrix(const Eigen::Matrix2cd &m, ModePair modes) {
        return {m(0, 0), m(1, 0), m(1, 1), m(0, 1), modes};
    }
};

/// Multiplies the field in `mode` by exp(i*phase).
struct PhaseShifterSpec {
    std::size_t mode = 0;
    double phase = 0.0;
};

using NetworkElement = std::variant<BeamSplitterSpec, PhaseShifterSpec>;

/// Linear map b = S a from input to output annihilation operators of a passive network.
class ScatteringMatrix {
   public:
    explicit ScatteringMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols()) {
            throw basis_error("scattering matrix must be square");
        }
    }

    static ScatteringMatrix identity(std::size_t dimension) {
        const auto n = static_cast<Eigen::Index>(dimension);
        return ScatteringMatrix(Eigen::MatrixXcd::Identity(n, n));
    }

    std::size_t dimension() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    Amplitude operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Eigen::MatrixXcd &matrix() const {
        return entries_;
    }

    /// max |(S^dag S - I)_ij|
    double unitarity_defect() const {
        const auto n = entries_.rows();
        return ((entries_.adjoint() * entries_) - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    }

    bool is_unitary(double tol = kUnitarityTolerance) const {
        return unitarity_defect() < tol;
    }

   private:
    Eigen::MatrixXcd entries_;
};

/// 50/50 splitter with t = t' = 1/sqrt2, r = r' = i/sqrt2.
inline BeamSplitterSpec balanced_bs(ModePair modes = {}) {
    const double h = std::numbers::sqrt2 / 2.0;
    return {{h, 0.0}, {0.0, h}, {h, 0.0}, {0.0, h}, modes};
}

/// Splitter with power transmissivity |t|^2, real t and r = i|r| (same for the primed pair).
inline BeamSplitterSpec splitter_with_transmissivity(double transmissivity, ModePair modes = {}) {
    if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
        throw domain_error("transmissivity must lie in [0, 1]");
    }
    const double t = std::sqrt(transmissivity);
    const double r = std::sqrt(1.0 - transmissivity);
    return {{t, 0.0}, {0.0, r}, {t, 0.0}, {0.0, r}, modes};
}

/// BS_out * diag(1, e^{i phi}) * BS_in, global phase included.
inline ScatteringMatrix sagnac_scattering(double phi) {
    const Eigen::Matrix2cd bs = balanced_bs().matrix();
    Eigen::Matrix2cd loop = Eigen::Matrix2cd::Identity();
    loop(1, 1) = std::polar(1.0, phi);
    return ScatteringMatrix(bs * loop * bs);
}

/// Sagnac matrix with the global phase i*e^{i phi/2} removed:
/// [[-sin(phi/2), cos(phi/2)], [cos(phi/2), sin(phi/2)]].
inline ScatteringMatrix sagnac_scattering_phase_stripped(double phi) {
    const double s = std::sin(phi / 2.0);
    const double c = std::cos(phi / 2.0);
    Eigen::Matrix2cd m;
    m << -s, c, c, s;
    return ScatteringMatrix(m);
}

inline Amplitude sagnac_global_phase(double phi) {
    return Amplitude{0.0, 1.0} * std::polar(1.0, phi / 2.0);
}

/// The ring as a network: input splitter, loop phase on the second mode, output splitter.
inline std::vector<NetworkElement> sagnac_elements(double phi, ModePair modes = {}) {
    return {balanced_bs(modes), PhaseShifterSpec{modes.second, phi}, balanced_bs(modes)};
}

/// The ring as a single real two-mode element (global phase dropped).
inline BeamSplitterSpec sagnac_phase_stripped_element(double phi, ModePair modes = {}) {
    const Eigen::Matrix2cd m = sagnac_scattering_phase_stripped(phi).matrix();
    return BeamSplitterSpec::from_matrix(m, modes);
}

namespace detail {

/// Plain complex product; std::complex operator* carries the C99 Annex G inf/nan recovery path,
/// which dominates the inner loops below.
inline Amplitude mul(Amplitude a, Amplitude b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline void require_pair(const FockBasis &basis, ModePair modes) {
    basis.require_mode(modes.first);
    basis.require_mode(modes.second);
    if (modes.first == modes.second) {
        throw basis_error("beam splitter needs two distinct modes");
    }
}

inline void require_unitary(const BeamSplitterSpec &bs) {
    if (!bs.is_unitary()) {
        throw domain_error("beam splitter matrix is not unitary to 1e-12");
    }
}

/// Matrix of a two-mode unitary restricted to the subspace with `photons()` photons in the pair.
///
/// Column k is the image of |k, T-k>, row p the coefficient of |p, T-p>. Built photon by photon:
/// the image of |k, T-k> is a creation operator applied to an image at T-1, always peeling the more
/// populated input mode so every step divides by at least sqrt(T/2). This keeps the rounding error
/// O(T * eps); expanding the binomial products directly cancels terms of size ~2^T.
class PairRepresentation {
   public:
    explicit PairRepresentation(const Eigen::Matrix2cd &u) : u_(u), current_(1, Amplitude{1.0, 0.0}) {
    }

    std::size_t photons() const {
        return photons_;
    }

    Amplitude operator()(std::size_t p, std::size_t k) const {
        return current_[k * (photons_ + 1) + p];
    }

    const Amplitude *column(std::size_t k) const {
        return current_.data() + k * (photons_ + 1);
    }

    void advance() {
        const std::size_t prev_dim = photons_ + 1;
        const std::size_t total = photons_ + 1;
        const std::size_t dim = total + 1;
        grow_sqrt(total);
        previous_.swap(current_);
        current_.assign(dim * dim, Amplitude{});
        for (std::size_t k = 0; k <= total; k++) {
            const bool peel_first = k >= total - k;
            const Amplitude *v = previous_.data() + (peel_first ? k - 1 : k) * prev_dim;
            const Amplitude c_first = peel_first ? u_(0, 0) : u_(0, 1);
            const Amplitude c_second = peel_first ? u_(1, 0) : u_(1, 1);
            const double inv = 1.0 / sqrt_[peel_first ? k : total - k];
            Amplitude *out = current_.data() + k * dim;
            for (std::size_t p = 0; p <= total; p++) {
                Amplitude acc{};
                if (p >= 1) {
                    acc += mul(c_first, sqrt_[p] * v[p - 1]);
                }
                if (p < total) {
                    acc += mul(c_second, sqrt_[total - p] * v[p]);
                }
                out[p] = acc * inv;
            }
        }
        photons_ = total;
    }

    void advance_to(std::size_t photons) {
        while (photons_ < photons) {
            advance();
        }
    }

   private:
    void grow_sqrt(std::size_t n) {
        while (sqrt_.size() <= n) {
            sqrt_.push_back(std::sqrt(static_cast<double>(sqrt_.size())));
        }
    }

    Eigen::Matrix2cd u_;
    std::size_t photons_ = 0;
    std::vector<Amplitude> current_;
    std::vector<Amplitude> previous_;
    std::vector<double> sqrt_;
};

inline PureState apply_beam_splitter(const PureState &state, const BeamSplitterSpec &bs) {
    const FockBasis &basis = state.basis();
    require_pair(basis, bs.modes);
    require_unitary(bs);
    using Key = FockBasis::Key;
    const std::size_t a = bs.modes.first;
    const std::size_t b = bs.modes.second;

    struct Item {
        std::size_t total;
        Key spectator;
        std::uint32_t first_count;
        Amplitude amp;
    };
    std::vector<Item> items;
    items.reserve(state.stored_count());
    for (const auto &[key, amp] : state.entries()) {
        const std::uint32_t na = basis.count(key, a);
        const std::uint32_t nb = basis.count(key, b);
        items.push_back({na + std::size_t{nb}, basis.with_count(basis.with_count(key, a, 0), b, 0), na, amp});
    }
    std::sort(items.begin(), items.end(), [](const Item &x, const Item &y) {
        return std::tie(x.total, x.spectator, x.first_count) < std::tie(y.total, y.spectator, y.first_count);
    });

    PairRepresentation rep(bs.matrix());
    std::vector<PureState::Entry> out;
    out.reserve(items.size() * 2);
    std::vector<Amplitude> block;
    for (std::size_t lo = 0; lo < items.size();) {
        std::size_t hi = lo;
        while (hi < items.size() && items[hi].total == items[lo].total && items[hi].spectator == items[lo].spectator) {
            hi++;
        }
        const std::size_t total = items[lo].total;
        rep.advance_to(total);
        block.assign(total + 1, Amplitude{});
        for (std::size_t k = lo; k < hi; k++) {
            const Amplitude *col = rep.column(items[k].first_count);
            const Amplitude x = items[k].amp;
            for (std::size_t p = 0; p <= total; p++) {
                block[p] += mul(col[p], x);
            }
        }
        for (std::size_t p = 0; p <= total; p++) {
            if (std::abs(block[p]) >= kPruneThreshold) {
                const Key key = basis.with_count(basis.with_count(items[lo].spectator, a, p), b, total - p);
                out.emplace_back(key, block[p]);
            }
        }
        lo = hi;
    }
    return PureState(basis, std::move(out));
}

inline PureState apply_phase_shifter(const PureState &state, const PhaseShifterSpec &ps) {
    const FockBasis &basis = state.basis();
    basis.require_mode(ps.mode);
    std::vector<PureState::Entry> out;
    out.reserve(state.stored_count());
    for (const auto &[key, amp] : state.entries()) {
        const Amplitude next = amp * std::polar(1.0, ps.phase * basis.count(key, ps.mode));
        if (std::abs(next) >= kPruneThreshold) {
            out.emplace_back(key, next);
        }
    }
    return PureState(basis, std::move(out));
}

}  // namespace detail

/// Schrodinger-picture action of one passive element: each creation operator a_i^dag becomes
/// sum_j S_ji a_j^dag. Photon number and norm are conserved.
inline PureState apply_element(const PureState &state, const NetworkElement &element) {
    return std::visit(
        [&](const auto &e) -> PureState {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, BeamSplitterSpec>) {
                return detail::apply_beam_splitter(state, e);
            } else {
                return detail::apply_phase_shifter(state, e);
            }
        },
        element);
}

/// Applies elements in list order.
inline PureState evolve_network(PureState state, std::span<const NetworkElement> elements) {
    for (const auto &element : elements) {
        state = apply_element(state, element);
    }
    return state;
}

/// Scattering matrix of the whole network on `dimension` modes: S = S_last ... S_first.
inline ScatteringMatrix compose_scattering(std::span<const NetworkElement> elements, std::size_t dimension) {
    const auto n = static_cast<Eigen::Index>(dimension);
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(n, n);
    for (const auto &element : elements) {
        Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(n, n);
        if (const auto *bs = std::get_if<BeamSplitterSpec>(&element)) {
            const auto a = static_cast<Eigen::Index>(bs->modes.first);
            const auto b = static_cast<Eigen::Index>(bs->modes.second);
            if (a >= n || b >= n || a == b) {
                throw basis_error("beam splitter modes out of range for the network dimension");
            }
            detail::require_unitary(*bs);
            step(a, a) = bs->t;
            step(a, b) = bs->r_prime;
            step(b, a) = bs->r;
            step(b, b) = bs->t_prime;
        } else {
            const auto &ps = std::get<PhaseShifterSpec>(element);
            const auto m = static_cast<Eigen::Index>(ps.mode);
            if (m >= n) {
                throw basis_error("phase shifter mode out of range for the network dimension");
            }
            step(m, m) = std::polar(1.0, ps.phase);
        }
        total = step * total;
    }
    return ScatteringMatrix(std::move(total));
}

}  // namespace qsagnac

#endif
