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

#ifndef QSAGNAC_FOCK_HPP
#define QSAGNAC_FOCK_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsagnac/errors.hpp"

namespace qsagnac {

using Amplitude = std::complex<double>;

/// Photon count per optical mode.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<std::uint32_t> counts) : counts_(std::move(counts)) {
    }
    OccupationVector(std::initializer_list<std::uint32_t> counts) : counts_(counts) {
    }

    std::size_t mode_count() const {
        return counts_.size();
    }
    std::uint32_t operator[](std::size_t mode) const {
        return counts_[mode];
    }
    std::uint32_t &operator[](std::size_t mode) {
        return counts_[mode];
    }
    std::span<const std::uint32_t> counts() const {
        return counts_;
    }
    std::size_t total() const {
        std::size_t sum = 0;
        for (auto n : counts_) {
            sum += n;
        }
        return sum;
    }
    std::string str() const {
        std::string out = "|";
        for (std::size_t k = 0; k < counts_.size(); k++) {
            if (k) {
                out += ',';
            }
            out += std::to_string(counts_[k]);
        }
        return out + ">";
    }

    bool operator==(const OccupationVector &) const = default;
    auto operator<=>(const OccupationVector &) const = default;

   private:
    std::vector<std::uint32_t> counts_;
};

/// Fock space over `mode_count` modes truncated at a total photon number.
///
/// Occupation vectors are packed into a 64-bit key, mode 0 in the most significant field, so the
/// natural key order is lexicographic in the counts. This bounds mode_count * bit_width(cutoff) <= 64.
class FockBasis {
   public:
    using Key = std::uint64_t;

    FockBasis(std::size_t mode_count, std::size_t total_photon_cutoff)
        : mode_count_(mode_count), cutoff_(total_photon_cutoff) {
        if (mode_count == 0) {
            throw basis_error("a Fock basis needs at least one mode");
        }
        bits_ = std::max<unsigned>(1, static_cast<unsigned>(std::bit_width(total_photon_cutoff)));
        if (mode_count * bits_ > 64) {
            throw basis_error(
                "Fock basis with " + std::to_string(mode_count) + " modes and cutoff " +
                std::to_string(total_photon_cutoff) + " cannot be indexed with 64-bit keys");
        }
    }

    std::size_t mode_count() const {
        return mode_count_;
    }
    std::size_t total_photon_cutoff() const {
        return cutoff_;
    }

    bool contains(const OccupationVector &occupation) const {
        return occupation.mode_count() == mode_count_ && occupation.total() <= cutoff_;
    }

    void require(const OccupationVector &occupation) const {
        if (occupation.mode_count() != mode_count_) {
            throw basis_error(
                "occupation " + occupation.str() + " has " + std::to_string(occupation.mode_count()) +
                " modes, basis has " + std::to_string(mode_count_));
        }
        if (occupation.total() > cutoff_) {
            throw basis_error(
                "occupation " + occupation.str() + " exceeds the total photon cutoff " + std::to_string(cutoff_));
        }
    }

    void require_mode(std::size_t mode) const {
        if (mode >= mode_count_) {
            throw basis_error(
                "mode index " + std::to_string(mode) + " out of range for " + std::to_string(mode_count_) + " modes");
        }
    }

    Key pack(const OccupationVector &occupation) const {
        require(occupation);
        Key key = 0;
        for (std::size_t m = 0; m < mode_count_; m++) {
            key = with_count(key, m, occupation[m]);
        }
        return key;
    }

    OccupationVector unpack(Key key) const {
        std::vector<std::uint32_t> counts(mode_count_);
        for (std::size_t m = 0; m < mode_count_; m++) {
            counts[m] = count(key, m);
        }
        return OccupationVector(std::move(counts));
    }

    std::uint32_t count(Key key, std::size_t mode) const {
        return static_cast<std::uint32_t>((key >> shift(mode)) & field_mask());
    }

    Key with_count(Key key, std::size_t mode, std::uint64_t n) const {
        const unsigned s = shift(mode);
        return (key & ~(field_mask() << s)) | (n << s);
    }

    std::size_t key_total(Key key) const {
        std::size_t sum = 0;
        for (std::size_t m = 0; m < mode_count_; m++) {
            sum += count(key, m);
        }
        return sum;
    }

    /// Number of occupation vectors with total <= cutoff, i.e. C(cutoff + modes, modes).
    double dimension() const {
        double d = 1.0;
        for (std::size_t k = 1; k <= mode_count_; k++) {
            d = d * static_cast<double>(cutoff_ + k) / static_cast<double>(k);
        }
        return d;
    }

    /// Visits every occupation vector in the basis, ordered by total photon number and then
    /// lexicographically descending in mode 0, 1, ...
    template <typename F>
    void for_each_occupation(F &&visit) const {
        std::vector<std::uint32_t> counts(mode_count_, 0);
        for (std::size_t total = 0; total <= cutoff_; total++) {
            fill(counts, 0, total, visit);
        }
    }

    bool operator==(const FockBasis &other) const {
        return mode_count_ == other.mode_count_ && cutoff_ == other.cutoff_;
    }

   private:
    Key field_mask() const {
        return bits_ == 64 ? ~Key{0} : ((Key{1} << bits_) - 1);
    }
    unsigned shift(std::size_t mode) const {
        return static_cast<unsigned>((mode_count_ - 1 - mode) * bits_);
    }

    template <typename F>
    void fill(std::vector<std::uint32_t> &counts, std::size_t mode, std::size_t remaining, F &visit) const {
        if (mode + 1 == mode_count_) {
            counts[mode] = static_cast<std::uint32_t>(remaining);
            visit(OccupationVector(counts));
            return;
        }
        for (std::size_t n = remaining + 1; n-- > 0;) {
            counts[mode] = static_cast<std::uint32_t>(n);
            fill(counts, mode + 1, remaining - n, visit);
        }
    }

    std::size_t mode_count_;
    std::size_t cutoff_;
    unsigned bits_ = 1;
};

/// Sparse pure state: amplitudes on occupation vectors of a FockBasis, absent entries are zero.
///
/// May be sub-normalized (a truncated squeezed state is not renormalized). Entries are kept sorted by
/// packed key, so iteration and every reduction over the state are deterministic.
class PureState {
   public:
    using Key = FockBasis::Key;
    using Entry = std::pair<Key, Amplitude>;

    static constexpr double kNormSlack = 1e-12;

    explicit PureState(FockBasis basis) : basis_(std::move(basis)) {
    }

    /// Takes ownership of (key, amplitude) pairs. Keys must come from `basis.pack`; duplicates are summed.
    PureState(FockBasis basis, std::vector<Entry> entries) : basis_(std::move(basis)), entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) { return a.first < b.first; });
        std::size_t out = 0;
        for (std::size_t k = 0; k < entries_.size(); k++) {
            if (basis_.key_total(entries_[k].first) > basis_.total_photon_cutoff()) {
                throw basis_error("amplitude on " + basis_.unpack(entries_[k].first).str() + " exceeds the cutoff");
            }
            if (out > 0 && entries_[out - 1].first == entries_[k].first) {
                entries_[out - 1].second += entries_[k].second;
            } else {
                entries_[out++] = entries_[k];
            }
        }
        entries_.resize(out);
        if (norm_squared() > 1.0 + kNormSlack) {
            throw domain_error("state norm exceeds 1: " + std::to_string(norm_squared()));
        }
    }

    const FockBasis &basis() const {
        return basis_;
    }
    std::span<const Entry> entries() const {
        return entries_;
    }
    std::size_t stored_count() const {
        return entries_.size();
    }

    Amplitude amplitude(const OccupationVector &occupation) const {
        const Key key = basis_.pack(occupation);
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), key, [](const Entry &e, Key k) { return e.first < k; });
        return (it != entries_.end() && it->first == key) ? it->second : Amplitude{};
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const auto &[key, amp] : entries_) {
            sum += std::norm(amp);
        }
        return sum;
    }

    /// Returns a copy multiplied by exp(i*phase).
    PureState with_global_phase(double phase) const {
        PureState out = *this;
        const Amplitude factor = std::polar(1.0, phase);
        for (auto &entry : out.entries_) {
            entry.second *= factor;
        }
        return out;
    }

   private:
    FockBasis basis_;
    std::vector<Entry> entries_;
};

inline PureState make_fock_state(const FockBasis &basis, const OccupationVector &occupation) {
    return PureState(basis, {{basis.pack(occupation), Amplitude{1.0, 0.0}}});
}

inline double norm(const PureState &state) {
    return std::sqrt(state.norm_squared());
}

inline Amplitude amplitude(const PureState &state, const OccupationVector &occupation) {
    return state.amplitude(occupation);
}

/// <n_mode> on the stored (possibly truncated) amplitudes.
inline double number_expectation(const PureState &state, std::size_t mode) {
    const FockBasis &basis = state.basis();
    basis.require_mode(mode);
    double sum = 0.0;
    for (const auto &[key, amp] : state.entries()) {
        sum += basis.count(key, mode) * std::norm(amp);
    }
    return sum;
}

/// <n_i n_j> for i != j, which equals the normally ordered <b_i^dag b_j^dag b_j b_i>.
inline double pair_correlator(const PureState &state, std::size_t mode_i, std::size_t mode_j) {
    const FockBasis &basis = state.basis();
    basis.require_mode(mode_i);
    basis.require_mode(mode_j);
    if (mode_i == mode_j) {
        throw basis_error("pair_correlator needs two distinct modes");
    }
    double sum = 0.0;
    for (const auto &[key, amp] : state.entries()) {
        sum += static_cast<double>(basis.count(key, mode_i)) * basis.count(key, mode_j) * std::norm(amp);
    }
    return sum;
}

inline double projection_probability(const PureState &state, const OccupationVector &occupation) {
    return std::norm(state.amplitude(occupation));
}

/// Probability mass per total photon number, index = total.
inline std::vector<double> photon_number_distribution(const PureState &state) {
    const FockBasis &basis = state.basis();
    std::vector<double> mass(basis.total_photon_cutoff() + 1, 0.0);
    for (const auto &[key, amp] : state.entries()) {
        mass[basis.key_total(key)] += std::norm(amp);
    }
    return mass;
}

/// Copy keeping only occupations with at most `max_total` photons.
inline PureState restrict_photon_number(const PureState &state, std::size_t max_total) {
    const FockBasis &basis = state.basis();
    std::vector<PureState::Entry> kept;
    for (const auto &entry : state.entries()) {
        if (basis.key_total(entry.first) <= max_total) {
            kept.push_back(entry);
        }
    }
    return PureState(basis, std::move(kept));
}

}  // namespace qsagnac

#endif
