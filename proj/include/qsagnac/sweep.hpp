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

#ifndef QSAGNAC_SWEEP_HPP
#define QSAGNAC_SWEEP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "qsagnac/detection.hpp"
#include "qsagnac/errors.hpp"
#include "qsagnac/fock.hpp"
#include "qsagnac/sagnac_physics.hpp"
#include "qsagnac/sources.hpp"

namespace qsagnac {

/// Invalid sweep configuration.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Process exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitTruncation = 3,
    kExitTolerance = 4,
    kExitIo = 5,
    kExitDomain = 6,
};

enum class FringeScheme { classical, single_counts, coincidence, g2, p2, p4_2x2, p4_3x1 };
enum class InputKind { classical_field, fock10, fock11, squeezed };
enum class OutputFormat { csv, json };

inline constexpr std::string_view to_string(FringeScheme s) {
    switch (s) {
        case FringeScheme::classical:
            return "classical";
        case FringeScheme::single_counts:
            return "single_counts";
        case FringeScheme::coincidence:
            return "coincidence";
        case FringeScheme::g2:
            return "g2";
        case FringeScheme::p2:
            return "p2";
        case FringeScheme::p4_2x2:
            return "p4_2x2";
        case FringeScheme::p4_3x1:
            return "p4_3x1";
    }
    return "?";
}

inline constexpr std::string_view to_string(InputKind k) {
    switch (k) {
        case InputKind::classical_field:
            return "classical";
        case InputKind::fock10:
            return "fock10";
        case InputKind::fock11:
            return "fock11";
        case InputKind::squeezed:
            return "squeezed";
    }
    return "?";
}

inline std::optional<FringeScheme> parse_scheme(std::string_view name) {
    for (auto s : {FringeScheme::classical, FringeScheme::single_counts, FringeScheme::coincidence, FringeScheme::g2,
                   FringeScheme::p2, FringeScheme::p4_2x2, FringeScheme::p4_3x1}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

inline std::optional<InputKind> parse_input(std::string_view name) {
    for (auto k : {InputKind::classical_field, InputKind::fock10, InputKind::fock11, InputKind::squeezed}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

/// Sweep over the rotation rate instead of the phase: the phi range is derived from omega_min/max.
struct OmegaSweep {
    RotationParameters geometry;
    double omega_min = 0.0;
    double omega_max = 0.0;
};

struct SweepConfig {
    FringeScheme scheme = FringeScheme::g2;
    std::optional<InputKind> input;
    double r = 1.0;
    double theta = 0.0;
    double phi_min = 0.0;
    double phi_max = 2.0 * std::numbers::pi;
    std::size_t phi_steps = 241;
    std::optional<std::size_t> pair_cutoff;
    double tail_eps = kDefaultTailTolerance;
    std::vector<double> splitter_t2;  // |t|^2 of the detector splitters, missing entries are 1/2
    bool normalize = false;
    std::optional<OmegaSweep> rotation;

    InputKind resolved_input() const {
        if (input) {
            return *input;
        }
        switch (scheme) {
            case FringeScheme::classical:
                return InputKind::classical_field;
            case FringeScheme::single_counts:
                return InputKind::fock10;
            case FringeScheme::coincidence:
                return InputKind::fock11;
            default:
                return InputKind::squeezed;
        }
    }

    DetectorSplitters splitters() const {
        const double first = splitter_t2.size() > 0 ? splitter_t2[0] : 0.5;
        const double second = splitter_t2.size() > 1 ? splitter_t2[1] : 0.5;
        return DetectorSplitters::with_transmissivity(first, second);
    }

    std::pair<double, double> phi_range() const {
        if (!rotation) {
            return {phi_min, phi_max};
        }
        RotationParameters lo = rotation->geometry;
        RotationParameters hi = rotation->geometry;
        lo.angular_velocity = rotation->omega_min;
        hi.angular_velocity = rotation->omega_max;
        return {rotation_phase(lo), rotation_phase(hi)};
    }

    /// Inclusive uniform grid from phi_min to phi_max.
    std::vector<double> phi_grid() const {
        const auto [lo, hi] = phi_range();
        std::vector<double> grid(phi_steps);
        const double step = (hi - lo) / static_cast<double>(phi_steps - 1);
        for (std::size_t k = 0; k < phi_steps; k++) {
            grid[k] = k + 1 == phi_steps ? hi : lo + step * static_cast<double>(k);
        }
        return grid;
    }

    void validate() const {
        if (phi_steps < 2) {
            throw config_error("phi grid needs at least 2 steps");
        }
        if (!std::isfinite(phi_min) || !std::isfinite(phi_max) || !(phi_max > phi_min)) {
            throw config_error("phi range must be finite with phi_max > phi_min");
        }
        if (!(tail_eps > 0.0 && tail_eps < 1.0)) {
            throw config_error("tail tolerance must lie in (0, 1)");
        }
        if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(theta)) {
            throw config_error("r must be finite and non-negative, theta finite");
        }
        if (splitter_t2.size() > 2) {
            throw config_error("at most two detector splitters");
        }
        for (double t2 : splitter_t2) {
            if (!(t2 >= 0.0 && t2 <= 1.0)) {
                throw config_error("splitter transmissivity must lie in [0, 1]");
            }
        }
        if (rotation) {
            try {
                const auto [lo, hi] = phi_range();
                if (!(hi > lo)) {
                    throw config_error("omega range must map to an increasing phase range");
                }
            } catch (const domain_error &e) {
                throw config_error(std::string("rotation parameters: ") + e.what());
            }
        }
        const InputKind in = resolved_input();
        bool ok = false;
        switch (scheme) {
            case FringeScheme::classical:
                ok = in == InputKind::classical_field;
                break;
            case FringeScheme::single_counts:
                ok = in == InputKind::fock10 || in == InputKind::fock11 || in == InputKind::squeezed;
                break;
            case FringeScheme::coincidence:
                ok = in == InputKind::fock11 || in == InputKind::squeezed;
                break;
            default:
                ok = in == InputKind::squeezed;
                break;
        }
        if (!ok) {
            throw config_error(
                "input '" + std::string(to_string(in)) + "' is not supported by scheme '" +
                std::string(to_string(scheme)) + "'");
        }
        if (in == InputKind::squeezed && scheme == FringeScheme::g2 && r == 0.0) {
            throw config_error("g2 needs r > 0");
        }
    }

    SqueezedSourceParams source() const {
        return {r, theta, pair_cutoff, tail_eps};
    }
};

struct FringeDataset {
    SweepConfig config;
    std::optional<std::size_t> pair_cutoff_used;
    std::vector<FringePoint> points;
};

/// Largest total photon number of the squeezed input evolved in four-photon sweeps.
inline constexpr std::size_t kFourPhotonSweepBlocks = 8;

namespace detail {

inline std::size_t required_modes(FringeScheme s) {
    return (s == FringeScheme::p4_2x2 || s == FringeScheme::p4_3x1) ? 4 : 2;
}

inline PureState sweep_input(const SweepConfig &config, std::optional<std::size_t> &pair_cutoff_used) {
    const std::size_t modes = required_modes(config.scheme);
    switch (config.resolved_input()) {
        case InputKind::fock10:
            return make_fock_state(FockBasis(modes, 1), OccupationVector{1, 0});
        case InputKind::fock11:
            return make_fock_state(FockBasis(modes, 2), OccupationVector{1, 1});
        case InputKind::squeezed: {
            const SqueezedSourceParams params = config.source();
            const std::size_t n_cut = resolve_pair_cutoff(params);
            pair_cutoff_used = n_cut;
            const std::size_t floor = modes == 4 ? 4 : 0;
            PureState state = two_mode_squeezed_vacuum(params, FockBasis(modes, std::max(2 * n_cut, floor)));
            if (modes == 4) {
                // The four-photon projection only sees the two-pair block. Keep two more pair blocks
                // so the conservation check still has neighbours to separate from.
                state = restrict_photon_number(state, kFourPhotonSweepBlocks);
            }
            return state;
        }
        case InputKind::classical_field:
            break;
    }
    throw std::logic_error("no quantum input for the classical scheme");
}

inline FringePoint sweep_point(const SweepConfig &config, const PureState *input, double phi) {
    const InputKind in = config.resolved_input();
    switch (config.scheme) {
        case FringeScheme::classical: {
            const double value = classical_fringe(ClassicalField{}, phi).detector1;
            return FringePoint::make(phi, value, closed_form::single_photon(phi).detector1 * 1.0);
        }
        case FringeScheme::single_counts: {
            const double value = single_counts(*input, phi).detector1;
            double expected = closed_form::single_photon(phi).detector1;
            if (in == InputKind::fock11) {
                expected = 1.0;
            } else if (in == InputKind::squeezed) {
                expected = closed_form::squeezed_single_counts(config.r);
            }
            return FringePoint::make(phi, value, expected);
        }
        case FringeScheme::coincidence: {
            const double expected = in == InputKind::fock11 ? closed_form::two_photon_coincidence(phi)
                                                           : closed_form::squeezed_coincidence(config.r, phi);
            return FringePoint::make(phi, coincidence_12(*input, phi), expected);
        }
        case FringeScheme::g2:
            return FringePoint::make(phi, g2_normalized(*input, phi), closed_form::g2(config.r, phi));
        case FringeScheme::p2:
            return FringePoint::make(phi, p2_projective(*input, phi), closed_form::p2(config.r, phi));
        case FringeScheme::p4_2x2: {
            const auto s = config.splitters();
            return FringePoint::make(phi, p4_2x2(*input, phi, s), closed_form::p4_2x2(config.r, phi, s));
        }
        case FringeScheme::p4_3x1: {
            const auto s = config.splitters();
            return FringePoint::make(phi, p4_3x1(*input, phi, s), closed_form::p4_3x1(config.r, phi, s));
        }
    }
    throw std::logic_error("unknown scheme");
}

inline void normalize_columns(std::vector<FringePoint> &points) {
    double value_max = 0.0;
    double closed_max = 0.0;
    for (const auto &p : points) {
        value_max = std::max(value_max, p.value);
        closed_max = std::max(closed_max, p.closed_form);
    }
    for (auto &p : points) {
        const double v = value_max > 0.0 ? p.value / value_max : p.value;
        const double c = closed_max > 0.0 ? p.closed_form / closed_max : p.closed_form;
        p = FringePoint::make(p.phi, v, c);
    }
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// One FringePoint per grid phase, ordered by phi. Points are independent and may be computed on
/// `threads` workers; the result does not depend on the worker count.
inline FringeDataset run_sweep(const SweepConfig &config, std::size_t threads = 1) {
    config.validate();
    FringeDataset out{config, std::nullopt, {}};
    std::optional<PureState> input;
    if (config.scheme != FringeScheme::classical) {
        input.emplace(detail::sweep_input(config, out.pair_cutoff_used));
    }
    const std::vector<double> grid = config.phi_grid();
    out.points.resize(grid.size());
    const PureState *shared = input ? &*input : nullptr;
    threads = std::clamp<std::size_t>(threads, 1, grid.size());

    if (threads == 1) {
        for (std::size_t k = 0; k < grid.size(); k++) {
            out.points[k] = detail::sweep_point(config, shared, grid[k]);
        }
    } else {
        std::vector<std::exception_ptr> failures(threads);
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (std::size_t w = 0; w < threads; w++) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t k = w; k < grid.size(); k += threads) {
                        out.points[k] = detail::sweep_point(config, shared, grid[k]);
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto &t : workers) {
            t.join();
        }
        for (auto &f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
    }
    if (config.normalize) {
        detail::normalize_columns(out.points);
    }
    return out;
}

inline constexpr std::string_view kCsvHeader = "scheme,r,theta,phi,value,closed_form,abs_error";

inline void write_csv(const FringeDataset &data, std::ostream &os) {
    os << kCsvHeader << '\n';
    const std::string prefix = std::string(to_string(data.config.scheme)) + ',' +
                               detail::format_double(data.config.r) + ',' +
                               detail::format_double(data.config.theta) + ',';
    for (const auto &p : data.points) {
        os << prefix << detail::format_double(p.phi) << ',' << detail::format_double(p.value) << ','
           << detail::format_double(p.closed_form) << ',' << detail::format_double(p.abs_error) << '\n';
    }
}

inline nlohmann::json to_json(const FringeDataset &data) {
    const SweepConfig &c = data.config;
    const auto [phi_lo, phi_hi] = c.phi_range();
    nlohmann::json config = {
        {"scheme", to_string(c.scheme)},
        {"input", to_string(c.resolved_input())},
        {"r", c.r},
        {"theta", c.theta},
        {"phi_min", phi_lo},
        {"phi_max", phi_hi},
        {"phi_steps", c.phi_steps},
        {"tail_eps", c.tail_eps},
        {"normalize", c.normalize},
        {"splitter_t2", c.splitter_t2},
    };
    config["n_cut"] = data.pair_cutoff_used ? nlohmann::json(*data.pair_cutoff_used) : nlohmann::json(nullptr);
    if (c.rotation) {
        const auto &g = c.rotation->geometry;
        config["rotation"] = {
            {"radius", g.radius},
            {"wavelength", g.wavelength},
            {"fiber_length", g.fiber_length},
            {"area", g.enclosed_area()},
            {"light_speed", g.light_speed},
            {"omega_min", c.rotation->omega_min},
            {"omega_max", c.rotation->omega_max},
        };
    }
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : data.points) {
        points.push_back({
            {"scheme", to_string(c.scheme)},
            {"r", c.r},
            {"theta", c.theta},
            {"phi", p.phi},
            {"value", p.value},
            {"closed_form", p.closed_form},
            {"abs_error", p.abs_error},
        });
    }
    return {{"config", std::move(config)}, {"points", std::move(points)}};
}

/// Writes the dataset to `path`, or to stdout when path is empty or "-".
inline void emit(const FringeDataset &data, OutputFormat format, const std::filesystem::path &path) {
    std::ostringstream buffer;
    if (format == OutputFormat::csv) {
        write_csv(data, buffer);
    } else {
        buffer << to_json(data).dump(2) << '\n';
    }
    if (path.empty() || path == "-") {
        std::fwrite(buffer.str().data(), 1, buffer.str().size(), stdout);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw io_error("cannot open '" + path.string() + "' for writing");
    }
    file << buffer.str();
    file.flush();
    if (!file) {
        throw io_error("failed writing '" + path.string() + "'");
    }
}

struct CsvRow {
    std::string scheme;
    double r = 0.0;
    double theta = 0.0;
    FringePoint point;
};

inline std::vector<CsvRow> parse_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) {
        throw io_error("missing or unexpected CSV header");
    }
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 7) {
            throw io_error("CSV row with " + std::to_string(fields.size()) + " fields: " + line);
        }
        CsvRow row;
        row.scheme = fields[0];
        row.r = std::stod(fields[1]);
        row.theta = std::stod(fields[2]);
        row.point = {std::stod(fields[3]), std::stod(fields[4]), std::stod(fields[5]), std::stod(fields[6])};
        rows.push_back(row);
    }
    return rows;
}

/// Fringe period from the first autocorrelation peak of uniformly spaced samples.
///
/// The autocorrelation is normalized per lag, 2 sum d_i d_{i+k} / sum (d_i^2 + d_{i+k}^2) on the
/// mean-removed series, so it reaches exactly 1 at a lag equal to the period regardless of how many
/// periods the window holds (a period equal to the sampled span still registers at the last lag).
/// Positive local maxima after the first negative lobe are candidates; the first one within 10% of the
/// best is taken and refined by a parabola through three lags. Returns nullopt for a constant series
/// or when no peak is found.
inline std::optional<double> estimate_period(std::span<const double> values, double step) {
    const std::size_t n = values.size();
    if (n < 4) {
        return std::nullopt;
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);
    std::vector<double> d(n);
    double scale = 0.0;
    double energy = 0.0;
    for (std::size_t i = 0; i < n; i++) {
        d[i] = values[i] - mean;
        scale = std::max(scale, std::abs(values[i]));
        energy += d[i] * d[i];
    }
    if (!(energy > 1e-24 * static_cast<double>(n) * std::max(1.0, scale * scale))) {
        return std::nullopt;
    }
    std::vector<double> acf(n, 0.0);
    for (std::size_t k = 0; k < n; k++) {
        double cross = 0.0;
        double power = 0.0;
        for (std::size_t i = 0; i + k < n; i++) {
            cross += d[i] * d[i + k];
            power += d[i] * d[i] + d[i + k] * d[i + k];
        }
        acf[k] = power > 0.0 ? 2.0 * cross / power : 0.0;
    }
    // Leave the zero-lag lobe first.
    std::size_t start = 1;
    while (start < n && acf[start] > 0.0) {
        start++;
    }
    std::vector<std::size_t> peaks;
    double best = 0.0;
    for (std::size_t k = start; k < n; k++) {
        const bool last = k + 1 == n;
        if (acf[k] > 0.0 && acf[k] >= acf[k - 1] && (last || acf[k] > acf[k + 1])) {
            peaks.push_back(k);
            best = std::max(best, acf[k]);
        }
    }
    for (std::size_t k : peaks) {
        if (acf[k] < 0.9 * best) {
            continue;
        }
        double offset = 0.0;
        if (k + 1 < n) {
            const double denom = acf[k - 1] - 2.0 * acf[k] + acf[k + 1];
            if (denom != 0.0) {
                offset = 0.5 * (acf[k - 1] - acf[k + 1]) / denom;
            }
        }
        return (static_cast<double>(k) + offset) * step;
    }
    return std::nullopt;
}

struct SweepReport {
    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    std::optional<double> visibility;
    std::optional<double> period;
    double tolerance = 0.0;
    bool within_tolerance = true;
};

inline SweepReport compare_report(const FringeDataset &data, double tolerance) {
    if (data.points.empty()) {
        throw config_error("cannot report on an empty dataset");
    }
    SweepReport report;
    report.tolerance = tolerance;
    std::vector<double> values;
    values.reserve(data.points.size());
    for (const auto &p : data.points) {
        report.max_abs_error = std::max(report.max_abs_error, p.abs_error);
        report.mean_abs_error += p.abs_error;
        values.push_back(p.value);
    }
    report.mean_abs_error /= static_cast<double>(data.points.size());
    try {
        report.visibility = visibility(std::span<const double>(values));
    } catch (const domain_error &) {
        report.visibility = std::nullopt;
    }
    if (data.points.size() >= 2) {
        const double step = data.points[1].phi - data.points[0].phi;
        report.period = estimate_period(values, step);
    }
    report.within_tolerance = report.max_abs_error <= tolerance;
    return report;
}

inline void print_report(const SweepReport &report, std::ostream &os) {
    os << "max_abs_error  " << detail::format_double(report.max_abs_error) << '\n';
    os << "mean_abs_error " << detail::format_double(report.mean_abs_error) << '\n';
    os << "visibility     " << (report.visibility ? detail::format_double(*report.visibility) : "undefined") << '\n';
    os << "period         " << (report.period ? detail::format_double(*report.period) : "none") << '\n';
    os << "tolerance      " << detail::format_double(report.tolerance) << ' '
       << (report.within_tolerance ? "PASS" : "FAIL") << '\n';
}

}  // namespace qsagnac

#endif
