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

// Command-line front end: rotation phase, fringe sweeps, closed-form comparison, entanglement entropy.

#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "qsagnac.hpp"

namespace {

using namespace qsagnac;

struct GeometryOptions {
    RotationParameters params;
    double omega_min = 0.0;
    double omega_max = 0.0;
};

void add_geometry(CLI::App &cmd, GeometryOptions &g) {
    cmd.add_option("--radius", g.params.radius, "Loop radius R in m");
    cmd.add_option("--wavelength", g.params.wavelength, "Vacuum wavelength in m");
    cmd.add_option("--fiber-length", g.params.fiber_length, "Total fiber length L in m (0: single loop)");
    cmd.add_option("--light-speed", g.params.light_speed, "Speed of light in m/s")->capture_default_str();
}

struct FringeOptions {
    SweepConfig config;
    std::string scheme = "g2";
    std::string input;
    std::string format = "csv";
    std::string out = "-";
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    GeometryOptions geometry;
    CLI::Option *omega_min = nullptr;
    CLI::Option *omega_max = nullptr;
    CLI::Option *n_cut = nullptr;
    std::size_t n_cut_value = 0;
};

void add_fringe_options(CLI::App &cmd, FringeOptions &o) {
    cmd.add_option("--scheme", o.scheme, "classical|single_counts|coincidence|g2|p2|p4_2x2|p4_3x1")
        ->capture_default_str();
    cmd.add_option("--input", o.input, "classical|fock10|fock11|squeezed (default depends on scheme)");
    cmd.add_option("--r", o.config.r, "Squeezing magnitude")->capture_default_str();
    cmd.add_option("--theta", o.config.theta, "Squeezing phase in rad")->capture_default_str();
    cmd.add_option("--phi-min", o.config.phi_min, "First phase in rad")->capture_default_str();
    cmd.add_option("--phi-max", o.config.phi_max, "Last phase in rad")->capture_default_str();
    cmd.add_option("--steps", o.config.phi_steps, "Number of grid points")->capture_default_str();
    cmd.add_option("--tail-eps", o.config.tail_eps, "Squeezed-state tail tolerance")->capture_default_str();
    o.n_cut = cmd.add_option("--n-cut", o.n_cut_value, "Explicit photon-pair cutoff");
    cmd.add_option("--splitter-t2", o.config.splitter_t2, "|t|^2 of detector splitters BS1 [BS2]")->expected(1, 2);
    cmd.add_flag("--normalize", o.config.normalize, "Divide value and closed_form columns by their maxima");
    cmd.add_option("--format", o.format, "csv|json")->capture_default_str();
    cmd.add_option("--out", o.out, "Output path, - for stdout");
    cmd.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    o.omega_min = cmd.add_option("--omega-min", o.geometry.omega_min, "Sweep rotation rate from (rad/s)");
    o.omega_max = cmd.add_option("--omega-max", o.geometry.omega_max, "Sweep rotation rate to (rad/s)");
    add_geometry(cmd, o.geometry);
}

SweepConfig resolve(FringeOptions &o) {
    SweepConfig c = o.config;
    const auto scheme = parse_scheme(o.scheme);
    if (!scheme) {
        throw config_error("unknown scheme '" + o.scheme + "'");
    }
    c.scheme = *scheme;
    if (!o.input.empty()) {
        const auto input = parse_input(o.input);
        if (!input) {
            throw config_error("unknown input '" + o.input + "'");
        }
        c.input = *input;
    }
    if (*o.n_cut) {
        c.pair_cutoff = o.n_cut_value;
    }
    if (*o.omega_min || *o.omega_max) {
        if (!*o.omega_min || !*o.omega_max) {
            throw config_error("--omega-min and --omega-max go together");
        }
        c.rotation = OmegaSweep{o.geometry.params, o.geometry.omega_min, o.geometry.omega_max};
    }
    if (o.format != "csv" && o.format != "json") {
        throw config_error("unknown format '" + o.format + "'");
    }
    return c;
}

OutputFormat format_of(const FringeOptions &o) {
    return o.format == "json" ? OutputFormat::json : OutputFormat::csv;
}

int run(int argc, char **argv) {
    CLI::App app{"Quantum Sagnac interferometer fringe simulator"};
    app.require_subcommand(1);

    auto *phase = app.add_subcommand("phase", "Rotation-induced phase in rad");
    GeometryOptions geo;
    add_geometry(*phase, geo);
    phase->add_option("--omega", geo.params.angular_velocity, "Angular velocity in rad/s")->required();
    double area = 0.0;
    auto *area_opt = phase->add_option("--area", area, "Enclosed area in m^2 (default pi R^2)");
    bool show_delay = false;
    phase->add_flag("--delay", show_delay, "Also print the round-trip delay difference in s");

    auto *fringe = app.add_subcommand("fringe", "Sweep the phase and write a fringe dataset");
    FringeOptions fringe_opts;
    add_fringe_options(*fringe, fringe_opts);

    auto *compare = app.add_subcommand("compare", "Sweep and check against the closed form");
    FringeOptions compare_opts;
    compare_opts.out.clear();
    add_fringe_options(*compare, compare_opts);
    double tol = 1e-9;
    compare->add_option("--tol", tol, "Largest accepted abs_error")->capture_default_str();

    auto *entropy = app.add_subcommand("entropy", "Entanglement entropy of the squeezed source in bits");
    double entropy_r = 0.0;
    entropy->add_option("--r", entropy_r, "Squeezing magnitude")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*phase) {
        if (*area_opt) {
            geo.params.area = area;
        }
        std::printf("%s\n", detail::format_double(rotation_phase(geo.params)).c_str());
        if (show_delay) {
            std::printf("%s\n", detail::format_double(round_trip_delay(geo.params, false)).c_str());
        }
        return kExitOk;
    }
    if (*entropy) {
        std::printf("%s\n", detail::format_double(entanglement_entropy(entropy_r)).c_str());
        return kExitOk;
    }
    if (*fringe) {
        const SweepConfig config = resolve(fringe_opts);
        const FringeDataset data = run_sweep(config, fringe_opts.threads);
        emit(data, format_of(fringe_opts), fringe_opts.out);
        return kExitOk;
    }
    const SweepConfig config = resolve(compare_opts);
    const FringeDataset data = run_sweep(config, compare_opts.threads);
    if (!compare_opts.out.empty()) {
        emit(data, format_of(compare_opts), compare_opts.out);
    }
    const SweepReport report = compare_report(data, tol);
    print_report(report, std::cout);
    return report.within_tolerance ? kExitOk : kExitTolerance;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const qsagnac::truncation_error &e) {
        std::fprintf(stderr, "truncation error: %s\n", e.what());
        return qsagnac::kExitTruncation;
    } catch (const qsagnac::config_error &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return qsagnac::kExitUsage;
    } catch (const qsagnac::io_error &e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return qsagnac::kExitIo;
    } catch (const qsagnac::domain_error &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return qsagnac::kExitDomain;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
