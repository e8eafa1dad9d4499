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

// Prints the normalized four-photon fringes of both detection schemes next to the g2 fringe.

#include <cstdio>
#include <numbers>

#include "qsagnac.hpp"

int main() {
    using namespace qsagnac;

    SweepConfig config;
    config.r = 1.0;
    config.phi_min = 0.0;
    config.phi_max = std::numbers::pi;
    config.phi_steps = 25;
    config.normalize = true;

    config.scheme = FringeScheme::p4_2x2;
    const auto two_by_two = run_sweep(config);
    config.scheme = FringeScheme::p4_3x1;
    const auto three_by_one = run_sweep(config);
    config.scheme = FringeScheme::g2;
    config.normalize = false;
    const auto g2 = run_sweep(config);

    std::printf("n_cut = %zu\n", *g2.pair_cutoff_used);
    std::printf("%10s %10s %10s %10s\n", "phi", "P4 2x2", "P4 3x1", "g2");
    for (std::size_t k = 0; k < g2.points.size(); k++) {
        std::printf("%10.4f %10.6f %10.6f %10.6f\n", g2.points[k].phi, two_by_two.points[k].value,
                    three_by_one.points[k].value, g2.points[k].value);
    }
    std::printf("g2 visibility %.12f\n", visibility(std::span<const FringePoint>(g2.points)));
    return 0;
}
