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

#ifndef QSAGNAC_ERRORS_HPP
#define QSAGNAC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsagnac {

/// Parameter outside the physical domain of a formula (e.g. superluminal rim speed, r = 0 in g2).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Occupation, mode index or cutoff incompatible with a FockBasis.
struct basis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Squeezed-state truncation discards more probability than the caller allows.
struct truncation_error : std::runtime_error {
    truncation_error(const std::string &what, std::size_t suggested_pair_cutoff)
        : std::runtime_error(what), suggested_pair_cutoff(suggested_pair_cutoff) {
    }
    std::size_t suggested_pair_cutoff;
};

}  // namespace qsagnac

#endif
