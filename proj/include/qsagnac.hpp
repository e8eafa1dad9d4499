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

#ifndef QSAGNAC_QSAGNAC_HPP
#define QSAGNAC_QSAGNAC_HPP

#include "qsagnac/detection.hpp"
#include "qsagnac/errors.hpp"
#include "qsagnac/fock.hpp"
#include "qsagnac/moment_oracle.hpp"
#include "qsagnac/optics_network.hpp"
#include "qsagnac/sagnac_physics.hpp"
#include "qsagnac/sources.hpp"
#include "qsagnac/sweep.hpp"

#endif
