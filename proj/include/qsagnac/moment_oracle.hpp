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

#ifndef QSAGNAC_MOMENT_ORACLE_HPP
#define QSAGNAC_MOMENT_ORACLE_HPP

#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qsagnac/errors.hpp"
#include "qsagnac/optics_network.hpp"

namespace qsagnac {

/// Second moments of a zero-mean Gaussian state: normal(i, j) = <b_i^dag b_j>, anomalous(i, j) = <b_i b_j>.
struct GaussianMoments {
    Eigen::MatrixXcd normal;
    Eigen::MatrixXcd anomalous;

    std::size_t mode_count() const {
        return static_cast<std::size_t>(normal.rows());
    }

    double mean_photons(std::size_t mode) const {
        const auto i = static_cast<Eigen::Index>(mode);
        return normal(i, i).real();
    }

    double total_photons() const {
        return normal.trace().real();
    }

    /// Largest violation of: normal Hermitian with non-negative diagonal, anomalous symmetric.
    double structure_defect() const {
        double defect = (normal - normal.adjoint()).cwiseAbs().maxCoeff();
        defect = std::max(defect, (anomalous - anomalous.transpose()).cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < normal.rows(); i++) {
            defect = std::max(defect, -normal(i, i).real());
        }
        return defect;
    }
};

/// Two-mode squeezed vacuum on modes 0, 1 (vacuum elsewhere). The sign of <a_1 a_2> follows the
/// (-e^{i theta} tanh r)^n amplitudes of the Fock-basis source.
inline GaussianMoments squeezed_input_moments(double r, double theta, std::size_t mode_count) {
    if (mode_count < 2) {
        throw basis_error("squeezed moments need at least two modes");
    }
    if (!(r >= 0.0)) {
        throw domain_error("squeezing magnitude r must be non-negative");
    }
    const auto n = static_cast<Eigen::Index>(mode_count);
    GaussianMoments m{Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
    const double s = std::sinh(r);
    const double c = std::cosh(r);
    m.normal(0, 0) = s * s;
    m.normal(1, 1) = s * s;
    const std::complex<double> pair = -std::polar(s * c, theta);
    m.anomalous(0, 1) = pair;
    m.anomalous(1, 0) = pair;
    return m;
}

/// Heisenberg propagation b = S a: normal' = conj(S) normal S^T, anomalous' = S anomalous S^T.
inline GaussianMoments transform_moments(const ScatteringMatrix &s, const GaussianMoments &m) {
    if (s.dimension() != m.mode_count()) {
        throw basis_error("scattering matrix and moments have different mode counts");
    }
    const Eigen::MatrixXcd &u = s.matrix();
    return {u.conjugate() * m.normal * u.transpose(), u * m.anomalous * u.transpose()};
}

/// <b_i^dag b_j^dag b_j b_i> = <n_i><n_j> + |<b_i^dag b_j>|^2 + |<b_i b_j>|^2 for i != j.
inline double wick_pair_correlator(const GaussianMoments &m, std::size_t i, std::size_t j) {
    if (i >= m.mode_count() || j >= m.mode_count()) {
        throw basis_error("mode index out of range");
    }
    if (i == j) {
        throw basis_error("wick_pair_correlator needs two distinct modes");
    }
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    return m.normal(a, a).real() * m.normal(b, b).real() + std::norm(m.normal(a, b)) + std::norm(m.anomalous(a, b));
}

/// g2 of the squeezed input behind the ring at phase phi, free of truncation.
inline double oracle_g2(double r, double theta, double phi) {
    if (!(r > 0.0)) {
        throw domain_error("g2 is undefined at r = 0");
    }
    const GaussianMoments out = transform_moments(sagnac_scattering(phi), squeezed_input_moments(r, theta, 2));
    const double n1 = out.mean_photons(0);
    const double n2 = out.mean_photons(1);
    return (wick_pair_correlator(out, 0, 1) - n1 * n2) / (n1 * n2);
}

}  // namespace qsagnac

#endif
