// SPDX-License-Identifier: Apache-2.0
//
// tlsm: two-level spatial multiplexing link simulator for mmWave backhaul
// Copyright (C) 2026 The tlsm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TLSM_CHANNEL_HPP
#define TLSM_CHANNEL_HPP

#include "tlsm/geometry.hpp"
#include "tlsm/numkit.hpp"

#include <cstddef>
#include <vector>

namespace tlsm
{
    // Square M x M subarray of isotropic elements.
    struct SubarrayLayout
    {
        std::size_t side = 8;
        double element_spacing = 0.0025;
        double wavelength = 0.005;
    };

    SubarrayLayout layout_of(const ScenarioConfig &cfg);

    // Element (m_x, m_y) sits at index m_x * M + m_y:
    // exp(j (2 pi d_e / lambda) (m_x sin(theta) cos(phi) + m_y sin(theta) sin(phi)))
    ComplexVector array_response(double theta, double phi, std::size_t side, double element_spacing,
                                 double wavelength);
    ComplexVector array_response(double theta, double phi, const SubarrayLayout &layout);

    // TE (perpendicular) Fresnel coefficient, incidence angle measured from the normal.
    cx fresnel_te_reflection(double incidence, const GroundMaterial &m);

    // Gamma * lambda / (4 pi D_p)
    cx path_gain(cx reflection, double length, double wavelength);

    // Entry (l, k) = exp(-j 2 pi D_p^(lk) / lambda).
    ComplexMatrix coupling_matrix(const PathGeometry &path, double wavelength);

    // Entry (l, k) = exp(-j pi (l - k)^2 / N), global phase dropped.
    ComplexMatrix los_coupling_fraunhofer(std::size_t n);

    ComplexMatrix ura_coupling_factorized(const ComplexMatrix &hx, const ComplexMatrix &hy);

    struct PathCoupling
    {
        PathGeometry geometry;
        cx gain;          // alpha_p
        cx reflection;    // Gamma_p, exactly 1 on the LoS path
        ComplexMatrix coupling;
        ComplexVector tx_response;
        ComplexVector rx_response;
    };

    PathCoupling make_path_coupling(const PathGeometry &path, const ScenarioConfig &cfg);

    // Path couplings for the scenario: LoS only (n_paths = 1) or LoS plus ground.
    std::vector<PathCoupling> build_path_couplings(const ScenarioConfig &cfg, std::size_t n_paths);

    // H = sum_p alpha_p (a_r a_t^T) kron H_p, size N M^2 x N M^2.
    ComplexMatrix assemble_channel(const std::vector<PathCoupling> &paths, std::size_t n_subarrays,
                                   std::size_t side);
}

#endif
