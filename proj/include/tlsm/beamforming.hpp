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

#ifndef TLSM_BEAMFORMING_HPP
#define TLSM_BEAMFORMING_HPP

#include "tlsm/channel.hpp"
#include "tlsm/errors.hpp"
#include "tlsm/numkit.hpp"

#include <cstddef>
#include <vector>

namespace tlsm
{
    struct BeamPattern
    {
        double beta_x = 0.0; // progressive phase per element, radians
        double beta_y = 0.0;
        ComplexVector vector; // entry (m_x, m_y) = exp(j (m_x beta_x + m_y beta_y))
    };

    BeamPattern make_pattern(double beta_x, double beta_y, std::size_t side);

    // sin(theta) of the main lobe in the phi = 0 plane.
    double steering_sine(const BeamPattern &p, const SubarrayLayout &layout);

    struct Codebook
    {
        std::vector<BeamPattern> patterns;
    };

    // beta_x = n pi / 8 for n = -7..8 ascending, beta_y = 0.
    Codebook elevation_codebook(std::size_t side);

    struct RFConfig
    {
        SubarrayLayout layout;
        std::size_t n_subarrays = 1;
        std::vector<BeamPattern> tx_patterns;
        std::vector<BeamPattern> rx_patterns;

        std::size_t n_beams() const { return tx_patterns.size(); }
        // M^2 x B, columns are the pattern vectors
        ComplexMatrix tx_matrix() const;
        ComplexMatrix rx_matrix() const;
        // F_RF kron I_N and W_RF kron I_N
        ComplexMatrix tx_expanded() const;
        ComplexMatrix rx_expanded() const;
    };

    // Same beams at both ends, as in the mirror-symmetric backhaul scene.
    RFConfig make_rf_config(const SubarrayLayout &layout, std::size_t n_subarrays, const std::vector<double> &betas);

    // a(theta, phi)^T f
    cx beam_gain(double theta, double phi, const BeamPattern &pattern, const SubarrayLayout &layout);

    // |sin(M psi_x / 2) / sin(psi_x / 2)| * |sin(M psi_y / 2) / sin(psi_y / 2)|
    double beam_gain_magnitude(double theta, double phi, const BeamPattern &pattern, const SubarrayLayout &layout);

    // sin(M psi / 2) / sin(psi / 2), M at the removable singularities.
    double dirichlet(double psi, std::size_t side);

    ComplexVector gain_vector(const PathGeometry &path, const RFConfig &rf, Side side);

    // sum_p alpha_p (g_r g_t^T) kron H_p
    ComplexMatrix effective_channel(const std::vector<PathCoupling> &paths, const RFConfig &rf);

    // W_RF,N^T H F_RF,N from the physical channel
    ComplexMatrix effective_channel_from_physical(const ComplexMatrix &h, const RFConfig &rf);

    // sigma_n^2 (W_RF^T conj(W_RF)) kron I_N
    ComplexMatrix effective_noise_covariance(const RFConfig &rf, double noise_power);

    struct LinkSignals
    {
        ComplexVector s;
        ComplexVector z;
        ComplexVector x;
        ComplexVector y;
        ComplexVector n;
    };

    // y = W_BB^T W_RF,N^T (H F_RF,N F_BB s + n)
    LinkSignals apply_link(const ComplexVector &s, const ComplexMatrix &f_bb, const RFConfig &rf,
                           const ComplexMatrix &h, const ComplexMatrix &w_bb_t, const ComplexVector &noise);
}

#endif
