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

#ifndef TLSM_CAPACITY_HPP
#define TLSM_CAPACITY_HPP

#include "tlsm/beamforming.hpp"
#include "tlsm/channel.hpp"
#include "tlsm/numkit.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tlsm
{
    struct WaterfillingResult
    {
        std::vector<double> singular_values; // descending
        std::vector<double> powers;          // watts
        std::optional<double> water_level;   // empty when every singular value is zero
        std::vector<double> snrs;            // linear
        double capacity = 0.0;               // bits/s/Hz
        std::size_t n_streams = 0;
    };

    // Exact active-set waterfilling over parallel channels with gains sigma_q^2.
    WaterfillingResult waterfill(std::span<const double> sigma, double noise_power, double power_constraint);

    // Relative threshold below which an allocation does not count as a stream.
    inline constexpr double stream_threshold = 1e-12;

    struct Whitening
    {
        ComplexMatrix tx; // (F_RF,N^H F_RF,N)^(-1/2)
        ComplexMatrix rx; // (W_RF,N^T conj(W_RF,N))^(-1/2)
    };

    // Throws RankDeficientGram naming the side whose Gram matrix is singular.
    Whitening rf_whitening(const RFConfig &rf);

    ComplexMatrix extended_channel(const ComplexMatrix &h_eff, const RFConfig &rf);
    ComplexMatrix extended_channel(const ComplexMatrix &h_eff, const Whitening &w);

    struct PrecoderSet
    {
        ComplexMatrix f_bb;
        ComplexMatrix w_bb_t;
        ComplexMatrix psi; // diag(sqrt(P_q))
    };

    PrecoderSet baseband_precoders(const SvdResult &s, const WaterfillingResult &wf, const RFConfig &rf);
    PrecoderSet baseband_precoders(const SvdResult &s, const WaterfillingResult &wf, const Whitening &w);

    // log2 det(I + R_n^-1 A R_s A^H) with A = W_BB^T W_RF,N^T H F_RF,N F_BB and
    // R_n = sigma_n^2 (W_BB^T W_RF,N^T)(W_BB^T W_RF,N^T)^H. R_s = I when omitted.
    double spectral_efficiency(const ComplexMatrix &h, const RFConfig &rf, const ComplexMatrix &f_bb,
                               const ComplexMatrix &w_bb_t, double noise_power,
                               const ComplexMatrix *signal_covariance = nullptr);

    struct InnerResult
    {
        ComplexMatrix effective;
        ComplexMatrix extended;
        SvdResult decomposition;
        WaterfillingResult allocation;
        PrecoderSet precoders;
    };

    InnerResult inner_capacity(const std::vector<PathCoupling> &paths, const RFConfig &rf, double noise_power,
                               double power_constraint);

    struct CandidateScore
    {
        double beta2 = 0.0;
        double capacity = 0.0;
    };

    struct OuterResult
    {
        double beta1 = 0.0;
        double beta2 = 0.0;
        double capacity = 0.0;
        InnerResult inner;
        std::vector<CandidateScore> scores; // ascending beta2
    };

    // pi/8, 2pi/8, 3pi/8, 4pi/8
    std::vector<double> default_beta2_candidates();

    // Exhaustive search over the second beam with the first fixed. Candidates equal to
    // beta1 and repeated candidates are dropped; ties go to the smaller beta2.
    OuterResult outer_search(const std::vector<double> &candidates, const std::vector<PathCoupling> &paths,
                             const SubarrayLayout &layout, std::size_t n_subarrays, double noise_power,
                             double power_constraint, double beta1 = 0.0);
}

#endif
