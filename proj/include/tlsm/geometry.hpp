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

#ifndef TLSM_GEOMETRY_HPP
#define TLSM_GEOMETRY_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace tlsm
{
    inline constexpr double pi = 3.14159265358979323846;
    inline constexpr double boltzmann = 1.380649e-23; // J/K

    struct GroundMaterial
    {
        double relative_permittivity = 1.0; // eps_r >= 1
        double loss_tangent = 0.0;          // tan(delta) >= 0
    };

    // Concrete ground, eps_r = 3.6478, tan(delta) = 0.2053.
    inline constexpr GroundMaterial concrete{3.6478, 0.2053};

    // Deterministic description of one experiment. Lengths in meters.
    struct ScenarioConfig
    {
        double carrier_wavelength = 0.005;
        double link_distance = 100.0;
        double height = 20.0;             // lowest subarray above ground
        std::size_t n_subarrays = 2;      // per side, vertical ULA
        double subarray_spacing = 0.5;    // phase-center distance between neighbouring subarrays
        std::size_t subarray_side = 8;    // subarray is side x side elements
        double element_spacing = 0.0025;
        GroundMaterial ground = concrete;
        double tx_power_dbm = 20.0;
        double bandwidth = 2.16e9;        // Hz
        double noise_figure = 5.0;        // dB
        double temperature = 300.0;       // K
        std::size_t subcarriers = 1;
    };

    // 60 GHz backhaul reference: D = 100 m, 2 subarrays of 8x8 at optimal spacing.
    ScenarioConfig reference_scenario();

    // Throws ConfigError on violated hard invariants.
    void validate(const ScenarioConfig &cfg);

    // Soft checks of lambda << d_sub << h < D. Empty when the scene is in regime.
    std::vector<std::string> regime_warnings(const ScenarioConfig &cfg);

    // Per-subcarrier noise power k_B T F W / K in watts.
    double noise_power_watts(const ScenarioConfig &cfg);

    // Per-subcarrier power constraint P_T / K in watts.
    double power_constraint_watts(const ScenarioConfig &cfg);

    double dbm_to_watts(double dbm);
    double watts_to_dbm(double w);

    struct PathGeometry
    {
        std::size_t index = 1;          // 1 = LoS, 2 = ground reflection
        double departure_elevation = 0; // radians, downward negative
        double departure_azimuth = 0;
        double arrival_elevation = 0;
        double arrival_azimuth = 0;
        double center_length = 0;       // D_p between lowest-subarray phase centers
        std::vector<double> pair_lengths; // N x N row-major, (l, k) = tx l to rx k
        std::size_t n_subarrays = 1;
        double incidence_angle = 0;     // from ground normal, reflected paths only
        bool is_los = true;

        double pair_length(std::size_t l, std::size_t k) const { return pair_lengths[l * n_subarrays + k]; }
    };

    // sqrt(lambda * D / N)
    double optimal_subarray_spacing(double wavelength, double link_distance, std::size_t n_subarrays);

    // Direct path between facing vertical ULAs.
    PathGeometry build_los_geometry(const ScenarioConfig &cfg);

    // Ground reflection at mid-link via the image of the receive array.
    PathGeometry build_reflected_geometry(const ScenarioConfig &cfg);

    // {LoS, ground reflection}
    std::vector<PathGeometry> build_two_path_geometry(const ScenarioConfig &cfg);

    // LoS only when n_paths == 1, otherwise both paths.
    std::vector<PathGeometry> build_paths(const ScenarioConfig &cfg, std::size_t n_paths);

    // Wave-model phases of a point source seen by a receive element displaced by `offset`
    // from the reference element at height `ref_height` above the source's foot point.
    // All are relative to the reference element, in radians.
    double relative_phase_exact(double offset, double ref_height, double distance, double wavelength,
                                bool wrap = false);
    double relative_phase_planar(double offset, double elevation, double wavelength);
    double relative_phase_second_order(double offset, double ref_height, double distance, double wavelength);

    // offset / sqrt(lambda * sqrt(ref_height^2 + D^2))
    double distance_ratio(double offset, double ref_height, double distance, double wavelength);

    double wrap_phase(double phi); // to (-pi, pi]
}

#endif
