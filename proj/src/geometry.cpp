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

#include "tlsm/geometry.hpp"
#include "tlsm/errors.hpp"

#include <cmath>
#include <string>

namespace tlsm
{
    ScenarioConfig reference_scenario()
    {
        ScenarioConfig cfg;
        cfg.subarray_spacing = optimal_subarray_spacing(cfg.carrier_wavelength, cfg.link_distance, cfg.n_subarrays);
        cfg.element_spacing = cfg.carrier_wavelength / 2.0;
        return cfg;
    }

    void validate(const ScenarioConfig &cfg)
    {
        auto positive = [](double v, const char *name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw ConfigError(std::string(name) + " must be positive and finite");
        };
        positive(cfg.carrier_wavelength, "carrier_wavelength");
        positive(cfg.link_distance, "link_distance");
        positive(cfg.height, "height");
        positive(cfg.element_spacing, "element_spacing");
        positive(cfg.bandwidth, "bandwidth");
        positive(cfg.temperature, "temperature");
        if (cfg.n_subarrays < 1)
            throw ConfigError("n_subarrays must be >= 1");
        if (cfg.subarray_side < 1)
            throw ConfigError("subarray_side must be >= 1");
        if (cfg.subcarriers < 1)
            throw ConfigError("subcarriers must be >= 1");
        if (!(cfg.subarray_spacing >= 0.0) || !std::isfinite(cfg.subarray_spacing))
            throw ConfigError("subarray_spacing must be >= 0");
        if (!(cfg.ground.relative_permittivity >= 1.0))
            throw ConfigError("ground.relative_permittivity must be >= 1");
        if (!(cfg.ground.loss_tangent >= 0.0))
            throw ConfigError("ground.loss_tangent must be >= 0");
        if (!std::isfinite(cfg.tx_power_dbm) || !std::isfinite(cfg.noise_figure))
            throw ConfigError("tx_power_dbm and noise_figure must be finite");
    }

    std::vector<std::string> regime_warnings(const ScenarioConfig &cfg)
    {
        std::vector<std::string> w;
        // "much less than" taken as a factor of 10
        constexpr double gap = 10.0;
        if (cfg.n_subarrays > 1)
        {
            if (cfg.subarray_spacing == 0.0)
                w.emplace_back("subarray_spacing is zero, all subarrays coincide");
            else if (cfg.carrier_wavelength * gap > cfg.subarray_spacing)
                w.emplace_back("subarray_spacing is not much larger than the wavelength");
            if (cfg.subarray_spacing * gap > cfg.height)
                w.emplace_back("subarray_spacing is not much smaller than the height");
        }
        if (cfg.height >= cfg.link_distance)
            w.emplace_back("height is not below the link distance");
        return w;
    }

    double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
    double watts_to_dbm(double w) { return 10.0 * std::log10(w * 1e3); }

    double noise_power_watts(const ScenarioConfig &cfg)
    {
        return boltzmann * cfg.temperature * std::pow(10.0, cfg.noise_figure / 10.0) * cfg.bandwidth /
               static_cast<double>(cfg.subcarriers);
    }

    double power_constraint_watts(const ScenarioConfig &cfg)
    {
        return dbm_to_watts(cfg.tx_power_dbm) / static_cast<double>(cfg.subcarriers);
    }

    double optimal_subarray_spacing(double wavelength, double link_distance, std::size_t n_subarrays)
    {
        if (!(wavelength > 0.0) || !(link_distance > 0.0))
            throw std::invalid_argument("optimal_subarray_spacing: wavelength and distance must be positive");
        if (n_subarrays < 1)
            throw std::invalid_argument("optimal_subarray_spacing: need at least one subarray");
        return std::sqrt(wavelength * link_distance / static_cast<double>(n_subarrays));
    }

    PathGeometry build_los_geometry(const ScenarioConfig &cfg)
    {
        validate(cfg);
        const std::size_t n = cfg.n_subarrays;
        const double d = cfg.link_distance;
        PathGeometry p;
        p.index = 1;
        p.is_los = true;
        p.center_length = d;
        p.n_subarrays = n;
        p.pair_lengths.resize(n * n);
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
            {
                const double dz = (static_cast<double>(l) - static_cast<double>(k)) * cfg.subarray_spacing;
                p.pair_lengths[l * n + k] = std::hypot(dz, d);
            }
        return p;
    }

    PathGeometry build_reflected_geometry(const ScenarioConfig &cfg)
    {
        validate(cfg);
        const std::size_t n = cfg.n_subarrays;
        const double d = cfg.link_distance;
        const double h = cfg.height;
        const double elevation = -std::atan(2.0 * h / d);

        PathGeometry p;
        p.index = 2;
        p.is_los = false;
        p.departure_elevation = elevation;
        p.arrival_elevation = elevation;
        p.center_length = std::hypot(2.0 * h, d);
        p.incidence_angle = std::atan(d / (2.0 * h));
        p.n_subarrays = n;
        p.pair_lengths.resize(n * n);
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
            {
                // tx subarray at h_l, image of rx subarray at -h_k
                const double ht = h + static_cast<double>(l) * cfg.subarray_spacing;
                const double hr = h + static_cast<double>(k) * cfg.subarray_spacing;
                p.pair_lengths[l * n + k] = std::hypot(ht + hr, d);
            }
        return p;
    }

    std::vector<PathGeometry> build_two_path_geometry(const ScenarioConfig &cfg)
    {
        return {build_los_geometry(cfg), build_reflected_geometry(cfg)};
    }

    std::vector<PathGeometry> build_paths(const ScenarioConfig &cfg, std::size_t n_paths)
    {
        if (n_paths == 1)
            return {build_los_geometry(cfg)};
        if (n_paths == 2)
            return build_two_path_geometry(cfg);
        throw ConfigError("only 1 (LoS) or 2 (LoS + ground) paths are modeled");
    }

    double wrap_phase(double phi)
    {
        double r = std::remainder(phi, 2.0 * pi); // [-pi, pi]
        if (r <= -pi)
            r += 2.0 * pi;
        return r;
    }

    double relative_phase_exact(double offset, double ref_height, double distance, double wavelength, bool wrap)
    {
        const double k = 2.0 * pi / wavelength;
        const double phi = -k * (std::hypot(ref_height + offset, distance) - std::hypot(ref_height, distance));
        return wrap ? wrap_phase(phi) : phi;
    }

    double relative_phase_planar(double offset, double elevation, double wavelength)
    {
        return -2.0 * pi / wavelength * offset * std::sin(elevation);
    }

    double distance_ratio(double offset, double ref_height, double distance, double wavelength)
    {
        return offset / std::sqrt(wavelength * std::hypot(ref_height, distance));
    }

    double relative_phase_second_order(double offset, double ref_height, double distance, double wavelength)
    {
        const double ref_length = std::hypot(ref_height, distance);
        const double sin_el = ref_height / ref_length;
        const double a = distance_ratio(offset, ref_height, distance, wavelength);
        return -2.0 * pi * (sin_el * offset / wavelength + 0.5 * (1.0 - sin_el * sin_el) * a * a);
    }
}
