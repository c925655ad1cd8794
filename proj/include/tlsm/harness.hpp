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

#ifndef TLSM_HARNESS_HPP
#define TLSM_HARNESS_HPP

#include "tlsm/capacity.hpp"
#include "tlsm/geometry.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tlsm
{
    // ---- configuration documents ----

    // JSON object with ScenarioConfig field names; absent keys keep the reference values,
    // unknown keys and wrong types raise ConfigError.
    ScenarioConfig scenario_from_json(const std::string &text);
    ScenarioConfig load_scenario(const std::filesystem::path &path);
    std::string scenario_to_json(const ScenarioConfig &cfg);

    // ---- sweeps ----

    // {N, P}: subarrays per side and propagation paths (= beams).
    struct SystemTag
    {
        std::size_t n_subarrays = 1;
        std::size_t n_paths = 1;
        bool operator==(const SystemTag &) const = default;
    };

    SystemTag parse_system_tag(const std::string &s); // "2,1", "{2,1}" or "n2p1"
    std::string to_string(const SystemTag &t);        // "n2p1"

    enum class SweepVariable
    {
        height,
        tx_power
    };

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::height;
        double start = 5.0;
        double stop = 35.0;
        double step = 0.25;
        std::vector<double> beam_candidates = default_beta2_candidates();
        SystemTag system{2, 2};
        std::optional<SystemTag> normalization; // {1,1}, {2,1} or {1,2}
        bool normalize_singular_values = false;
        bool select_best = false;               // keep only the outer-search winner per grid point
        std::optional<double> fixed_height;     // power sweeps; default (D/2) tan(14.48 deg)
        std::size_t workers = 0;                // 0 = hardware concurrency
        std::filesystem::path output_path;      // empty = do not write
    };

    inline constexpr double default_sweep_step = 0.25;   // m
    inline constexpr double fine_grid_step = 0.5e-3;     // m

    // Height at which the ground reflection leaves at 14.48 degrees below the horizon.
    double reference_reflection_height(double link_distance);

    // Grid start, start + step, ... up to stop (inclusive within 1e-9 step). Empty if stop < start.
    std::vector<double> grid_points(double start, double stop, double step);

    void validate(const SweepSpec &spec);

    struct SweepRow
    {
        double h_m = 0.0;
        double pt_dbm = 0.0;
        double beta2_rad = 0.0; // NaN for single-beam systems
        double capacity_bps_hz = 0.0;
        double normalized_capacity = 0.0; // NaN without normalization
        std::vector<double> sigma;
        std::vector<double> power;
        std::vector<double> snr_db;
        std::size_t n_streams = 0;
    };

    std::vector<std::string> csv_header(std::size_t n_channels);
    void write_csv(std::ostream &os, const std::vector<SweepRow> &rows, std::size_t n_channels);
    void write_csv(const std::filesystem::path &path, const std::vector<SweepRow> &rows, std::size_t n_channels);
    std::vector<SweepRow> read_csv(std::istream &is);

    // Capacity of a reference system at one grid point.
    double reference_capacity(const ScenarioConfig &cfg, const SystemTag &ref, const std::vector<double> &candidates);

    // One row per grid point and beta2 candidate (one per grid point when select_best or P = 1).
    std::vector<SweepRow> run_sweep(const ScenarioConfig &cfg, const SweepSpec &spec);
    std::vector<SweepRow> run_height_sweep(const ScenarioConfig &cfg, SweepSpec spec);
    std::vector<SweepRow> run_power_sweep(const ScenarioConfig &cfg, SweepSpec spec);

    // Scenario with a system's N applied (keeps spacing; an unset spacing becomes the optimal one when N changes).
    ScenarioConfig with_system(const ScenarioConfig &cfg, const SystemTag &t);

    // ---- link budget ----

    inline constexpr double eirp_limit_dbm = 43.0;

    struct LinkBudget
    {
        double antenna_gain_dbi = 0;
        double eirp_dbm = 0;
        double eirp_headroom_db = 0;
        double fspl_db = 0;            // negative
        double noise_dbm = 0;
        double reflected_extra_loss_db = 0;     // at cfg.height
        double reflected_extra_loss_max_db = 0; // over h in [5, 35]
        double reflection_loss_min_db = 0;
        double reflection_loss_max_db = 0;
        double los_mimo_snr_db = 0;    // first subchannel
        double los_mimo_spectral_efficiency = 0;
    };

    LinkBudget compute_link_budget(const ScenarioConfig &cfg);
    std::string link_budget_report(const ScenarioConfig &cfg);

    // ---- oscillation ----

    // (2 / lambda) h / sqrt(h^2 + (D/2)^2), cycles per meter of height.
    double oscillation_frequency_estimate(const ScenarioConfig &cfg, double h);

    // Frequency of the largest periodogram bin at or above min_frequency after a linear detrend.
    double dominant_frequency(const std::vector<double> &samples, double step, double min_frequency);

    // ---- pattern dump ----

    struct PatternSample
    {
        int n = 0;            // codeword index, beta_x = n pi / 8
        double theta_rad = 0;
        double normalized_gain = 0; // |g| / M^2
    };

    std::vector<PatternSample> pattern_dump(const SubarrayLayout &layout, std::size_t points);
    void write_pattern_csv(std::ostream &os, const std::vector<PatternSample> &samples);
}

#endif
