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

#include "tlsm/harness.hpp"
#include "tlsm/channel.hpp"
#include "tlsm/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace tlsm
{
    using json = nlohmann::json;

    namespace
    {
        double get_number(const json &j, const std::string &key)
        {
            if (!j.is_number())
                throw ConfigError("config key '" + key + "' must be a number");
            return j.get<double>();
        }

        std::size_t get_count(const json &j, const std::string &key)
        {
            if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
                throw ConfigError("config key '" + key + "' must be a nonnegative integer");
            return j.get<std::size_t>();
        }
    }

    ScenarioConfig scenario_from_json(const std::string &text)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object())
            throw ConfigError("config must be a JSON object");

        ScenarioConfig cfg = reference_scenario();
        bool spacing_given = false;
        bool element_spacing_given = false;
        for (const auto &[key, val] : doc.items())
        {
            if (key == "carrier_wavelength")
                cfg.carrier_wavelength = get_number(val, key);
            else if (key == "link_distance")
                cfg.link_distance = get_number(val, key);
            else if (key == "height")
                cfg.height = get_number(val, key);
            else if (key == "n_subarrays")
                cfg.n_subarrays = get_count(val, key);
            else if (key == "subarray_spacing")
            {
                cfg.subarray_spacing = get_number(val, key);
                spacing_given = true;
            }
            else if (key == "subarray_side")
                cfg.subarray_side = get_count(val, key);
            else if (key == "element_spacing")
            {
                cfg.element_spacing = get_number(val, key);
                element_spacing_given = true;
            }
            else if (key == "tx_power_dbm")
                cfg.tx_power_dbm = get_number(val, key);
            else if (key == "bandwidth")
                cfg.bandwidth = get_number(val, key);
            else if (key == "noise_figure")
                cfg.noise_figure = get_number(val, key);
            else if (key == "temperature")
                cfg.temperature = get_number(val, key);
            else if (key == "subcarriers")
                cfg.subcarriers = get_count(val, key);
            else if (key == "ground")
            {
                if (!val.is_object())
                    throw ConfigError("config key 'ground' must be an object");
                for (const auto &[gk, gv] : val.items())
                {
                    if (gk == "relative_permittivity")
                        cfg.ground.relative_permittivity = get_number(gv, "ground." + gk);
                    else if (gk == "loss_tangent")
                        cfg.ground.loss_tangent = get_number(gv, "ground." + gk);
                    else
                        throw ConfigError("unknown config key 'ground." + gk + "'");
                }
            }
            else
                throw ConfigError("unknown config key '" + key + "'");
        }
        // derived defaults follow the wavelength, distance and N actually given
        if (!element_spacing_given && cfg.carrier_wavelength > 0.0)
            cfg.element_spacing = cfg.carrier_wavelength / 2.0;
        if (!spacing_given && cfg.carrier_wavelength > 0.0 && cfg.link_distance > 0.0 && cfg.n_subarrays >= 1)
            cfg.subarray_spacing = optimal_subarray_spacing(cfg.carrier_wavelength, cfg.link_distance, cfg.n_subarrays);
        validate(cfg);
        return cfg;
    }

    ScenarioConfig load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return scenario_from_json(ss.str());
    }

    std::string scenario_to_json(const ScenarioConfig &cfg)
    {
        json j = {
            {"carrier_wavelength", cfg.carrier_wavelength},
            {"link_distance", cfg.link_distance},
            {"height", cfg.height},
            {"n_subarrays", cfg.n_subarrays},
            {"subarray_spacing", cfg.subarray_spacing},
            {"subarray_side", cfg.subarray_side},
            {"element_spacing", cfg.element_spacing},
            {"ground", {{"relative_permittivity", cfg.ground.relative_permittivity}, {"loss_tangent", cfg.ground.loss_tangent}}},
            {"tx_power_dbm", cfg.tx_power_dbm},
            {"bandwidth", cfg.bandwidth},
            {"noise_figure", cfg.noise_figure},
            {"temperature", cfg.temperature},
            {"subcarriers", cfg.subcarriers},
        };
        return j.dump(2);
    }

    SystemTag parse_system_tag(const std::string &s)
    {
        std::vector<std::size_t> nums;
        std::size_t i = 0;
        while (i < s.size())
        {
            if (std::isdigit(static_cast<unsigned char>(s[i])))
            {
                std::size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                    ++j;
                nums.push_back(static_cast<std::size_t>(std::stoul(s.substr(i, j - i))));
                i = j;
            }
            else
                ++i;
        }
        if (nums.size() != 2 || nums[0] < 1 || nums[1] < 1 || nums[1] > 2)
            throw ConfigError("system tag '" + s + "' must name N >= 1 subarrays and P in {1, 2} paths");
        return {nums[0], nums[1]};
    }

    std::string to_string(const SystemTag &t)
    {
        return "n" + std::to_string(t.n_subarrays) + "p" + std::to_string(t.n_paths);
    }

    double reference_reflection_height(double link_distance)
    {
        return link_distance / 2.0 * std::tan(14.48 * pi / 180.0);
    }

    std::vector<double> grid_points(double start, double stop, double step)
    {
        if (!(step > 0.0) || !std::isfinite(step))
            throw ConfigError("sweep step must be positive");
        std::vector<double> g;
        if (stop < start)
            return g;
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        g.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            g.push_back(start + static_cast<double>(i) * step);
        return g;
    }

    void validate(const SweepSpec &spec)
    {
        if (!(spec.step > 0.0))
            throw ConfigError("sweep step must be positive");
        if (!std::isfinite(spec.start) || !std::isfinite(spec.stop))
            throw ConfigError("sweep bounds must be finite");
        if (spec.system.n_subarrays < 1 || spec.system.n_paths < 1 || spec.system.n_paths > 2)
            throw ConfigError("system must have N >= 1 and P in {1, 2}");
        if (spec.system.n_paths == 2 && spec.beam_candidates.empty())
            throw ConfigError("at least one beta2 candidate is required");
        if (spec.normalization)
        {
            const SystemTag r = *spec.normalization;
            if (!(r == SystemTag{1, 1} || r == SystemTag{2, 1} || r == SystemTag{1, 2}))
                throw ConfigError("normalization reference must be {1,1}, {2,1} or {1,2}");
        }
    }

    // ---- CSV ----

    std::vector<std::string> csv_header(std::size_t n_channels)
    {
        std::vector<std::string> h = {"h_m", "pt_dbm", "beta2_rad", "capacity_bps_hz", "normalized_capacity"};
        for (std::size_t q = 1; q <= n_channels; ++q)
            h.push_back("sigma_" + std::to_string(q));
        for (std::size_t q = 1; q <= n_channels; ++q)
            h.push_back("p_" + std::to_string(q));
        for (std::size_t q = 1; q <= n_channels; ++q)
            h.push_back("snr_db_" + std::to_string(q));
        h.push_back("n_streams");
        return h;
    }

    namespace
    {
        void put(std::ostream &os, double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << buf;
        }

        std::vector<std::string> split(const std::string &line)
        {
            std::vector<std::string> out;
            std::string cur;
            for (char c : line)
            {
                if (c == ',')
                {
                    out.push_back(cur);
                    cur.clear();
                }
                else if (c != '\r')
                    cur.push_back(c);
            }
            out.push_back(cur);
            return out;
        }

        double parse_double(const std::string &s)
        {
            char *end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw std::runtime_error("CSV field '" + s + "' is not a number");
            return v;
        }
    }

    void write_csv(std::ostream &os, const std::vector<SweepRow> &rows, std::size_t n_channels)
    {
        const auto header = csv_header(n_channels);
        for (std::size_t i = 0; i < header.size(); ++i)
            os << (i ? "," : "") << header[i];
        os << '\n';
        for (const auto &r : rows)
        {
            if (r.sigma.size() != n_channels || r.power.size() != n_channels || r.snr_db.size() != n_channels)
                throw std::invalid_argument("write_csv: row width does not match the header");
            put(os, r.h_m);
            for (double v : {r.pt_dbm, r.beta2_rad, r.capacity_bps_hz, r.normalized_capacity})
            {
                os << ',';
                put(os, v);
            }
            for (const auto *col : {&r.sigma, &r.power, &r.snr_db})
                for (double v : *col)
                {
                    os << ',';
                    put(os, v);
                }
            os << ',' << r.n_streams << '\n';
        }
    }

    void write_csv(const std::filesystem::path &path, const std::vector<SweepRow> &rows, std::size_t n_channels)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        write_csv(out, rows, n_channels);
        if (!out)
            throw std::runtime_error("failed writing '" + path.string() + "'");
    }

    std::vector<SweepRow> read_csv(std::istream &is)
    {
        std::string line;
        if (!std::getline(is, line))
            throw std::runtime_error("CSV is empty");
        const auto header = split(line);
        if (header.size() < 6 || (header.size() - 6) % 3 != 0)
            throw std::runtime_error("CSV header has an unexpected column count");
        const std::size_t nb = (header.size() - 6) / 3;
        if (header != csv_header(nb))
            throw std::runtime_error("CSV header does not match the sweep schema");

        std::vector<SweepRow> rows;
        while (std::getline(is, line))
        {
            if (line.empty() || line == "\r")
                continue;
            const auto f = split(line);
            if (f.size() != header.size())
                throw std::runtime_error("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                                         std::to_string(header.size()));
            SweepRow r;
            r.h_m = parse_double(f[0]);
            r.pt_dbm = parse_double(f[1]);
            r.beta2_rad = parse_double(f[2]);
            r.capacity_bps_hz = parse_double(f[3]);
            r.normalized_capacity = parse_double(f[4]);
            for (std::size_t q = 0; q < nb; ++q)
            {
                r.sigma.push_back(parse_double(f[5 + q]));
                r.power.push_back(parse_double(f[5 + nb + q]));
                r.snr_db.push_back(parse_double(f[5 + 2 * nb + q]));
            }
            r.n_streams = static_cast<std::size_t>(std::stoul(f.back()));
            rows.push_back(std::move(r));
        }
        return rows;
    }

    // ---- sweeps ----

    ScenarioConfig with_system(const ScenarioConfig &cfg, const SystemTag &t)
    {
        ScenarioConfig c = cfg;
        c.n_subarrays = t.n_subarrays;
        if (t.n_subarrays != cfg.n_subarrays && t.n_subarrays > 1 && c.subarray_spacing == 0.0)
            c.subarray_spacing = optimal_subarray_spacing(c.carrier_wavelength, c.link_distance, t.n_subarrays);
        return c;
    }

    namespace
    {
        double beta1_default() { return 0.0; }

        SweepRow make_row(const ScenarioConfig &cfg, double beta2, const WaterfillingResult &wf)
        {
            SweepRow r;
            r.h_m = cfg.height;
            r.pt_dbm = cfg.tx_power_dbm;
            r.beta2_rad = beta2;
            r.capacity_bps_hz = wf.capacity;
            r.normalized_capacity = std::numeric_limits<double>::quiet_NaN();
            r.sigma = wf.singular_values;
            r.power = wf.powers;
            for (double g : wf.snrs)
                r.snr_db.push_back(10.0 * std::log10(g));
            r.n_streams = wf.n_streams;
            return r;
        }

        // Rows of one grid point, in beta2 order.
        std::vector<SweepRow> evaluate_point(const ScenarioConfig &base, const SweepSpec &spec)
        {
            const ScenarioConfig cfg = with_system(base, spec.system);
            const double noise = noise_power_watts(cfg);
            const double pc = power_constraint_watts(cfg);
            const auto paths = build_path_couplings(cfg, spec.system.n_paths);
            const SubarrayLayout lay = layout_of(cfg);
            std::vector<SweepRow> rows;

            if (spec.system.n_paths == 1)
            {
                const RFConfig rf = make_rf_config(lay, cfg.n_subarrays, {beta1_default()});
                rows.push_back(make_row(cfg, std::numeric_limits<double>::quiet_NaN(),
                                        inner_capacity(paths, rf, noise, pc).allocation));
            }
            else if (spec.select_best)
            {
                const OuterResult o = outer_search(spec.beam_candidates, paths, lay, cfg.n_subarrays, noise, pc,
                                                   beta1_default());
                rows.push_back(make_row(cfg, o.beta2, o.inner.allocation));
            }
            else
            {
                std::vector<double> cands = spec.beam_candidates;
                std::sort(cands.begin(), cands.end());
                cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                for (double b2 : cands)
                {
                    const RFConfig rf = make_rf_config(lay, cfg.n_subarrays, {beta1_default(), b2});
                    rows.push_back(make_row(cfg, b2, inner_capacity(paths, rf, noise, pc).allocation));
                }
            }

            if (spec.normalization)
            {
                const double ref = reference_capacity(base, *spec.normalization, spec.beam_candidates);
                double ref_sigma = 0.0;
                if (spec.normalize_singular_values)
                {
                    // largest singular value of the single-subarray LoS link
                    const ScenarioConfig c1 = with_system(base, {1, 1});
                    const RFConfig rf1 = make_rf_config(layout_of(c1), 1, {beta1_default()});
                    ref_sigma = inner_capacity(build_path_couplings(c1, 1), rf1, noise_power_watts(c1),
                                               power_constraint_watts(c1))
                                    .decomposition.sigma.front();
                }
                for (auto &r : rows)
                {
                    r.normalized_capacity = r.capacity_bps_hz / ref;
                    if (spec.normalize_singular_values)
                        for (double &s : r.sigma)
                            s /= ref_sigma;
                }
            }
            return rows;
        }
    }

    double reference_capacity(const ScenarioConfig &cfg, const SystemTag &ref, const std::vector<double> &candidates)
    {
        SweepSpec s;
        s.system = ref;
        s.beam_candidates = candidates.empty() ? default_beta2_candidates() : candidates;
        s.select_best = true;
        return evaluate_point(cfg, s).front().capacity_bps_hz;
    }

    std::vector<SweepRow> run_sweep(const ScenarioConfig &cfg, const SweepSpec &spec)
    {
        validate(cfg);
        validate(spec);
        const std::vector<double> grid = grid_points(spec.start, spec.stop, spec.step);

        std::vector<ScenarioConfig> points;
        points.reserve(grid.size());
        for (double v : grid)
        {
            ScenarioConfig c = cfg;
            if (spec.variable == SweepVariable::height)
                c.height = v;
            else
            {
                c.tx_power_dbm = v;
                c.height = spec.fixed_height.value_or(reference_reflection_height(cfg.link_distance));
            }
            validate(c);
            points.push_back(c);
        }

        std::vector<std::vector<SweepRow>> results(points.size());
        std::size_t workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, std::max<std::size_t>(points.size(), 1));

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto work = [&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= points.size())
                    return;
                try
                {
                    results[i] = evaluate_point(points[i], spec);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(points.size());
                }
            }
        };
        if (workers <= 1)
            work();
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
        if (failure)
            std::rethrow_exception(failure);

        std::vector<SweepRow> rows;
        for (auto &r : results)
            for (auto &row : r)
                rows.push_back(std::move(row));

        if (!spec.output_path.empty())
            write_csv(spec.output_path, rows, spec.system.n_subarrays * spec.system.n_paths);
        return rows;
    }

    std::vector<SweepRow> run_height_sweep(const ScenarioConfig &cfg, SweepSpec spec)
    {
        spec.variable = SweepVariable::height;
        return run_sweep(cfg, spec);
    }

    std::vector<SweepRow> run_power_sweep(const ScenarioConfig &cfg, SweepSpec spec)
    {
        spec.variable = SweepVariable::tx_power;
        return run_sweep(cfg, spec);
    }

    // ---- link budget ----

    LinkBudget compute_link_budget(const ScenarioConfig &cfg)
    {
        validate(cfg);
        LinkBudget b;
        const double m2 = static_cast<double>(cfg.subarray_side * cfg.subarray_side);
        b.antenna_gain_dbi = 10.0 * std::log10(m2);
        b.eirp_dbm = cfg.tx_power_dbm + b.antenna_gain_dbi;
        b.eirp_headroom_db = eirp_limit_dbm - b.eirp_dbm;
        b.fspl_db = 20.0 * std::log10(std::abs(path_gain(1.0, cfg.link_distance, cfg.carrier_wavelength)));
        b.noise_dbm = watts_to_dbm(noise_power_watts(cfg) * static_cast<double>(cfg.subcarriers));

        auto extra_loss = [&](double h) { return 20.0 * std::log10(std::hypot(2.0 * h, cfg.link_distance) / cfg.link_distance); };
        b.reflected_extra_loss_db = extra_loss(cfg.height);
        b.reflected_extra_loss_max_db = 0.0;
        b.reflection_loss_min_db = std::numeric_limits<double>::infinity();
        b.reflection_loss_max_db = -std::numeric_limits<double>::infinity();
        for (double h : grid_points(5.0, 35.0, default_sweep_step))
        {
            b.reflected_extra_loss_max_db = std::max(b.reflected_extra_loss_max_db, extra_loss(h));
            const double inc = std::atan(cfg.link_distance / (2.0 * h));
            const double loss = -20.0 * std::log10(std::abs(fresnel_te_reflection(inc, cfg.ground)));
            b.reflection_loss_min_db = std::min(b.reflection_loss_min_db, loss);
            b.reflection_loss_max_db = std::max(b.reflection_loss_max_db, loss);
        }

        // LoS MIMO over the configured subarrays, broadside beams
        const ScenarioConfig c = with_system(cfg, {cfg.n_subarrays, 1});
        const RFConfig rf = make_rf_config(layout_of(c), c.n_subarrays, {0.0});
        const InnerResult in = inner_capacity(build_path_couplings(c, 1), rf, noise_power_watts(c), power_constraint_watts(c));
        b.los_mimo_snr_db = 10.0 * std::log10(in.allocation.snrs.front());
        b.los_mimo_spectral_efficiency = in.allocation.capacity;
        return b;
    }

    std::string link_budget_report(const ScenarioConfig &cfg)
    {
        const LinkBudget b = compute_link_budget(cfg);
        char buf[2048];
        std::snprintf(buf, sizeof buf,
                      "link budget (P_T = %.2f dBm, D = %.1f m, h = %.2f m, N = %zu, M = %zu)\n"
                      "  antenna gain           %8.2f dBi\n"
                      "  EIRP                   %8.2f dBm (limit %.0f dBm, headroom %.2f dB)\n"
                      "  free-space path loss   %8.2f dB\n"
                      "  noise power over W     %8.2f dBm\n"
                      "  reflected extra loss   %8.2f dB at h, max %.2f dB over h in [5, 35] m\n"
                      "  reflection loss        %8.2f .. %.2f dB over h in [5, 35] m\n"
                      "  LoS MIMO SNR           %8.2f dB per subchannel\n"
                      "  LoS MIMO efficiency    %8.2f bits/s/Hz\n",
                      cfg.tx_power_dbm, cfg.link_distance, cfg.height, cfg.n_subarrays, cfg.subarray_side,
                      b.antenna_gain_dbi, b.eirp_dbm, eirp_limit_dbm, b.eirp_headroom_db, b.fspl_db, b.noise_dbm,
                      b.reflected_extra_loss_db, b.reflected_extra_loss_max_db, b.reflection_loss_min_db,
                      b.reflection_loss_max_db, b.los_mimo_snr_db, b.los_mimo_spectral_efficiency);
        return buf;
    }

    // ---- oscillation ----

    double oscillation_frequency_estimate(const ScenarioConfig &cfg, double h)
    {
        if (!(h > 0.0))
            throw std::invalid_argument("oscillation_frequency_estimate: h must be positive");
        const double half = cfg.link_distance / 2.0;
        return 2.0 / cfg.carrier_wavelength * h / std::hypot(h, half);
    }

    double dominant_frequency(const std::vector<double> &samples, double step, double min_frequency)
    {
        const std::size_t n = samples.size();
        if (n < 4 || !(step > 0.0))
            throw std::invalid_argument("dominant_frequency: need at least 4 samples and a positive step");
        // least-squares line
        const double nd = static_cast<double>(n);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const double x = static_cast<double>(i);
            sx += x;
            sy += samples[i];
            sxx += x * x;
            sxy += x * samples[i];
        }
        const double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
        const double icept = (sy - slope * sx) / nd;
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i)
            r[i] = samples[i] - (icept + slope * static_cast<double>(i));

        const double df = 1.0 / (nd * step);
        double best_f = 0.0;
        double best_p = -1.0;
        for (std::size_t k = 1; k <= n / 2; ++k)
        {
            const double f = static_cast<double>(k) * df;
            if (f < min_frequency)
                continue;
            cx acc = 0.0;
            const double w = -2.0 * pi * static_cast<double>(k) / nd;
            for (std::size_t i = 0; i < n; ++i)
                acc += r[i] * std::polar(1.0, w * static_cast<double>(i));
            const double p = std::norm(acc);
            if (p > best_p)
            {
                best_p = p;
                best_f = f;
            }
        }
        return best_f;
    }

    // ---- pattern dump ----

    std::vector<PatternSample> pattern_dump(const SubarrayLayout &layout, std::size_t points)
    {
        if (points < 2)
            throw ConfigError("pattern dump needs at least 2 angle samples");
        const Codebook cb = elevation_codebook(layout.side);
        const double peak = static_cast<double>(layout.side * layout.side);
        std::vector<PatternSample> out;
        int n = -7;
        for (const auto &p : cb.patterns)
        {
            for (std::size_t i = 0; i < points; ++i)
            {
                const double theta = -pi / 2.0 + pi * static_cast<double>(i) / static_cast<double>(points - 1);
                out.push_back({n, theta, std::abs(beam_gain(theta, 0.0, p, layout)) / peak});
            }
            ++n;
        }
        return out;
    }

    void write_pattern_csv(std::ostream &os, const std::vector<PatternSample> &samples)
    {
        os << "codeword,beta_rad,theta_rad,normalized_gain\n";
        for (const auto &s : samples)
        {
            os << s.n << ',';
            put(os, s.n * pi / 8.0);
            os << ',';
            put(os, s.theta_rad);
            os << ',';
            put(os, s.normalized_gain);
            os << '\n';
        }
    }
}
