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

// tlsm command-line front end.
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration or usage error, 3 numerical failure.

#include "CLI11.hpp"

#include "tlsm/errors.hpp"
#include "tlsm/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace
{
    using namespace tlsm;

    struct Options
    {
        std::string config;
        std::string out;
        std::vector<double> beta2;
        std::vector<std::string> systems;
        std::string normalize;
        bool normalize_sv = false;
        bool select_best = false;
        bool fine_grid = false;
        std::size_t workers = 0;
        double start = 0, stop = 0, step = 0;
        double height = 0, pt = 0;
        std::size_t points = 721;
    };

    ScenarioConfig scenario(const Options &o)
    {
        ScenarioConfig c = o.config.empty() ? reference_scenario() : load_scenario(o.config);
        validate(c);
        for (const auto &w : regime_warnings(c))
            std::cerr << "warning: " << w << '\n';
        return c;
    }

    std::vector<SystemTag> systems(const Options &o, SystemTag fallback)
    {
        std::vector<SystemTag> out;
        for (const auto &s : o.systems)
            out.push_back(parse_system_tag(s));
        if (out.empty())
            out.push_back(fallback);
        return out;
    }

    // out.csv -> out_n2p2.csv when several systems share one --out
    std::filesystem::path output_for(const std::string &out, const SystemTag &t, bool several)
    {
        std::filesystem::path p(out);
        if (!several)
            return p;
        p.replace_filename(p.stem().string() + "_" + to_string(t) + p.extension().string());
        return p;
    }

    void emit(const Options &o, const SystemTag &t, bool several, const std::vector<SweepRow> &rows)
    {
        const std::size_t nb = t.n_subarrays * t.n_paths;
        if (o.out.empty() || o.out == "-")
            write_csv(std::cout, rows, nb);
        else
            write_csv(output_for(o.out, t, several), rows, nb);
    }

    SweepSpec base_spec(const Options &o, SweepVariable v)
    {
        SweepSpec s;
        s.variable = v;
        if (!o.beta2.empty())
            s.beam_candidates = o.beta2;
        if (!o.normalize.empty())
            s.normalization = parse_system_tag(o.normalize);
        s.normalize_singular_values = o.normalize_sv;
        s.select_best = o.select_best;
        s.workers = o.workers;
        return s;
    }

    void run_systems(const Options &o, const ScenarioConfig &cfg, SweepSpec spec, bool power)
    {
        const auto tags = systems(o, SystemTag{2, 2});
        if (tags.size() > 1 && (o.out.empty() || o.out == "-"))
            throw ConfigError("several systems need --out <path>");
        for (const auto &t : tags)
        {
            spec.system = t;
            emit(o, t, tags.size() > 1, power ? run_power_sweep(cfg, spec) : run_height_sweep(cfg, spec));
        }
    }

    void add_common(CLI::App *cmd, Options &o)
    {
        cmd->add_option("--config", o.config, "JSON scenario file (reference scenario if absent)");
        cmd->add_option("--out", o.out, "output CSV path ('-' or absent: stdout)");
    }

    void add_sweep(CLI::App *cmd, Options &o)
    {
        add_common(cmd, o);
        cmd->add_option("--beta2", o.beta2, "beta2 candidates in radians")->delimiter(',');
        cmd->add_option("--systems", o.systems, "system tags {N,P}, e.g. n2p2 or 1,2");
        cmd->add_option("--normalize", o.normalize, "reference system for normalized capacity: n1p1, n2p1 or n1p2");
        cmd->add_flag("--normalize-sv", o.normalize_sv, "divide singular values by sigma_1 of the n1p1 system");
        cmd->add_flag("--select-best", o.select_best, "keep only the outer-search winner per grid point");
        cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
        cmd->add_option("--start", o.start, "grid start");
        cmd->add_option("--stop", o.stop, "grid stop (inclusive)");
        cmd->add_option("--step", o.step, "grid step");
    }

    int run(int argc, char **argv)
    {
        CLI::App app{"Two-path LoS MIMO subarray simulator"};
        app.require_subcommand(1);
        Options o;

        auto *sim = app.add_subcommand("simulate", "evaluate one (height, power) point for each system");
        add_sweep(sim, o);

        auto *sh = app.add_subcommand("sweep-height", "capacity versus height");
        add_sweep(sh, o);
        sh->add_flag("--fine-grid", o.fine_grid, "0.5 mm step; default window is the config height +- 0.5 m");

        auto *sp = app.add_subcommand("sweep-power", "capacity versus transmit power");
        add_sweep(sp, o);
        sp->add_option("--height", o.height, "link height in meters (default: 14.48 deg reflection height)");

        auto *lb = app.add_subcommand("link-budget", "print the link budget");
        lb->add_option("--config", o.config, "JSON scenario file");

        auto *pd = app.add_subcommand("pattern-dump", "elevation patterns of the 16 codewords");
        add_common(pd, o);
        pd->add_option("--points", o.points, "angle samples over [-pi/2, pi/2]");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 2;
        }

        const ScenarioConfig cfg = scenario(o);

        if (*lb)
        {
            std::cout << link_budget_report(cfg);
            return 0;
        }
        if (*pd)
        {
            const auto samples = pattern_dump(layout_of(cfg), o.points);
            if (o.out.empty() || o.out == "-")
                write_pattern_csv(std::cout, samples);
            else
            {
                std::ofstream f(o.out, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot open '" + o.out + "' for writing");
                write_pattern_csv(f, samples);
            }
            return 0;
        }
        if (*sim)
        {
            SweepSpec s = base_spec(o, SweepVariable::height);
            s.start = s.stop = cfg.height;
            s.step = default_sweep_step;
            run_systems(o, cfg, s, false);
            return 0;
        }
        if (*sh)
        {
            SweepSpec s = base_spec(o, SweepVariable::height);
            if (o.fine_grid)
            {
                s.start = cfg.height - 0.5;
                s.stop = cfg.height + 0.5;
                s.step = fine_grid_step;
            }
            if (sh->count("--start"))
                s.start = o.start;
            if (sh->count("--stop"))
                s.stop = o.stop;
            if (sh->count("--step"))
                s.step = o.step;
            run_systems(o, cfg, s, false);
            return 0;
        }
        SweepSpec s = base_spec(o, SweepVariable::tx_power);
        s.start = 5.0;
        s.stop = 25.0;
        s.step = 0.25;
        if (sp->count("--start"))
            s.start = o.start;
        if (sp->count("--stop"))
            s.stop = o.stop;
        if (sp->count("--step"))
            s.step = o.step;
        if (sp->count("--height"))
            s.fixed_height = o.height;
        run_systems(o, cfg, s, true);
        return 0;
    }
}

int main(int argc, char **argv)
{
    try
    {
        return run(argc, argv);
    }
    catch (const tlsm::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const tlsm::NumericalError &e)
    {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
