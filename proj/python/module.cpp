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

// Python bindings: tlsm._core

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tlsm/capacity.hpp"
#include "tlsm/channel.hpp"
#include "tlsm/errors.hpp"
#include "tlsm/harness.hpp"

#include <sstream>

namespace py = pybind11;
using namespace tlsm;

namespace
{
    py::array_t<cx> to_numpy(const ComplexMatrix &m)
    {
        py::array_t<cx> out({m.rows(), m.cols()});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                v(r, c) = m(r, c);
        return out;
    }

    ComplexMatrix from_numpy(const py::array_t<cx, py::array::c_style | py::array::forcecast> &a)
    {
        if (a.ndim() != 2)
            throw std::invalid_argument("expected a 2-D array");
        ComplexMatrix m(a.shape(0), a.shape(1));
        auto v = a.unchecked<2>();
        for (py::ssize_t r = 0; r < a.shape(0); ++r)
            for (py::ssize_t c = 0; c < a.shape(1); ++c)
                m(r, c) = v(r, c);
        return m;
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Two-path line-of-sight MIMO with subarray hybrid beamforming";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<GroundMaterial>(m, "GroundMaterial")
        .def(py::init<>())
        .def(py::init([](double er, double tand) { return GroundMaterial{er, tand}; }), py::arg("relative_permittivity"),
             py::arg("loss_tangent"))
        .def_readwrite("relative_permittivity", &GroundMaterial::relative_permittivity)
        .def_readwrite("loss_tangent", &GroundMaterial::loss_tangent);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init(&reference_scenario))
        .def_readwrite("carrier_wavelength", &ScenarioConfig::carrier_wavelength)
        .def_readwrite("link_distance", &ScenarioConfig::link_distance)
        .def_readwrite("height", &ScenarioConfig::height)
        .def_readwrite("n_subarrays", &ScenarioConfig::n_subarrays)
        .def_readwrite("subarray_spacing", &ScenarioConfig::subarray_spacing)
        .def_readwrite("subarray_side", &ScenarioConfig::subarray_side)
        .def_readwrite("element_spacing", &ScenarioConfig::element_spacing)
        .def_readwrite("ground", &ScenarioConfig::ground)
        .def_readwrite("tx_power_dbm", &ScenarioConfig::tx_power_dbm)
        .def_readwrite("bandwidth", &ScenarioConfig::bandwidth)
        .def_readwrite("noise_figure", &ScenarioConfig::noise_figure)
        .def_readwrite("temperature", &ScenarioConfig::temperature)
        .def_readwrite("subcarriers", &ScenarioConfig::subcarriers)
        .def("validate", [](const ScenarioConfig &c) { validate(c); })
        .def("warnings", &regime_warnings)
        .def("to_json", &scenario_to_json)
        .def_static("from_json", &scenario_from_json);

    m.def("reference_scenario", &reference_scenario);
    m.def("load_scenario", [](const std::string &p) { return load_scenario(p); });
    m.def("noise_power_watts", &noise_power_watts);
    m.def("power_constraint_watts", &power_constraint_watts);
    m.def("optimal_subarray_spacing", &optimal_subarray_spacing, py::arg("wavelength"), py::arg("distance"),
          py::arg("n_subarrays"));
    m.def("reference_reflection_height", &reference_reflection_height, py::arg("link_distance") = 100.0);

    m.def("fresnel_te_reflection", &fresnel_te_reflection, py::arg("incidence_angle"), py::arg("ground") = concrete);
    m.def("los_coupling_fraunhofer", [](std::size_t n) { return to_numpy(los_coupling_fraunhofer(n)); });
    m.def(
        "channel",
        [](const ScenarioConfig &c, std::size_t n_paths) {
            return to_numpy(assemble_channel(build_path_couplings(c, n_paths), c.n_subarrays, c.subarray_side));
        },
        py::arg("config"), py::arg("n_paths") = 2, "Physical channel H, (N M^2) x (N M^2).");

    m.def("svd", [](const py::array_t<cx, py::array::c_style | py::array::forcecast> &a) {
        const SvdResult s = svd(from_numpy(a));
        return py::make_tuple(to_numpy(s.u), s.sigma, to_numpy(s.v));
    });

    py::class_<WaterfillingResult>(m, "WaterfillingResult")
        .def_readonly("singular_values", &WaterfillingResult::singular_values)
        .def_readonly("powers", &WaterfillingResult::powers)
        .def_readonly("water_level", &WaterfillingResult::water_level)
        .def_readonly("snrs", &WaterfillingResult::snrs)
        .def_readonly("capacity", &WaterfillingResult::capacity)
        .def_readonly("n_streams", &WaterfillingResult::n_streams);

    m.def(
        "waterfill", [](const std::vector<double> &s, double noise, double pc) { return waterfill(s, noise, pc); },
        py::arg("singular_values"), py::arg("noise"), py::arg("power"));

    m.def(
        "capacity",
        [](const ScenarioConfig &c, std::size_t n_paths, const std::vector<double> &betas) {
            const RFConfig rf = make_rf_config(layout_of(c), c.n_subarrays, betas);
            return inner_capacity(build_path_couplings(c, n_paths), rf, noise_power_watts(c), power_constraint_watts(c))
                .allocation;
        },
        py::arg("config"), py::arg("n_paths"), py::arg("betas"), "Waterfilling allocation for fixed RF beams.");

    py::class_<OuterResult>(m, "OuterResult")
        .def_readonly("beta1", &OuterResult::beta1)
        .def_readonly("beta2", &OuterResult::beta2)
        .def_readonly("capacity", &OuterResult::capacity);

    m.def(
        "best_beams",
        [](const ScenarioConfig &c, const std::vector<double> &candidates) {
            return outer_search(candidates, build_path_couplings(c, 2), layout_of(c), c.n_subarrays,
                                noise_power_watts(c), power_constraint_watts(c));
        },
        py::arg("config"), py::arg("candidates") = default_beta2_candidates());

    py::class_<LinkBudget>(m, "LinkBudget")
        .def_readonly("antenna_gain_dbi", &LinkBudget::antenna_gain_dbi)
        .def_readonly("eirp_dbm", &LinkBudget::eirp_dbm)
        .def_readonly("eirp_headroom_db", &LinkBudget::eirp_headroom_db)
        .def_readonly("fspl_db", &LinkBudget::fspl_db)
        .def_readonly("noise_dbm", &LinkBudget::noise_dbm)
        .def_readonly("reflected_extra_loss_db", &LinkBudget::reflected_extra_loss_db)
        .def_readonly("reflected_extra_loss_max_db", &LinkBudget::reflected_extra_loss_max_db)
        .def_readonly("reflection_loss_min_db", &LinkBudget::reflection_loss_min_db)
        .def_readonly("reflection_loss_max_db", &LinkBudget::reflection_loss_max_db)
        .def_readonly("los_mimo_snr_db", &LinkBudget::los_mimo_snr_db)
        .def_readonly("los_mimo_spectral_efficiency", &LinkBudget::los_mimo_spectral_efficiency);
    m.def("link_budget", &compute_link_budget);
    m.def("link_budget_report", &link_budget_report);

    m.def("csv_header", &csv_header, py::arg("n_channels"));
    m.def(
        "sweep_csv",
        [](const ScenarioConfig &c, const std::string &variable, double start, double stop, double step,
           const std::string &system, std::vector<double> betas, const std::string &normalize) {
            SweepSpec s;
            if (variable != "height" && variable != "tx_power")
                throw ConfigError("variable must be 'height' or 'tx_power'");
            s.variable = variable == "height" ? SweepVariable::height : SweepVariable::tx_power;
            s.start = start;
            s.stop = stop;
            s.step = step;
            s.system = parse_system_tag(system);
            if (!betas.empty())
                s.beam_candidates = std::move(betas);
            if (!normalize.empty())
                s.normalization = parse_system_tag(normalize);
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release nogil;
                rows = s.variable == SweepVariable::height ? run_height_sweep(c, s) : run_power_sweep(c, s);
            }
            std::ostringstream os;
            write_csv(os, rows, s.system.n_subarrays * s.system.n_paths);
            return os.str();
        },
        py::arg("config"), py::arg("variable"), py::arg("start"), py::arg("stop"), py::arg("step"),
        py::arg("system") = "n2p2", py::arg("betas") = std::vector<double>{}, py::arg("normalize") = "",
        "Run a sweep and return the CSV text.");

    m.def("oscillation_frequency_estimate", &oscillation_frequency_estimate, py::arg("config"), py::arg("height"));
    m.def("dominant_frequency", &dominant_frequency, py::arg("samples"), py::arg("step"), py::arg("min_frequency") = 0.0);

}
