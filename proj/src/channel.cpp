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

#include "tlsm/channel.hpp"
#include "tlsm/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace tlsm
{
    SubarrayLayout layout_of(const ScenarioConfig &cfg)
    {
        return {cfg.subarray_side, cfg.element_spacing, cfg.carrier_wavelength};
    }

    ComplexVector array_response(double theta, double phi, std::size_t side, double element_spacing,
                                 double wavelength)
    {
        if (side < 1)
            throw std::invalid_argument("array_response: side must be >= 1");
        const double k = 2.0 * pi * element_spacing / wavelength;
        const double ux = k * std::sin(theta) * std::cos(phi);
        const double uy = k * std::sin(theta) * std::sin(phi);
        ComplexVector a(side * side);
        for (std::size_t mx = 0; mx < side; ++mx)
            for (std::size_t my = 0; my < side; ++my)
                a[mx * side + my] = std::polar(1.0, static_cast<double>(mx) * ux + static_cast<double>(my) * uy);
        return a;
    }

    ComplexVector array_response(double theta, double phi, const SubarrayLayout &layout)
    {
        return array_response(theta, phi, layout.side, layout.element_spacing, layout.wavelength);
    }

    cx fresnel_te_reflection(double incidence, const GroundMaterial &m)
    {
        const cx eps_c = m.relative_permittivity * cx(1.0, -m.loss_tangent);
        const double c = std::cos(incidence);
        const double s = std::sin(incidence);
        cx root = std::sqrt(eps_c - s * s);
        if (root.real() < 0.0)
            root = -root;
        return (c - root) / (c + root);
    }

    cx path_gain(cx reflection, double length, double wavelength)
    {
        if (!(length > 0.0))
            throw std::invalid_argument("path_gain: path length must be positive");
        return reflection * (wavelength / (4.0 * pi * length));
    }

    ComplexMatrix coupling_matrix(const PathGeometry &path, double wavelength)
    {
        const std::size_t n = path.n_subarrays;
        if (path.pair_lengths.size() != n * n)
            throw std::invalid_argument("coupling_matrix: pair_lengths must hold N x N entries");
        ComplexMatrix h(n, n);
        const double k = 2.0 * pi / wavelength;
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t c = 0; c < n; ++c)
                h(l, c) = std::polar(1.0, -k * path.pair_length(l, c));
        return h;
    }

    ComplexMatrix los_coupling_fraunhofer(std::size_t n)
    {
        if (n < 1)
            throw std::invalid_argument("los_coupling_fraunhofer: N must be >= 1");
        ComplexMatrix h(n, n);
        for (std::size_t l = 0; l < n; ++l)
            for (std::size_t k = 0; k < n; ++k)
            {
                const double diff = static_cast<double>(l) - static_cast<double>(k);
                // reduce (l-k)^2 mod 2N before scaling to keep the phase exact
                const auto q = static_cast<long long>(diff * diff) % static_cast<long long>(2 * n);
                h(l, k) = std::polar(1.0, -pi * static_cast<double>(q) / static_cast<double>(n));
            }
        return h;
    }

    ComplexMatrix ura_coupling_factorized(const ComplexMatrix &hx, const ComplexMatrix &hy)
    {
        if (!hx.is_square() || !hy.is_square())
            throw std::invalid_argument("ura_coupling_factorized: factors must be square");
        return kron(hx, hy);
    }

    PathCoupling make_path_coupling(const PathGeometry &path, const ScenarioConfig &cfg)
    {
        PathCoupling pc;
        pc.geometry = path;
        pc.reflection = path.is_los ? cx(1.0, 0.0) : fresnel_te_reflection(path.incidence_angle, cfg.ground);
        pc.gain = path_gain(pc.reflection, path.center_length, cfg.carrier_wavelength);
        pc.coupling = coupling_matrix(path, cfg.carrier_wavelength);
        const SubarrayLayout lay = layout_of(cfg);
        pc.tx_response = array_response(path.departure_elevation, path.departure_azimuth, lay);
        pc.rx_response = array_response(path.arrival_elevation, path.arrival_azimuth, lay);
        return pc;
    }

    std::vector<PathCoupling> build_path_couplings(const ScenarioConfig &cfg, std::size_t n_paths)
    {
        std::vector<PathCoupling> out;
        for (const auto &g : build_paths(cfg, n_paths))
            out.push_back(make_path_coupling(g, cfg));
        return out;
    }

    ComplexMatrix assemble_channel(const std::vector<PathCoupling> &paths, std::size_t n_subarrays, std::size_t side)
    {
        const std::size_t m2 = side * side;
        ComplexMatrix h(n_subarrays * m2, n_subarrays * m2);
        for (const auto &p : paths)
        {
            if (p.coupling.rows() != n_subarrays || p.coupling.cols() != n_subarrays)
                throw std::invalid_argument("assemble_channel: coupling matrix is not N x N");
            if (p.tx_response.size() != m2 || p.rx_response.size() != m2)
                throw std::invalid_argument("assemble_channel: array response length is not M^2");
            ComplexMatrix outer(m2, m2);
            for (std::size_t r = 0; r < m2; ++r)
                for (std::size_t c = 0; c < m2; ++c)
                    outer(r, c) = p.gain * p.rx_response[r] * p.tx_response[c];
            h += kron(outer, p.coupling);
        }
        return h;
    }
}
