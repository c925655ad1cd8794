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

#include "tlsm/beamforming.hpp"

#include <cmath>
#include <stdexcept>

namespace tlsm
{
    BeamPattern make_pattern(double beta_x, double beta_y, std::size_t side)
    {
        BeamPattern p{beta_x, beta_y, ComplexVector(side * side)};
        for (std::size_t mx = 0; mx < side; ++mx)
            for (std::size_t my = 0; my < side; ++my)
                p.vector[mx * side + my] =
                    std::polar(1.0, static_cast<double>(mx) * beta_x + static_cast<double>(my) * beta_y);
        return p;
    }

    double steering_sine(const BeamPattern &p, const SubarrayLayout &layout)
    {
        return -p.beta_x * layout.wavelength / (2.0 * pi * layout.element_spacing);
    }

    Codebook elevation_codebook(std::size_t side)
    {
        Codebook cb;
        for (int n = -7; n <= 8; ++n)
            cb.patterns.push_back(make_pattern(n * pi / 8.0, 0.0, side));
        return cb;
    }

    namespace
    {
        ComplexMatrix pattern_matrix(const std::vector<BeamPattern> &ps, std::size_t m2)
        {
            ComplexMatrix f(m2, ps.size());
            for (std::size_t b = 0; b < ps.size(); ++b)
            {
                if (ps[b].vector.size() != m2)
                    throw std::invalid_argument("RFConfig: pattern length does not match M^2");
                for (std::size_t i = 0; i < m2; ++i)
                    f(i, b) = ps[b].vector[i];
            }
            return f;
        }
    }

    ComplexMatrix RFConfig::tx_matrix() const { return pattern_matrix(tx_patterns, layout.side * layout.side); }
    ComplexMatrix RFConfig::rx_matrix() const { return pattern_matrix(rx_patterns, layout.side * layout.side); }
    ComplexMatrix RFConfig::tx_expanded() const { return kron(tx_matrix(), ComplexMatrix::identity(n_subarrays)); }
    ComplexMatrix RFConfig::rx_expanded() const { return kron(rx_matrix(), ComplexMatrix::identity(n_subarrays)); }

    RFConfig make_rf_config(const SubarrayLayout &layout, std::size_t n_subarrays, const std::vector<double> &betas)
    {
        if (betas.empty())
            throw ConfigError("at least one beam is required");
        if (n_subarrays < 1)
            throw ConfigError("n_subarrays must be >= 1");
        RFConfig rf;
        rf.layout = layout;
        rf.n_subarrays = n_subarrays;
        for (double b : betas)
            rf.tx_patterns.push_back(make_pattern(b, 0.0, layout.side));
        rf.rx_patterns = rf.tx_patterns;
        return rf;
    }

    cx beam_gain(double theta, double phi, const BeamPattern &pattern, const SubarrayLayout &layout)
    {
        const ComplexVector a = array_response(theta, phi, layout);
        if (a.size() != pattern.vector.size())
            throw std::invalid_argument("beam_gain: pattern length does not match M^2");
        return dot_transpose(a, pattern.vector);
    }

    double dirichlet(double psi, std::size_t side)
    {
        const double den = std::sin(psi / 2.0);
        if (std::abs(den) < 1e-12)
        {
            // limit: +-M depending on the branch of psi / 2pi
            const double k = std::round(psi / (2.0 * pi));
            const bool odd = static_cast<long long>(k) % 2 != 0;
            return (odd && side % 2 == 0) ? -static_cast<double>(side) : static_cast<double>(side);
        }
        return std::sin(static_cast<double>(side) * psi / 2.0) / den;
    }

    double beam_gain_magnitude(double theta, double phi, const BeamPattern &pattern, const SubarrayLayout &layout)
    {
        const double k = 2.0 * pi * layout.element_spacing / layout.wavelength;
        const double psi_x = k * std::sin(theta) * std::cos(phi) + pattern.beta_x;
        const double psi_y = k * std::sin(theta) * std::sin(phi) + pattern.beta_y;
        return std::abs(dirichlet(psi_x, layout.side)) * std::abs(dirichlet(psi_y, layout.side));
    }

    ComplexVector gain_vector(const PathGeometry &path, const RFConfig &rf, Side side)
    {
        const auto &ps = side == Side::tx ? rf.tx_patterns : rf.rx_patterns;
        const double theta = side == Side::tx ? path.departure_elevation : path.arrival_elevation;
        const double phi = side == Side::tx ? path.departure_azimuth : path.arrival_azimuth;
        const ComplexVector a = array_response(theta, phi, rf.layout);
        ComplexVector g(ps.size());
        for (std::size_t b = 0; b < ps.size(); ++b)
        {
            if (ps[b].vector.size() != a.size())
                throw std::invalid_argument("gain_vector: pattern length does not match M^2");
            g[b] = dot_transpose(a, ps[b].vector);
        }
        return g;
    }

    ComplexMatrix effective_channel(const std::vector<PathCoupling> &paths, const RFConfig &rf)
    {
        const std::size_t n = rf.n_subarrays;
        const std::size_t nb = rf.n_beams();
        if (rf.rx_patterns.size() != nb)
            throw std::invalid_argument("effective_channel: tx and rx beam counts differ");
        ComplexMatrix h(n * nb, n * nb);
        for (const auto &p : paths)
        {
            if (p.coupling.rows() != n || p.coupling.cols() != n)
                throw std::invalid_argument("effective_channel: coupling matrix is not N x N");
            const ComplexVector gt = gain_vector(p.geometry, rf, Side::tx);
            const ComplexVector gr = gain_vector(p.geometry, rf, Side::rx);
            ComplexMatrix outer(nb, nb);
            for (std::size_t r = 0; r < nb; ++r)
                for (std::size_t c = 0; c < nb; ++c)
                    outer(r, c) = p.gain * gr[r] * gt[c];
            h += kron(outer, p.coupling);
        }
        return h;
    }

    ComplexMatrix effective_channel_from_physical(const ComplexMatrix &h, const RFConfig &rf)
    {
        const ComplexMatrix f = rf.tx_expanded();
        const ComplexMatrix w = rf.rx_expanded();
        if (h.rows() != w.rows() || h.cols() != f.rows())
            throw std::invalid_argument("effective_channel_from_physical: channel size does not match RF config");
        return w.transpose() * h * f;
    }

    ComplexMatrix effective_noise_covariance(const RFConfig &rf, double noise_power)
    {
        if (!(noise_power > 0.0))
            throw std::invalid_argument("effective_noise_covariance: noise power must be positive");
        const ComplexMatrix w = rf.rx_matrix();
        const ComplexMatrix wt = w.transpose();
        return noise_power * kron(wt * wt.adjoint(), ComplexMatrix::identity(rf.n_subarrays));
    }

    LinkSignals apply_link(const ComplexVector &s, const ComplexMatrix &f_bb, const RFConfig &rf,
                           const ComplexMatrix &h, const ComplexMatrix &w_bb_t, const ComplexVector &noise)
    {
        const ComplexMatrix f = rf.tx_expanded();
        const ComplexMatrix w = rf.rx_expanded();
        if (f_bb.cols() != s.size() || f.cols() != f_bb.rows() || h.cols() != f.rows() || h.rows() != noise.size() ||
            w.rows() != h.rows() || w_bb_t.cols() != w.cols())
            throw std::invalid_argument("apply_link: dimension mismatch");
        LinkSignals sig;
        sig.s = s;
        sig.n = noise;
        sig.z = f_bb * std::span<const cx>(s);
        sig.x = f * std::span<const cx>(sig.z);
        ComplexVector r = h * std::span<const cx>(sig.x);
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] += noise[i];
        sig.y = w_bb_t * std::span<const cx>(w.transpose() * std::span<const cx>(r));
        return sig;
    }
}
