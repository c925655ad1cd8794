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

#include "tlsm/capacity.hpp"
#include "tlsm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tlsm
{
    WaterfillingResult waterfill(std::span<const double> sigma, double noise_power, double power_constraint)
    {
        if (!(noise_power > 0.0))
            throw std::invalid_argument("waterfill: noise power must be positive");
        if (!(power_constraint > 0.0))
            throw std::invalid_argument("waterfill: power constraint must be positive");
        for (std::size_t q = 0; q < sigma.size(); ++q)
        {
            if (!(sigma[q] >= 0.0) || !std::isfinite(sigma[q]))
                throw std::invalid_argument("waterfill: singular values must be finite and nonnegative");
            if (q > 0 && sigma[q] > sigma[q - 1])
                throw std::invalid_argument("waterfill: singular values must be descending");
        }

        const std::size_t n = sigma.size();
        WaterfillingResult r;
        r.singular_values.assign(sigma.begin(), sigma.end());
        r.powers.assign(n, 0.0);
        r.snrs.assign(n, 0.0);

        std::size_t positive = 0;
        while (positive < n && sigma[positive] > 0.0)
            ++positive;
        if (positive == 0)
            return r;

        // inverse channel gains, ascending
        std::vector<double> floor(positive);
        for (std::size_t q = 0; q < positive; ++q)
            floor[q] = noise_power / (sigma[q] * sigma[q]);

        double prefix = 0.0;
        double kappa = 0.0;
        std::size_t active = 0;
        for (std::size_t m = 1; m <= positive; ++m)
        {
            prefix += floor[m - 1];
            const double level = (power_constraint + prefix) / static_cast<double>(m);
            if (level > floor[m - 1])
            {
                kappa = level;
                active = m;
            }
            else
                break;
        }
        r.water_level = kappa;
        for (std::size_t q = 0; q < active; ++q)
        {
            r.powers[q] = std::max(kappa - floor[q], 0.0);
            r.snrs[q] = r.powers[q] / floor[q];
            r.capacity += std::log1p(r.snrs[q]) / std::numbers::ln2;
            if (r.powers[q] > power_constraint * stream_threshold)
                ++r.n_streams;
        }
        return r;
    }

    Whitening rf_whitening(const RFConfig &rf)
    {
        const ComplexMatrix f = rf.tx_expanded();
        const ComplexMatrix wt = rf.rx_expanded().transpose();
        const InvSqrtResult t = inv_sqrt_psd(f.adjoint() * f);
        if (!t.full_rank())
            throw RankDeficientGram(Side::tx, t.rank, t.dimension);
        const InvSqrtResult r = inv_sqrt_psd(wt * wt.adjoint());
        if (!r.full_rank())
            throw RankDeficientGram(Side::rx, r.rank, r.dimension);
        return {t.matrix, r.matrix};
    }

    ComplexMatrix extended_channel(const ComplexMatrix &h_eff, const Whitening &w)
    {
        if (h_eff.rows() != w.rx.rows() || h_eff.cols() != w.tx.rows())
            throw std::invalid_argument("extended_channel: effective channel size does not match RF config");
        return w.rx * h_eff * w.tx;
    }

    ComplexMatrix extended_channel(const ComplexMatrix &h_eff, const RFConfig &rf)
    {
        return extended_channel(h_eff, rf_whitening(rf));
    }

    PrecoderSet baseband_precoders(const SvdResult &s, const WaterfillingResult &wf, const Whitening &w)
    {
        const std::size_t n = s.sigma.size();
        if (wf.powers.size() != n || s.u.rows() != n || w.tx.rows() != n || w.rx.rows() != n)
            throw std::invalid_argument("baseband_precoders: dimension mismatch");
        std::vector<double> amp(n);
        for (std::size_t q = 0; q < n; ++q)
            amp[q] = std::sqrt(wf.powers[q]);
        PrecoderSet p;
        p.psi = ComplexMatrix::diagonal(std::span<const double>(amp));
        p.f_bb = w.tx * s.v * p.psi;
        p.w_bb_t = s.u.adjoint() * w.rx;
        return p;
    }

    PrecoderSet baseband_precoders(const SvdResult &s, const WaterfillingResult &wf, const RFConfig &rf)
    {
        return baseband_precoders(s, wf, rf_whitening(rf));
    }

    double spectral_efficiency(const ComplexMatrix &h, const RFConfig &rf, const ComplexMatrix &f_bb,
                               const ComplexMatrix &w_bb_t, double noise_power, const ComplexMatrix *signal_covariance)
    {
        if (!(noise_power > 0.0))
            throw std::invalid_argument("spectral_efficiency: noise power must be positive");
        const ComplexMatrix f = rf.tx_expanded();
        const ComplexMatrix wt = rf.rx_expanded().transpose();
        if (h.cols() != f.rows() || h.rows() != wt.cols() || f_bb.rows() != f.cols() || w_bb_t.cols() != wt.rows())
            throw std::invalid_argument("spectral_efficiency: dimension mismatch");

        const ComplexMatrix eq = w_bb_t * wt;
        const ComplexMatrix a = eq * h * f * f_bb;
        const ComplexMatrix rn = noise_power * (eq * eq.adjoint());
        const InvSqrtResult b = inv_sqrt_psd(rn);
        if (!b.full_rank())
            throw NumericalError("spectral_efficiency: singular noise covariance after equalization");

        ComplexMatrix signal = signal_covariance ? a * (*signal_covariance) * a.adjoint() : a * a.adjoint();
        ComplexMatrix m = b.matrix * signal * b.matrix;
        // symmetrize against rounding before the Hermitian solver
        m = 0.5 * (m + m.adjoint());
        const HermEigResult e = herm_eig(m);
        double c = 0.0;
        for (double lam : e.eigenvalues)
            c += std::log1p(std::max(lam, 0.0)) / std::numbers::ln2;
        return c;
    }

    InnerResult inner_capacity(const std::vector<PathCoupling> &paths, const RFConfig &rf, double noise_power,
                               double power_constraint)
    {
        InnerResult r;
        const Whitening w = rf_whitening(rf);
        r.effective = effective_channel(paths, rf);
        r.extended = extended_channel(r.effective, w);
        r.decomposition = svd(r.extended);
        r.allocation = waterfill(r.decomposition.sigma, noise_power, power_constraint);
        r.precoders = baseband_precoders(r.decomposition, r.allocation, w);
        return r;
    }

    std::vector<double> default_beta2_candidates()
    {
        return {pi / 8.0, 2.0 * pi / 8.0, 3.0 * pi / 8.0, 4.0 * pi / 8.0};
    }

    OuterResult outer_search(const std::vector<double> &candidates, const std::vector<PathCoupling> &paths,
                             const SubarrayLayout &layout, std::size_t n_subarrays, double noise_power,
                             double power_constraint, double beta1)
    {
        std::vector<double> cands;
        for (double b : candidates)
            if (b != beta1)
                cands.push_back(b);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        if (cands.empty())
            throw ConfigError("outer_search: no admissible beta2 candidate");

        OuterResult best;
        best.beta1 = beta1;
        bool have = false;
        for (double b2 : cands)
        {
            const RFConfig rf = make_rf_config(layout, n_subarrays, {beta1, b2});
            InnerResult in = inner_capacity(paths, rf, noise_power, power_constraint);
            const double c = in.allocation.capacity;
            best.scores.push_back({b2, c});
            if (!have || c > best.capacity)
            {
                have = true;
                best.beta2 = b2;
                best.capacity = c;
                best.inner = std::move(in);
            }
        }
        return best;
    }
}
