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

#include "oracles.hpp"
#include "support.hpp"
#include "tlsm/capacity.hpp"
#include "tlsm/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace tlsm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const SubarrayLayout lay8{8, 0.0025, 0.005};
    const double h_ref = 50.0 * std::tan(14.48 * pi / 180.0);

    ScenarioConfig scene(double h, std::size_t n, double pt_dbm = 20.0)
    {
        ScenarioConfig c = reference_scenario();
        c.height = h;
        c.n_subarrays = n;
        c.subarray_spacing = optimal_subarray_spacing(c.carrier_wavelength, c.link_distance, n);
        c.tx_power_dbm = pt_dbm;
        return c;
    }

    InnerResult run(const ScenarioConfig &c, std::size_t n_paths, const std::vector<double> &betas)
    {
        const RFConfig rf = make_rf_config(layout_of(c), c.n_subarrays, betas);
        return inner_capacity(build_path_couplings(c, n_paths), rf, noise_power_watts(c), power_constraint_watts(c));
    }

    std::vector<double> random_sigma(std::mt19937_64 &rng, std::size_t n)
    {
        std::lognormal_distribution<double> ln(0.0, 1.5);
        std::vector<double> s(n);
        for (auto &x : s)
            x = ln(rng);
        std::sort(s.rbegin(), s.rend());
        return s;
    }
}

TEST_CASE("waterfill examples", "[capacity][waterfill]")
{
    const double s1[] = {0.7};
    const auto a = waterfill(s1, 0.1, 2.0);
    CHECK(a.powers[0] == 2.0);
    CHECK(a.n_streams == 1);
    CHECK_THAT(a.capacity, WithinRel(std::log2(1 + 0.49 * 2.0 / 0.1), 1e-14));

    const double s2[] = {1.3, 1.3};
    const auto b = waterfill(s2, 0.1, 2.0);
    CHECK_THAT(b.powers[0], WithinRel(1.0, 1e-14));
    CHECK_THAT(b.powers[1], WithinRel(1.0, 1e-14));

    const double noise = 1e-3;
    const double sn = std::sqrt(noise);
    const std::vector<double> s3{2 * sn, 1 * sn, 0.01 * sn};
    const double pc = 2.0;
    const auto c = waterfill(s3, noise, pc);
    CHECK(c.powers[2] == 0.0);
    CHECK(c.n_streams == 2);
    CHECK_THAT(c.capacity, WithinRel(test::grid_waterfill_capacity(s3, noise, pc, 10000), 1e-6));
}

TEST_CASE("waterfill with all-zero gains", "[capacity][waterfill]")
{
    const double z[] = {0.0, 0.0, 0.0};
    const auto r = waterfill(z, 1.0, 1.0);
    CHECK(r.capacity == 0.0);
    CHECK_FALSE(r.water_level.has_value());
    CHECK(r.n_streams == 0);
    for (double p : r.powers)
        CHECK(p == 0.0);
}

TEST_CASE("waterfill rejects invalid input", "[capacity][waterfill]")
{
    const double asc[] = {1.0, 2.0};
    CHECK_THROWS_AS(waterfill(asc, 1.0, 1.0), std::invalid_argument);
    const double neg[] = {1.0, -1.0};
    CHECK_THROWS_AS(waterfill(neg, 1.0, 1.0), std::invalid_argument);
    const double ok[] = {1.0};
    CHECK_THROWS_AS(waterfill(ok, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(waterfill(ok, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("waterfill invariants and KKT", "[capacity][waterfill][property]")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pcd(0.01, 10.0);
    for (int t = 0; t < 300; ++t)
    {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
        auto s = random_sigma(rng, n);
        if (n > 1 && t % 7 == 0)
            s.back() = 0.0;
        const double noise = 0.5, pc = pcd(rng);
        const auto r = waterfill(s, noise, pc);
        REQUIRE(r.water_level.has_value());
        const double kappa = *r.water_level;
        const double total = std::accumulate(r.powers.begin(), r.powers.end(), 0.0);
        CHECK_THAT(total, WithinRel(pc, 1e-9));
        CHECK(r.n_streams <= n);
        double c = 0.0;
        for (std::size_t q = 0; q < n; ++q)
        {
            CHECK(r.powers[q] >= 0.0);
            if (s[q] == 0.0)
            {
                CHECK(r.powers[q] == 0.0);
                continue;
            }
            const double floor = noise / (s[q] * s[q]);
            CHECK_THAT(r.powers[q], WithinAbs(std::max(kappa - floor, 0.0), 1e-12 * kappa));
            if (r.powers[q] > 0.0)
                CHECK_THAT(r.powers[q] + floor, WithinRel(kappa, 1e-12));
            else
                CHECK(floor >= kappa);
            CHECK_THAT(r.snrs[q], WithinRel(s[q] * s[q] * r.powers[q] / noise, 1e-12));
            c += std::log2(1 + r.snrs[q]);
        }
        CHECK_THAT(r.capacity, WithinRel(c, 1e-12));
        CHECK_THAT(kappa, WithinRel(test::bisection_water_level(s, noise, pc), 1e-10));
    }
}

TEST_CASE("waterfill beats random feasible allocations", "[capacity][waterfill][property]")
{
    std::mt19937_64 rng(32);
    std::exponential_distribution<double> ex(1.0);
    for (int t = 0; t < 30; ++t)
    {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        const auto s = random_sigma(rng, n);
        const double noise = 1.0, pc = 3.0;
        const auto r = waterfill(s, noise, pc);
        for (int k = 0; k < 10000; ++k)
        {
            std::vector<double> p(n);
            double sum = 0.0;
            for (auto &x : p)
                sum += (x = ex(rng));
            for (auto &x : p)
                x *= pc / sum;
            CHECK(r.capacity >= test::capacity_of(s, p, noise) - 1e-12);
        }
    }
}

TEST_CASE("waterfill matches the grid oracle", "[capacity][waterfill][property]")
{
    std::mt19937_64 rng(33);
    for (int t = 0; t < 8; ++t)
    {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
        const auto s = random_sigma(rng, n);
        const double noise = 1.0, pc = 0.2 + t;
        const auto r = waterfill(s, noise, pc);
        CHECK_THAT(r.capacity, WithinRel(test::grid_waterfill_capacity(s, noise, pc, 10000), 1e-6));
    }
}

TEST_CASE("waterfill monotonicity and scaling", "[capacity][waterfill][property]")
{
    std::mt19937_64 rng(34);
    for (int t = 0; t < 100; ++t)
    {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
        auto s = random_sigma(rng, n);
        const double noise = 0.3, pc = 1.0 + t * 0.1;
        const auto base = waterfill(s, noise, pc);
        CHECK(waterfill(s, noise, pc * 1.5).capacity >= base.capacity);

        const auto scaled = waterfill(s, noise * 7.0, pc * 7.0);
        CHECK_THAT(scaled.capacity, WithinRel(base.capacity, 1e-12));
        for (std::size_t q = 0; q < n; ++q)
            CHECK_THAT(scaled.snrs[q], WithinAbs(base.snrs[q], 1e-10 * (1 + base.snrs[q])));

        const std::size_t q = static_cast<std::size_t>(t) % n;
        auto grown = s;
        grown[q] *= 1.2;
        std::sort(grown.rbegin(), grown.rend());
        CHECK(waterfill(grown, noise, pc).capacity >= base.capacity);
    }
}

TEST_CASE("extended channel whitening", "[capacity][extended]")
{
    const ScenarioConfig c = scene(h_ref, 2);
    const auto paths = build_path_couplings(c, 2);

    const RFConfig orth = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    const ComplexMatrix heff = effective_channel(paths, orth);
    CHECK(test::max_abs_diff(extended_channel(heff, orth), heff * cx(1.0 / 64)) <= 1e-12 * frobenius_norm(heff) / 64);

    const ScenarioConfig c1 = scene(h_ref, 1);
    const auto p1 = build_path_couplings(c1, 1);
    const RFConfig rf1 = make_rf_config(lay8, 1, {0.0});
    const ComplexMatrix g1 = extended_channel(effective_channel(p1, rf1), rf1);
    CHECK_THAT(std::abs(g1(0, 0)), WithinRel(std::abs(p1[0].gain) * 64 * 64 / 64, 1e-12));

    const RFConfig near = make_rf_config(lay8, 2, {0.0, pi / 8});
    const ComplexMatrix hn = effective_channel(paths, near);
    const auto sg = svd(extended_channel(hn, near)).sigma;
    const auto sh = svd(hn).sigma;
    double diff = 0.0;
    for (std::size_t q = 0; q < 4; ++q)
        diff = std::max(diff, std::abs(sg[q] - sh[q] / 64) / sg[0]);
    CHECK(diff > 1e-2);
}

TEST_CASE("duplicate beams name the rank-deficient side", "[capacity][extended]")
{
    const RFConfig dup = make_rf_config(lay8, 2, {0.3, 0.3});
    try
    {
        rf_whitening(dup);
        FAIL("expected RankDeficientGram");
    }
    catch (const RankDeficientGram &e)
    {
        CHECK(e.side() == Side::tx);
        CHECK(std::string(e.what()).find("tx") != std::string::npos);
    }

    RFConfig rx_dup = make_rf_config(lay8, 2, {0.0, 0.5});
    rx_dup.rx_patterns[1] = rx_dup.rx_patterns[0];
    try
    {
        rf_whitening(rx_dup);
        FAIL("expected RankDeficientGram");
    }
    catch (const RankDeficientGram &e)
    {
        CHECK(e.side() == Side::rx);
    }
    CHECK_THROWS_AS(inner_capacity({}, dup, 1.0, 1.0), NumericalError);
}

TEST_CASE("spectral efficiency of parallel channels", "[capacity][se]")
{
    const SubarrayLayout one{1, 0.0025, 0.005};
    const RFConfig rf = make_rf_config(one, 3, {0.0});
    const ComplexMatrix id = ComplexMatrix::identity(3);
    const cx d[] = {cx(2.0, 1.0), cx(0.0, 0.5), cx(-1.0, 0.0)};
    const ComplexMatrix h = ComplexMatrix::diagonal(std::span<const cx>(d));
    const double noise = 0.4;
    double expected = 0.0;
    for (const cx &x : d)
        expected += std::log2(1 + std::norm(x) / noise);
    CHECK_THAT(spectral_efficiency(h, rf, id, id, noise), WithinRel(expected, 1e-13));
    CHECK(spectral_efficiency(ComplexMatrix(3, 3), rf, id, id, noise) == 0.0);

    // signal covariance enters as A R_s A^H
    const double rs_d[] = {2.0, 1.0, 0.5};
    const ComplexMatrix rs = ComplexMatrix::diagonal(std::span<const double>(rs_d));
    double ex2 = 0.0;
    for (std::size_t q = 0; q < 3; ++q)
        ex2 += std::log2(1 + rs_d[q] * std::norm(d[q]) / noise);
    CHECK_THAT(spectral_efficiency(h, rf, id, id, noise, &rs), WithinRel(ex2, 1e-13));

    ComplexMatrix bad = id;
    bad(1, 1) = 0.0;
    CHECK_THROWS_AS(spectral_efficiency(h, rf, id, bad, noise), NumericalError);
    CHECK_THROWS_AS(spectral_efficiency(h, rf, id, id, 0.0), std::invalid_argument);
}

TEST_CASE("precoders close the capacity loop", "[capacity][precoders]")
{
    for (double h : {8.0, h_ref, 27.0})
        for (const std::vector<double> &betas : {std::vector<double>{0.0, 2 * pi / 8}, std::vector<double>{0.0, pi / 8}})
        {
            const ScenarioConfig c = scene(h, 2);
            const auto paths = build_path_couplings(c, 2);
            const RFConfig rf = make_rf_config(lay8, 2, betas);
            const double noise = noise_power_watts(c), pc = power_constraint_watts(c);
            const InnerResult in = inner_capacity(paths, rf, noise, pc);
            const ComplexMatrix hphys = assemble_channel(paths, 2, 8);
            const PrecoderSet &p = in.precoders;

            CHECK_THAT(spectral_efficiency(hphys, rf, p.f_bb, p.w_bb_t, noise), WithinRel(in.allocation.capacity, 1e-8));
            CHECK_THAT(frobenius_norm_sq(rf.tx_expanded() * p.f_bb), WithinRel(pc, 1e-9));

            const ComplexMatrix eq = p.w_bb_t * rf.rx_expanded().transpose();
            CHECK(frobenius_norm(eq * eq.adjoint() - ComplexMatrix::identity(4)) <= 1e-9);

            // end-to-end map is Sigma Psi
            const ComplexMatrix e2e = eq * hphys * rf.tx_expanded() * p.f_bb;
            const double scale = in.decomposition.sigma[0] * std::sqrt(pc);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t q = 0; q < 4; ++q)
                {
                    const double want = r == q ? in.decomposition.sigma[r] * std::sqrt(in.allocation.powers[r]) : 0.0;
                    CHECK(std::abs(e2e(r, q) - want) <= 1e-9 * scale);
                }
        }
}

TEST_CASE("zero power allocation gives zero precoder", "[capacity][precoders]")
{
    const ScenarioConfig c = scene(h_ref, 2);
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    const auto paths = build_path_couplings(c, 2);
    const SvdResult s = svd(extended_channel(effective_channel(paths, rf), rf));
    WaterfillingResult wf;
    wf.singular_values = s.sigma;
    wf.powers.assign(4, 0.0);
    wf.snrs.assign(4, 0.0);
    const PrecoderSet p = baseband_precoders(s, wf, rf);
    CHECK(frobenius_norm(p.f_bb) == 0.0);
    CHECK(spectral_efficiency(assemble_channel(paths, 2, 8), rf, p.f_bb, p.w_bb_t, 1e-11) == 0.0);
}

TEST_CASE("single-subarray LoS baseline", "[capacity][inner]")
{
    const ScenarioConfig c = scene(20.0, 1);
    const InnerResult r = run(c, 1, {0.0});
    const double alpha = std::abs(build_path_couplings(c, 1)[0].gain);
    const double sigma = alpha * 64.0;
    CHECK_THAT(r.decomposition.sigma[0], WithinRel(sigma, 1e-12));
    const double snr = sigma * sigma * power_constraint_watts(c) / noise_power_watts(c);
    CHECK_THAT(r.allocation.capacity, WithinRel(std::log2(1 + snr), 1e-12));
}

TEST_CASE("LoS MIMO doubles the single-subarray capacity", "[capacity][inner]")
{
    for (double h : {5.0, 20.0, 35.0})
    {
        const InnerResult c11 = run(scene(h, 1), 1, {0.0});
        const InnerResult c21 = run(scene(h, 2), 1, {0.0});
        CHECK_THAT(c21.allocation.capacity, WithinRel(2 * c11.allocation.capacity, 1e-2));
        CHECK_THAT(c21.decomposition.sigma[0], WithinRel(std::sqrt(2.0) * c11.decomposition.sigma[0], 1e-2));
        CHECK_THAT(c21.decomposition.sigma[1], WithinRel(c21.decomposition.sigma[0], 1e-2));
    }
}

TEST_CASE("two-path two-subarray gain at the reference height", "[capacity][inner]")
{
    const InnerResult c22 = run(scene(h_ref, 2), 2, {0.0, 2 * pi / 8});
    const InnerResult c21 = run(scene(h_ref, 2), 1, {0.0});
    CHECK(c22.allocation.capacity > 1.4 * c21.allocation.capacity);
    const auto &g = c22.allocation.snrs;
    CHECK(std::abs(10 * std::log10(g[0]) - 10 * std::log10(g[1])) <= 1.0);
    CHECK(c22.allocation.n_streams <= 4);
}

TEST_CASE("global phase of a path does not change the allocation", "[capacity][property]")
{
    const ScenarioConfig c = scene(17.3, 2);
    auto paths = build_path_couplings(c, 2);
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, 3 * pi / 8});
    const double noise = noise_power_watts(c), pc = power_constraint_watts(c);
    const InnerResult a = inner_capacity(paths, rf, noise, pc);
    for (auto &p : paths)
        p.coupling *= std::polar(1.0, 1.234);
    const InnerResult b = inner_capacity(paths, rf, noise, pc);
    CHECK_THAT(b.allocation.capacity, WithinRel(a.allocation.capacity, 1e-12));
    for (std::size_t q = 0; q < 4; ++q)
    {
        CHECK_THAT(b.decomposition.sigma[q], WithinRel(a.decomposition.sigma[q], 1e-10));
        CHECK_THAT(b.allocation.powers[q], WithinAbs(a.allocation.powers[q], 1e-10 * pc));
    }

    // whole effective channel times a unit scalar
    const ComplexMatrix g = extended_channel(effective_channel(paths, rf), rf);
    const auto s1 = svd(g).sigma;
    const auto s2 = svd(std::polar(1.0, -0.4) * g).sigma;
    for (std::size_t q = 0; q < 4; ++q)
        CHECK_THAT(s2[q], WithinRel(s1[q], 1e-12));
}

TEST_CASE("outer search", "[capacity][outer]")
{
    const ScenarioConfig c = scene(h_ref, 2, 25.0);
    const auto paths = build_path_couplings(c, 2);
    const double noise = noise_power_watts(c), pc = power_constraint_watts(c);

    const OuterResult one = outer_search({3 * pi / 8}, paths, lay8, 2, noise, pc);
    CHECK(one.beta2 == 3 * pi / 8);
    CHECK(one.scores.size() == 1);

    const OuterResult best = outer_search(default_beta2_candidates(), paths, lay8, 2, noise, pc);
    CHECK(best.beta2 == 2 * pi / 8);
    CHECK(best.scores.size() == 4);
    for (const auto &s : best.scores)
        CHECK(best.capacity >= s.capacity);
    CHECK(best.inner.allocation.capacity == best.capacity);

    // duplicates and the fixed beam are dropped, the winner is the first maximum in ascending order
    const OuterResult d = outer_search({4 * pi / 8, 0.0, pi / 8, 4 * pi / 8}, paths, lay8, 2, noise, pc);
    REQUIRE(d.scores.size() == 2);
    CHECK(d.scores[0].beta2 == pi / 8);
    CHECK(d.scores[1].beta2 == 4 * pi / 8);
    const double top = std::max(d.scores[0].capacity, d.scores[1].capacity);
    CHECK(d.beta2 == (d.scores[0].capacity == top ? pi / 8 : 4 * pi / 8));

    CHECK_THROWS_AS(outer_search({0.0}, paths, lay8, 2, noise, pc), ConfigError);
}
