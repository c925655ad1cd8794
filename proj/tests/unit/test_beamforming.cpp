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

#include "support.hpp"
#include "tlsm/beamforming.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace tlsm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const SubarrayLayout lay8{8, 0.0025, 0.005};

    ScenarioConfig scene(double h, std::size_t n)
    {
        ScenarioConfig c = reference_scenario();
        c.height = h;
        c.n_subarrays = n;
        c.subarray_spacing = optimal_subarray_spacing(c.carrier_wavelength, c.link_distance, n);
        return c;
    }

    const double h_ref = 50.0 * std::tan(14.48 * pi / 180.0);
}

TEST_CASE("codebook", "[beamforming][codebook]")
{
    const Codebook cb = elevation_codebook(8);
    REQUIRE(cb.patterns.size() == 16);
    for (std::size_t i = 0; i < 16; ++i)
    {
        const int n = static_cast<int>(i) - 7;
        CHECK(cb.patterns[i].beta_x == n * pi / 8.0);
        CHECK(cb.patterns[i].beta_y == 0.0);
        CHECK_THAT(steering_sine(cb.patterns[i], lay8), WithinAbs(-n / 8.0, 1e-15));
        for (const cx &e : cb.patterns[i].vector)
            CHECK_THAT(std::abs(e), WithinAbs(1.0, 1e-15));
    }
    const BeamPattern p = make_pattern(0.3, -0.7, 3);
    CHECK(std::abs(p.vector[2 * 3 + 1] - std::polar(1.0, 2 * 0.3 - 0.7)) <= 1e-15);
}

TEST_CASE("beam gain examples", "[beamforming][gain]")
{
    const BeamPattern b0 = make_pattern(0.0, 0.0, 8);
    const cx g = beam_gain(0.0, 0.0, b0, lay8);
    CHECK_THAT(g.real(), WithinAbs(64.0, 1e-12));
    CHECK_THAT(10 * std::log10(std::abs(g)), WithinAbs(18.06, 0.005));

    const BeamPattern b2 = make_pattern(2 * pi / 8, 0.0, 8);
    CHECK_THAT(std::abs(beam_gain(-std::asin(0.25), 0.0, b2, lay8)), WithinAbs(64.0, 1e-10));
    CHECK_THAT(std::abs(beam_gain(-14.48 * pi / 180.0, 0.0, b2, lay8)), WithinRel(64.0, 1e-4));
    CHECK(std::abs(beam_gain(0.0, 0.0, b2, lay8)) <= 1e-12);
    // the reflected direction sits on a null of the broadside beam
    CHECK(std::abs(beam_gain(-std::asin(0.25), 0.0, b0, lay8)) <= 1e-12);
}

TEST_CASE("main lobe of every codeword", "[beamforming][gain][property]")
{
    for (const auto &p : elevation_codebook(8).patterns)
    {
        const double s = -p.beta_x / pi;
        if (std::abs(s) > 1.0)
            continue;
        CHECK_THAT(std::abs(beam_gain(std::asin(s), 0.0, p, lay8)), WithinAbs(64.0, 1e-10));
        // nothing on the grid exceeds the peak
        for (int i = -400; i <= 400; ++i)
            CHECK(beam_gain_magnitude(i * (pi / 2) / 400.0, 0.0, p, lay8) <= 64.0 + 1e-9);
    }
}

TEST_CASE("inner product and Dirichlet form agree", "[beamforming][gain][property]")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> th(-pi / 2, pi / 2), ph(-pi, pi), be(-pi, pi);
    for (std::size_t m : {1u, 2u, 5u, 8u})
    {
        const SubarrayLayout lay{m, 0.0025, 0.005};
        for (int t = 0; t < 300; ++t)
        {
            const double theta = th(rng), phi = ph(rng);
            const BeamPattern p = make_pattern(be(rng), be(rng), m);
            CHECK_THAT(beam_gain_magnitude(theta, phi, p, lay), WithinAbs(std::abs(beam_gain(theta, phi, p, lay)), 1e-10));
        }
        // removable singularities on both axes, including psi = 2 pi
        for (double bx : {0.0, pi / 2, -pi})
        {
            const double s = -bx / pi;
            const BeamPattern p = make_pattern(bx, 2 * pi, m);
            CHECK_THAT(beam_gain_magnitude(std::asin(s), 0.0, p, lay), WithinAbs(std::abs(beam_gain(std::asin(s), 0.0, p, lay)), 1e-10));
        }
    }
    CHECK(dirichlet(0.0, 8) == 8.0);
    CHECK(dirichlet(2 * pi, 8) == -8.0);
    CHECK(dirichlet(2 * pi, 7) == 7.0);
}

TEST_CASE("beam gain mirror symmetry", "[beamforming][gain][property]")
{
    for (const auto &p : elevation_codebook(8).patterns)
    {
        const BeamPattern m = make_pattern(-p.beta_x, 0.0, 8);
        for (int i = -50; i <= 50; ++i)
        {
            const double theta = i * (pi / 2) / 50.0;
            CHECK_THAT(std::abs(beam_gain(theta, 0.0, p, lay8)), WithinAbs(std::abs(beam_gain(-theta, 0.0, m, lay8)), 1e-10));
        }
    }
}

TEST_CASE("broadside beam nulls", "[beamforming][gain]")
{
    const BeamPattern b0 = make_pattern(0.0, 0.0, 8);
    for (int k = 1; k <= 7; ++k)
    {
        const double s = k / 4.0 * (0.005 / (2 * 0.0025));
        if (s > 1.0)
            break;
        CHECK(std::abs(beam_gain(std::asin(s), 0.0, b0, lay8)) <= 1e-12);
        CHECK(std::abs(beam_gain(-std::asin(s), 0.0, b0, lay8)) <= 1e-12);
    }
}

TEST_CASE("gain vectors", "[beamforming][gain]")
{
    const ScenarioConfig c = scene(h_ref, 2);
    const auto paths = build_two_path_geometry(c);

    const RFConfig rf1 = make_rf_config(lay8, 2, {0.0});
    const ComplexVector g1 = gain_vector(paths[0], rf1, Side::tx);
    REQUIRE(g1.size() == 1);
    CHECK_THAT(g1[0].real(), WithinAbs(64.0, 1e-12));

    const RFConfig rf2 = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    const ComplexVector g2 = gain_vector(paths[0], rf2, Side::rx);
    CHECK_THAT(std::abs(g2[0]), WithinAbs(64.0, 1e-12));
    CHECK(std::abs(g2[1]) <= 1e-12);

    for (Side side : {Side::tx, Side::rx})
    {
        const ComplexVector gv = gain_vector(paths[1], rf2, side);
        for (std::size_t b = 0; b < 2; ++b)
            CHECK(gv[b] == beam_gain(paths[1].departure_elevation, 0.0, rf2.tx_patterns[b], lay8));
    }
}

TEST_CASE("RF matrices", "[beamforming][rf]")
{
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, pi / 8, 3 * pi / 8});
    CHECK(rf.n_beams() == 3);
    const ComplexMatrix f = rf.tx_matrix();
    CHECK(f.rows() == 64);
    CHECK(f.cols() == 3);
    const ComplexMatrix fe = rf.tx_expanded();
    CHECK(fe.rows() == 128);
    CHECK(fe.cols() == 6);
    CHECK(fe == kron(f, ComplexMatrix::identity(2)));
    CHECK_THROWS_AS(make_rf_config(lay8, 2, {}), ConfigError);
}

TEST_CASE("effective channel: Kronecker and physical forms agree", "[beamforming][heff][property]")
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> hd(5.0, 35.0);
    std::uniform_int_distribution<int> code(-7, 8);
    for (int t = 0; t < 20; ++t)
    {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 2);
        const ScenarioConfig c = scene(hd(rng), n);
        const auto paths = build_path_couplings(c, 1 + static_cast<std::size_t>(t / 2 % 2));
        std::vector<double> betas;
        for (std::size_t b = 0; b < 1 + static_cast<std::size_t>(t % 3); ++b)
            betas.push_back(code(rng) * pi / 8);
        const RFConfig rf = make_rf_config(layout_of(c), n, betas);
        const ComplexMatrix k = effective_channel(paths, rf);
        const ComplexMatrix p = effective_channel_from_physical(assemble_channel(paths, n, 8), rf);
        double scale = frobenius_norm(k);
        for (const auto &pc : paths)
            scale = std::max(scale, 1e-12 * std::abs(pc.gain) * 64 * 64);
        CHECK(frobenius_norm(k - p) <= 1e-10 * scale);
    }
}

TEST_CASE("effective channel matches the worked two-by-two-by-two example", "[beamforming][heff]")
{
    // centred phase reference: lowest subarray half a spacing below h
    const double h = h_ref;
    ScenarioConfig c = scene(h, 2);
    const double d = c.subarray_spacing;
    c.height = h - d / 2;
    const auto paths = build_path_couplings(c, 2);
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    const ComplexMatrix heff = effective_channel(paths, rf);

    const double lam = c.carrier_wavelength, dist = c.link_distance;
    auto ph = [&](double len) { return std::polar(1.0, -2 * pi * len / lam); };
    const ComplexMatrix h1 = ph(dist) * ComplexMatrix{{1.0, std::polar(1.0, -pi / 2)}, {std::polar(1.0, -pi / 2), 1.0}};
    // printed with the upper subarray first; reverse both indices
    const ComplexMatrix h2_printed{{ph(std::hypot(2 * h + d, dist)), ph(std::hypot(2 * h, dist))},
                                   {ph(std::hypot(2 * h, dist)), ph(std::hypot(2 * h - d, dist))}};
    const ComplexMatrix flip{{0.0, 1.0}, {1.0, 0.0}};
    const ComplexMatrix h2 = flip * h2_printed * flip;

    ComplexMatrix expected(4, 4);
    const ComplexMatrix *hp[] = {&h1, &h2};
    for (std::size_t p = 0; p < 2; ++p)
    {
        const ComplexVector gt = gain_vector(paths[p].geometry, rf, Side::tx);
        const ComplexVector gr = gain_vector(paths[p].geometry, rf, Side::rx);
        ComplexMatrix gm(2, 2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t q = 0; q < 2; ++q)
                gm(r, q) = gt[q] * gr[r];
        expected += paths[p].gain * kron(gm, *hp[p]);
    }
    CHECK(test::max_abs_diff(heff, expected) <= 1e-2 * std::abs(paths[0].gain) * 64 * 64);
    // phases near 1e5 rad carry ~1e-11 rounding
    CHECK(test::max_abs_diff(paths[1].coupling, h2) <= 1e-9);
}

TEST_CASE("effective channel of beams orthogonal to the path is zero", "[beamforming][heff]")
{
    const ScenarioConfig c = scene(20.0, 2);
    const auto los = build_path_couplings(c, 1);
    const RFConfig rf = make_rf_config(lay8, 2, {2 * pi / 8, 4 * pi / 8});
    CHECK(frobenius_norm(effective_channel(los, rf)) <= 1e-12 * std::abs(los[0].gain) * 64 * 64);
}

TEST_CASE("effective noise covariance", "[beamforming][noise]")
{
    const double s2 = 1e-11;
    const RFConfig orth = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    CHECK(test::max_abs_diff(effective_noise_covariance(orth, s2), s2 * 64.0 * ComplexMatrix::identity(4)) <= 1e-12 * s2);

    const RFConfig one = make_rf_config(lay8, 1, {0.7});
    CHECK_THAT(effective_noise_covariance(one, s2)(0, 0).real(), WithinRel(64 * s2, 1e-14));

    const RFConfig near = make_rf_config(lay8, 1, {0.0, pi / 8});
    const ComplexMatrix r = effective_noise_covariance(near, s2);
    // geometric series: |sum_m e^{j m pi/8}| * M for the square subarray
    const double expected = std::abs(std::sin(8 * (pi / 8) / 2) / std::sin((pi / 8) / 2)) * 8;
    CHECK_THAT(std::abs(r(0, 1)), WithinRel(expected * s2, 1e-12));
    CHECK(std::abs(r(0, 1)) > 0.0);
    CHECK_THROWS_AS(effective_noise_covariance(near, 0.0), std::invalid_argument);
}

TEST_CASE("apply_link", "[beamforming][link]")
{
    const ScenarioConfig c = scene(20.0, 2);
    const auto los = build_path_couplings(c, 1);
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, 2 * pi / 8});
    const ComplexMatrix h = assemble_channel(los, 2, 8);
    const ComplexMatrix heff = effective_channel(los, rf);
    const ComplexMatrix id = ComplexMatrix::identity(4);

    const ComplexVector s{cx(1, 0), cx(0, 1), cx(-1, 0.5), cx(0.2, -0.3)};
    const LinkSignals sig = apply_link(s, id, rf, h, id, ComplexVector(128));
    const ComplexVector ref = heff * std::span<const cx>(s);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(sig.y[i] - ref[i]) <= 1e-12 * frobenius_norm(heff));
    CHECK(sig.z == s);
    CHECK(sig.x.size() == 128);

    std::mt19937_64 rng(23);
    std::normal_distribution<double> nd;
    ComplexVector n(128);
    for (auto &e : n)
        e = {nd(rng), nd(rng)};
    const LinkSignals z = apply_link(ComplexVector(4), id, rf, h, id, n);
    const ComplexVector wn = rf.rx_expanded().transpose() * std::span<const cx>(n);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(z.y[i] - wn[i]) <= 1e-12);

    CHECK_THROWS_AS(apply_link(ComplexVector(3), id, rf, h, id, n), std::invalid_argument);
}

TEST_CASE("sampled equalized noise matches its covariance", "[beamforming][noise][property]")
{
    const double s2 = 2.0;
    const RFConfig rf = make_rf_config(lay8, 2, {0.0, pi / 8});
    const ComplexMatrix wt = rf.rx_expanded().transpose();
    const ComplexMatrix r = effective_noise_covariance(rf, s2);

    std::mt19937_64 rng(24);
    std::normal_distribution<double> nd(0.0, std::sqrt(s2 / 2));
    ComplexMatrix acc(4, 4);
    constexpr int draws = 100000;
    ComplexVector n(128);
    for (int t = 0; t < draws; ++t)
    {
        for (auto &e : n)
            e = {nd(rng), nd(rng)};
        const ComplexVector v = wt * std::span<const cx>(n);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                acc(i, j) += v[i] * std::conj(v[j]);
    }
    acc *= cx(1.0 / draws);
    CHECK(frobenius_norm(acc - r) <= 0.05 * frobenius_norm(r));
}
