// SPDX-License-Identifier: Apache-2.0
//
// mmw-inr: Monte Carlo interference analysis for mmWave cellular networks
// Copyright (C) 2026 The mmw-inr authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mmw/beamforming.hpp"

using namespace mmw;

namespace
{

constexpr double kPi = std::numbers::pi;

// Normalized power pattern of an n-element half-wavelength ULA, by direct summation.
double ula_pattern(int n, double du)
{
    std::complex<double> s = 0.0;
    for (int k = 0; k < n; ++k)
        s += std::polar(1.0, kPi * k * du);
    return std::norm(s) / (double(n) * n);
}

// Largest singular value by power iteration on H^H H (independent of Eigen's SVD).
double sigma_max(const CMatrix &h)
{
    CVector v = CVector::Ones(h.cols());
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it)
    {
        CVector next = h.adjoint() * (h * v);
        const double norm = next.norm();
        if (norm == 0.0)
            return 0.0;
        next /= norm;
        if (std::abs(norm - lambda) <= 1e-14 * norm)
        {
            lambda = norm;
            break;
        }
        lambda = norm;
        v = next;
    }
    return std::sqrt(lambda);
}

CMatrix random_matrix(int rows, int cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix h(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            h(r, c) = {n(rng), n(rng)};
    return h;
}

CVector random_unit(int size, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    CVector w(size);
    for (int i = 0; i < size; ++i)
        w(i) = {n(rng), n(rng)};
    return w / w.norm();
}

Cluster single_path(double aod_az, double aod_el, double aoa_az, double aoa_el, std::complex<double> gain)
{
    Cluster c;
    c.aod_azimuth = aod_az;
    c.aod_elevation = aod_el;
    c.aoa_azimuth = aoa_az;
    c.aoa_elevation = aoa_el;
    c.power_fraction = std::norm(gain);
    c.subpaths = {Subpath{0.0, 0.0, 0.0, 0.0, gain}};
    return c;
}

} // namespace

TEST_CASE("array response")
{
    const ArrayShape upa{8, 8};
    const CVector broadside = array_response(upa, 0.0, 0.0);
    CHECK(broadside.size() == 64);
    CHECK((broadside - CVector::Ones(64)).norm() < 1e-15);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int i = 0; i < 200; ++i)
    {
        const CVector a = array_response({5, 3, 0.5}, angle(rng), angle(rng) / 2.0);
        for (int k = 0; k < a.size(); ++k)
            REQUIRE(std::abs(a(k)) == doctest::Approx(1.0).epsilon(1e-14));
    }

    // Entry (r, c) = exp(j 2 pi d (r sin el + c cos el sin az)).
    const double az = 0.7;
    const double el = -0.2;
    const CVector a = array_response({3, 4, 0.5}, az, el);
    const std::complex<double> expected = std::polar(1.0, kPi * (2.0 * std::sin(el) + 3.0 * std::cos(el) * std::sin(az)));
    CHECK(std::abs(a(2 * 4 + 3) - expected) < 1e-12);
}

TEST_CASE("azimuth pattern of an 8x8 array")
{
    const ArrayShape upa{8, 8};
    for (double az1 : {-1.2, -0.3, 0.0, 0.4, 1.1})
    {
        const CVector a1 = array_response(upa, az1, 0.0);
        double best = 0.0;
        double best_az = 0.0;
        for (double az2 = -kPi / 2.0; az2 <= kPi / 2.0; az2 += 1e-3)
        {
            const double g = std::abs(a1.dot(array_response(upa, az2, 0.0))) / 64.0;
            REQUIRE(g <= 1.0 + 1e-12);
            REQUIRE(g * g == doctest::Approx(ula_pattern(8, std::sin(az2) - std::sin(az1))).epsilon(1e-9));
            if (g > best)
            {
                best = g;
                best_az = az2;
            }
        }
        CHECK(best == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(best_az == doctest::Approx(az1).epsilon(2e-3));
    }
}

TEST_CASE("front-back mirror lobe")
{
    const ArrayShape upa{8, 8};
    const CVector w = steering_beam(upa, 0.4, 0.0);
    const double front = std::norm(w.dot(array_response(upa, 0.4, 0.0)));
    const double back = std::norm(w.dot(array_response(upa, kPi - 0.4, 0.0)));
    CHECK(back == doctest::Approx(front).epsilon(1e-12));
}

TEST_CASE("steering beams")
{
    for (ArrayShape shape : {ArrayShape{1, 1}, ArrayShape{4, 4}, ArrayShape{8, 8}, ArrayShape{3, 7}})
    {
        const CVector w = steering_beam(shape, 0.9, -0.15);
        CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::norm(w.dot(array_response(shape, 0.9, -0.15))) ==
              doctest::Approx(double(shape.elements())).epsilon(1e-12));
    }
    const CVector w = steering_beam({4, 4}, 0.0, 0.0);
    for (int i = 0; i < 16; ++i)
        CHECK(std::abs(w(i) - std::complex<double>(0.25, 0.0)) < 1e-15);
}

TEST_CASE("far-off steering falls below the first sidelobe")
{
    // First sidelobe peak of the 8-element factor, found by a fine sweep.
    double sidelobe = 0.0;
    for (double du = 0.25; du <= 0.5; du += 1e-6)
        sidelobe = std::max(sidelobe, ula_pattern(8, du));
    CHECK(10.0 * std::log10(sidelobe) == doctest::Approx(-12.8).epsilon(0.01));

    const ArrayShape upa{8, 8};
    const CVector w = steering_beam(upa, 0.0, 0.0);
    for (double u = 3.0 / 8.0; u <= 1.0; u += 1e-3)
    {
        const double g = std::norm(w.dot(array_response(upa, std::asin(u), 0.0))) / 64.0;
        REQUIRE(g <= sidelobe + 1e-12);
        REQUIRE(g > -1e-15);
    }
}

TEST_CASE("beamforming gain examples")
{
    CMatrix one(1, 1);
    one(0, 0) = 1.0;
    CVector w1(1);
    w1(0) = 1.0;
    CHECK(beamforming_gain(one, w1, w1) == 1.0);

    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};
    const CVector a_tx = array_response(bs, 0.5, -0.1);
    const CVector a_rx = array_response(ue, -1.0, 0.1);
    const CMatrix h = a_rx * a_tx.adjoint();
    const BeamPair matched{steering_beam(bs, 0.5, -0.1), steering_beam(ue, -1.0, 0.1)};
    CHECK(beamforming_gain(h, matched) == doctest::Approx(1024.0).epsilon(1e-12));
    CHECK(10.0 * std::log10(beamforming_gain(h, matched)) == doctest::Approx(30.1).epsilon(1e-3));

    // Orthogonal to a_rx: a_rx with its first entry's phase flipped on half the elements.
    CVector w_null = a_rx;
    for (int i = 0; i < 8; ++i)
        w_null(i) = -w_null(i);
    w_null /= w_null.norm();
    CHECK(std::abs(w_null.dot(a_rx)) < 1e-12);
    CHECK(beamforming_gain(h, matched.w_tx, w_null) < 1e-24);

    CHECK_THROWS_AS(beamforming_gain(h, matched.w_rx, matched.w_tx), std::invalid_argument);
}

TEST_CASE("gain bounded by the largest singular value")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial)
    {
        const int rows = 1 + trial % 5;
        const int cols = 1 + (trial / 5) % 7;
        const CMatrix h = random_matrix(rows, cols, rng);
        const double smax = sigma_max(h);
        for (int k = 0; k < 10; ++k)
        {
            const double g = beamforming_gain(h, random_unit(cols, rng), random_unit(rows, rng));
            REQUIRE(g >= 0.0);
            REQUIRE(g <= smax * smax * (1.0 + 1e-12));
        }
        const auto svd = svd_beams(h);
        CHECK(svd.w_tx.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(svd.w_rx.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(beamforming_gain(h, svd) == doctest::Approx(smax * smax).epsilon(1e-9));
    }
}

TEST_CASE("gain ignores a common phase rotation")
{
    std::mt19937_64 rng(8);
    const CMatrix h = random_matrix(16, 64, rng);
    const CVector tx = random_unit(64, rng);
    const CVector rx = random_unit(16, rng);
    const double g = beamforming_gain(h, tx, rx);
    for (double phase : {0.3, 1.7, -2.9})
    {
        const std::complex<double> r = std::polar(1.0, phase);
        CHECK(beamforming_gain(h, CVector(r * tx), rx) == doctest::Approx(g).epsilon(1e-12));
        CHECK(beamforming_gain(h, tx, CVector(r * rx)) == doctest::Approx(g).epsilon(1e-12));
    }
}

TEST_CASE("gain is continuous in the steering angles")
{
    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};
    std::vector<Cluster> clusters{single_path(0.2, -0.05, 1.0, 0.05, {0.8, 0.1}),
                                  single_path(-1.3, -0.05, 2.5, 0.05, {0.2, -0.3})};
    const CMatrix h = build_channel_matrix(clusters, bs, ue);
    const CVector w_rx = steering_beam(ue, 1.0, 0.05);
    const double step = 1e-5;
    for (double az = -kPi; az < kPi; az += 0.01)
    {
        for (double el = -0.5; el <= 0.5; el += 0.1)
        {
            const double g0 = beamforming_gain(h, steering_beam(bs, az, el), w_rx);
            const double g1 = beamforming_gain(h, steering_beam(bs, az + step, el), w_rx);
            const double g2 = beamforming_gain(h, steering_beam(bs, az, el + step), w_rx);
            // |dG/dangle| <= 2 * sigma_max^2 * |d w / d angle| <= 2 * 1024 * pi * 8 per radian, loosely
            REQUIRE(std::abs(g1 - g0) <= 1e-5 * 2.0 * 1024.0 * kPi * 16.0);
            REQUIRE(std::abs(g2 - g0) <= 1e-5 * 2.0 * 1024.0 * kPi * 16.0);
        }
    }
}

TEST_CASE("sidelobes leak power off-axis")
{
    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};
    const std::vector<Cluster> clusters{single_path(0.0, 0.0, 0.0, 0.0, 1.0)};
    const CMatrix h = build_channel_matrix(clusters, bs, ue);
    const CVector w_rx = steering_beam(ue, 0.0, 0.0);
    int nonzero = 0;
    int total = 0;
    for (double az = 0.3; az < 1.5; az += 0.01)
    {
        nonzero += beamforming_gain(h, steering_beam(bs, az, 0.0), w_rx) > 1e-6;
        ++total;
    }
    CHECK(nonzero > total * 9 / 10);
}

TEST_CASE("aligning on the strongest cluster")
{
    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};

    const std::complex<double> g{0.6, -0.3};
    const std::vector<Cluster> one{single_path(0.4, -0.1, -2.2, 0.1, g)};
    const CMatrix h1 = build_channel_matrix(one, bs, ue);
    CHECK(beamforming_gain(h1, align_beams(one, bs, ue)) == doctest::Approx(1024.0 * std::norm(g)).epsilon(1e-12));

    const std::vector<Cluster> two{single_path(0.4, 0.0, 1.0, 0.0, std::sqrt(0.1)),
                                   single_path(-0.9, 0.0, -0.5, 0.0, std::sqrt(0.9))};
    CHECK(strongest_cluster(two) == 1);
    const auto beams = align_beams(two, bs, ue);
    CHECK((beams.w_tx - steering_beam(bs, -0.9, 0.0)).norm() < 1e-15);
    CHECK((beams.w_rx - steering_beam(ue, -0.5, 0.0)).norm() < 1e-15);

    ChannelInstance outage;
    CHECK_THROWS_AS(align_beams(outage, bs, ue), std::logic_error);
}

TEST_CASE("aligned gain beats steering at any other cluster")
{
    // Cluster directions sit on mutual nulls of both arrays (sin az spaced by 1/4
    // at the BS and 1/2 at the UE), so each beam isolates one cluster.
    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};
    const double bs_u[] = {0.0, 0.25, 0.5, -0.25};
    const double ue_u[] = {0.0, 0.5, -0.5, 1.0};
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        std::vector<Cluster> clusters;
        for (int k = 0; k < 4; ++k)
            clusters.push_back(single_path(std::asin(bs_u[k]), 0.0, std::asin(ue_u[k]), 0.0, {n(rng), n(rng)}));
        const CMatrix h = build_channel_matrix(clusters, bs, ue);
        const double aligned = beamforming_gain(h, align_beams(clusters, bs, ue));
        for (const auto &c : clusters)
        {
            const BeamPair other{steering_beam(bs, c.aod_azimuth, c.aod_elevation),
                                 steering_beam(ue, c.aoa_azimuth, c.aoa_elevation)};
            REQUIRE(aligned >= beamforming_gain(h, other) * (1.0 - 1e-12));
        }
    }
}
