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
#include <filesystem>
#include <fstream>
#include <numbers>

#include "mmw/beamforming.hpp"
#include "mmw/channel.hpp"

using namespace mmw;

namespace
{

ChannelParams table(const char *file)
{
    std::ifstream in(std::filesystem::path(MMW_SOURCE_DIR) / "data" / file);
    return channel_params_from_json(nlohmann::json::parse(in));
}

ChannelParams no_shadowing(ChannelParams p)
{
    p.los.shadowing_sigma_db = 0.0;
    p.nlos.shadowing_sigma_db = 0.0;
    return p;
}

} // namespace

TEST_CASE("angle helpers")
{
    constexpr double pi = std::numbers::pi;
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(pi) == doctest::Approx(-pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(-pi));
    CHECK(wrap_angle(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));
    CHECK(wrap_angle(-5.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));

    const auto p = table("channel_28ghz.json");
    const auto g = link_geometry({100.0, 0.0}, {0.0, 0.0}, p);
    CHECK(g.horizontal_m == 100.0);
    CHECK(g.distance_m == doctest::Approx(std::hypot(100.0, 8.5)));
    CHECK(g.aod_azimuth == doctest::Approx(-pi));
    CHECK(g.aoa_azimuth == doctest::Approx(0.0));
    CHECK(g.aod_elevation == doctest::Approx(-std::atan(8.5 / 100.0)));
    CHECK(g.aoa_elevation == doctest::Approx(std::atan(8.5 / 100.0)));
}

TEST_CASE("link state at the distance extremes")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(1, 0);
    for (int i = 0; i < 10000; ++i)
        REQUIRE(sample_link_state(0.0, p, rng) == LinkState::LoS);
    // 1 - p_out(1000) = exp(-1000/30 + 5.2) ~ 6e-13
    for (int i = 0; i < 10000; ++i)
        REQUIRE(sample_link_state(1000.0, p, rng) == LinkState::Outage);
    CHECK_THROWS_AS(sample_link_state(-1.0, p, rng), std::invalid_argument);
}

TEST_CASE("link state frequencies match the table")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(2, 0);
    constexpr int n = 100000;
    for (double d : {60.0, 150.0, 175.0, 200.0})
    {
        int los = 0;
        int out = 0;
        int nlos = 0;
        for (int i = 0; i < n; ++i)
        {
            switch (sample_link_state(d, p, rng))
            {
            case LinkState::LoS:
                ++los;
                break;
            case LinkState::Outage:
                ++out;
                break;
            case LinkState::NLoS:
                ++nlos;
                break;
            }
        }
        for (auto [count, prob] : {std::pair{los, p.p_los(d)}, std::pair{out, p.p_outage(d)}, std::pair{nlos, p.p_nlos(d)}})
        {
            const double sigma = std::sqrt(prob * (1.0 - prob) / n);
            CHECK(std::abs(count / double(n) - prob) <= 3.0 * sigma + 1e-12);
        }
    }
}

TEST_CASE("pathloss law")
{
    auto p = no_shadowing(table("channel_28ghz.json"));
    auto rng = make_stream(3, 0);
    CHECK(pathloss_db(1.0, LinkState::LoS, p, rng) == p.los.intercept_db);
    CHECK(pathloss_db(1.0, LinkState::NLoS, p, rng) == p.nlos.intercept_db);
    CHECK(pathloss_db(100.0, LinkState::NLoS, p, rng) - pathloss_db(10.0, LinkState::NLoS, p, rng) ==
          doctest::Approx(p.nlos.slope * 10.0));
    CHECK_THROWS_AS(pathloss_db(10.0, LinkState::Outage, p, rng), std::logic_error);
    CHECK_THROWS_AS(pathloss_db(0.0, LinkState::LoS, p, rng), std::invalid_argument);

    double previous = -1e300;
    for (double d = 0.5; d < 5000.0; d *= 1.05)
    {
        const double pl = pathloss_db(d, LinkState::NLoS, p, rng);
        CHECK(pl >= previous);
        previous = pl;
    }
}

TEST_CASE("shadowing is zero-mean")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(4, 0);
    constexpr int n = 100000;
    const double d = 80.0;
    for (auto state : {LinkState::LoS, LinkState::NLoS})
    {
        const auto &pl = state == LinkState::LoS ? p.los : p.nlos;
        const double expected = pl.intercept_db + pl.slope * 10.0 * std::log10(d);
        double sum = 0.0;
        for (int i = 0; i < n; ++i)
            sum += pathloss_db(d, state, p, rng);
        CHECK(std::abs(sum / n - expected) <= 3.0 * pl.shadowing_sigma_db / std::sqrt(double(n)));
    }
}

TEST_CASE("rank-one channel from a single unit subpath")
{
    Cluster c;
    c.aod_azimuth = 0.3;
    c.aod_elevation = -0.1;
    c.aoa_azimuth = -2.0;
    c.aoa_elevation = 0.2;
    c.subpaths = {Subpath{}};
    const ArrayShape bs{8, 8};
    const ArrayShape ue{4, 4};
    const std::vector<Cluster> clusters{c};
    const CMatrix h = build_channel_matrix(clusters, bs, ue);
    CHECK(h.rows() == 16);
    CHECK(h.cols() == 64);
    CHECK(h.squaredNorm() == doctest::Approx(64.0 * 16.0).epsilon(1e-12));
    Eigen::JacobiSVD<CMatrix> svd(h);
    CHECK(svd.singularValues()(1) < 1e-9 * svd.singularValues()(0));
}

TEST_CASE("sampled clusters are normalized and well formed")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(5, 0);
    const auto g = link_geometry({40.0, 30.0}, {0.0, 0.0}, p);
    for (int i = 0; i < 2000; ++i)
    {
        const auto state = i % 2 ? LinkState::LoS : LinkState::NLoS;
        const auto clusters = sample_clusters(g, state, p, rng);
        REQUIRE(clusters.size() >= 1);
        double total = 0.0;
        for (const auto &c : clusters)
        {
            REQUIRE(c.power_fraction > 0.0);
            REQUIRE(c.power_fraction <= 1.0);
            REQUIRE(c.subpaths.size() >= 1);
            REQUIRE(c.subpaths.size() <= 10);
            REQUIRE(std::isfinite(c.aod_azimuth));
            REQUIRE(std::isfinite(c.aoa_elevation));
            REQUIRE(c.aod_elevation == g.aod_elevation);
            total += c.power_fraction;
        }
        REQUIRE(total == doctest::Approx(1.0).epsilon(1e-9));
        if (state == LinkState::LoS)
        {
            REQUIRE(clusters[0].aod_azimuth == g.aod_azimuth);
            REQUIRE(clusters[0].aoa_azimuth == g.aoa_azimuth);
        }
    }
    CHECK_THROWS_AS(sample_clusters(g, LinkState::Outage, p, rng), std::logic_error);
}

TEST_CASE("channel instance")
{
    const auto p = table("channel_73ghz.json");
    auto rng = make_stream(6, 0);
    const auto g = link_geometry({-50.0, 20.0}, {0.0, 0.0}, p);
    const auto ch = sample_channel_matrix(g, LinkState::NLoS, 123.0, p, {8, 8}, {4, 4}, rng);
    CHECK(ch.state == LinkState::NLoS);
    CHECK(ch.pathloss_db == 123.0);
    CHECK(ch.distance_m == g.distance_m);
    CHECK(ch.h.rows() == 16);
    CHECK(ch.h.cols() == 64);
    CHECK_THROWS_AS(sample_channel_matrix(g, LinkState::Outage, 0.0, p, {8, 8}, {4, 4}, rng), std::logic_error);

    ChannelInstance outage;
    CHECK(outage.in_outage());
    CHECK(std::isinf(outage.pathloss_db));
    CHECK(outage.h.size() == 0);
}

TEST_CASE("small-scale normalization E|H|_F^2 = n_tx n_rx")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(7, 0);
    const ArrayShape bs{4, 4};
    const ArrayShape ue{2, 2};
    const auto g = link_geometry({70.0, -10.0}, {0.0, 0.0}, p);
    constexpr int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const auto clusters = sample_clusters(g, i % 3 ? LinkState::NLoS : LinkState::LoS, p, rng);
        sum += build_channel_matrix(clusters, bs, ue).squaredNorm() / (16.0 * 4.0);
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("equal cluster powers contribute equally to |H|_F^2")
{
    // Two clusters forced to equal expected power, contributions measured separately.
    auto p = table("channel_28ghz.json");
    auto rng = make_stream(8, 0);
    const ArrayShape bs{4, 4};
    const ArrayShape ue{2, 2};
    const auto g = link_geometry({30.0, 30.0}, {0.0, 0.0}, p);
    constexpr int n = 10000;
    double first = 0.0;
    double second = 0.0;
    for (int i = 0; i < n; ++i)
    {
        auto clusters = sample_clusters(g, LinkState::NLoS, p, rng);
        clusters.resize(2, clusters.front());
        for (auto &c : clusters)
        {
            for (auto &s : c.subpaths)
                s.gain *= std::sqrt(0.5 / c.power_fraction);
            c.power_fraction = 0.5;
        }
        first += build_channel_matrix(std::span(clusters).first(1), bs, ue).squaredNorm();
        second += build_channel_matrix(std::span(clusters).last(1), bs, ue).squaredNorm();
    }
    CHECK(first / n / 64.0 == doctest::Approx(0.5).epsilon(0.05));
    CHECK(second / n / 64.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("channels of distinct links are uncorrelated")
{
    const auto p = table("channel_28ghz.json");
    auto rng = make_stream(9, 0);
    const ArrayShape bs{2, 2};
    const ArrayShape ue{2, 2};
    const auto ga = link_geometry({20.0, 0.0}, {0.0, 0.0}, p);
    const auto gb = link_geometry({0.0, 35.0}, {0.0, 0.0}, p);
    constexpr int n = 20000;
    std::complex<double> cross = 0.0;
    double pa = 0.0;
    double pb = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const CMatrix a = build_channel_matrix(sample_clusters(ga, LinkState::NLoS, p, rng), bs, ue);
        const CMatrix b = build_channel_matrix(sample_clusters(gb, LinkState::NLoS, p, rng), bs, ue);
        cross += a(0, 0) * std::conj(b(0, 0));
        pa += std::norm(a(0, 0));
        pb += std::norm(b(0, 0));
    }
    const double rho = std::abs(cross) / std::sqrt(pa * pb);
    CHECK(rho < 4.0 / std::sqrt(double(n)));
}
