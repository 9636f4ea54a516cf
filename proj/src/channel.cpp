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

#include "mmw/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mmw/beamforming.hpp"

namespace mmw
{

namespace
{

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

// Exponential with the given mean; a zero mean is a point mass at zero.
double exponential(double mean, RandomEngine &rng)
{
    if (mean <= 0.0)
        return 0.0;
    return std::exponential_distribution<double>(1.0 / mean)(rng);
}

double gaussian(double sigma, RandomEngine &rng)
{
    const double z = std::normal_distribution<double>(0.0, 1.0)(rng);
    return sigma * z;
}

} // namespace

std::string_view to_string(LinkState state)
{
    switch (state)
    {
    case LinkState::LoS:
        return "los";
    case LinkState::NLoS:
        return "nlos";
    case LinkState::Outage:
        return "outage";
    }
    return "?";
}

double wrap_angle(double radians)
{
    double w = std::fmod(radians + kPi, 2.0 * kPi);
    if (w < 0.0)
        w += 2.0 * kPi;
    w -= kPi;
    return w >= kPi ? -kPi : w;
}

LinkGeometry link_geometry(Point bs, Point ue, const ChannelParams &params)
{
    LinkGeometry g;
    const double dx = ue.x - bs.x;
    const double dy = ue.y - bs.y;
    const double dz = params.bs_height_m - params.ue_height_m;
    g.horizontal_m = std::hypot(dx, dy);
    g.distance_m = std::hypot(g.horizontal_m, dz);
    g.aod_azimuth = wrap_angle(std::atan2(dy, dx));
    g.aoa_azimuth = wrap_angle(std::atan2(-dy, -dx));
    g.aod_elevation = -std::atan2(dz, g.horizontal_m);
    g.aoa_elevation = std::atan2(dz, g.horizontal_m);
    return g;
}

double realized_power(const Cluster &cluster)
{
    double p = 0.0;
    for (const auto &s : cluster.subpaths)
        p += std::norm(s.gain);
    return p;
}

LinkState sample_link_state(double distance_m, const ChannelParams &params, RandomEngine &rng)
{
    if (!(distance_m >= 0.0))
        throw std::invalid_argument("sample_link_state: distance must be >= 0");
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double p_out = params.p_outage(distance_m);
    if (u >= 1.0 - p_out)
        return LinkState::Outage;
    const double p_los = (1.0 - p_out) * std::exp(-distance_m / params.link_state.los_length_m);
    return u < p_los ? LinkState::LoS : LinkState::NLoS;
}

double pathloss_db(double distance_m, LinkState state, const ChannelParams &params, RandomEngine &rng)
{
    if (state == LinkState::Outage)
        throw std::logic_error("pathloss_db: outage links have no finite pathloss");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("pathloss_db: distance must be > 0");
    const auto &pl = state == LinkState::LoS ? params.los : params.nlos;
    const double mean = pl.intercept_db + pl.slope * 10.0 * std::log10(distance_m);
    return pl.shadowing_sigma_db > 0.0 ? mean + gaussian(pl.shadowing_sigma_db, rng) : mean;
}

std::vector<Cluster> sample_clusters(const LinkGeometry &geometry, LinkState state, const ChannelParams &params,
                                     RandomEngine &rng)
{
    if (state == LinkState::Outage)
        throw std::logic_error("sample_clusters: outage links carry no clusters");

    const auto &cp = params.clusters;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    int count = 0;
    if (cp.count_mean > 0.0)
        count = std::poisson_distribution<int>(cp.count_mean)(rng);
    count = std::max(count, cp.min_count);

    std::vector<Cluster> clusters(static_cast<std::size_t>(count));
    double total = 0.0;
    for (auto &c : clusters)
    {
        const double u = 1.0 - unit(rng); // (0, 1]
        const double z = gaussian(cp.power_shadow_sigma_db, rng);
        c.power_fraction = std::pow(u, cp.power_decay_r - 1.0) * std::pow(10.0, -0.1 * z);
        total += c.power_fraction;
    }

    const auto &sp = params.spreads;
    for (std::size_t k = 0; k < clusters.size(); ++k)
    {
        auto &c = clusters[k];
        c.power_fraction /= total;

        // A LoS link keeps its first cluster on the geometric path; all other
        // cluster centres are uniform in azimuth around the link elevation.
        const double aod_az = -kPi + 2.0 * kPi * unit(rng);
        const double aoa_az = -kPi + 2.0 * kPi * unit(rng);
        const bool direct = state == LinkState::LoS && k == 0;
        c.aod_azimuth = direct ? geometry.aod_azimuth : wrap_angle(aod_az);
        c.aoa_azimuth = direct ? geometry.aoa_azimuth : wrap_angle(aoa_az);
        c.aod_elevation = geometry.aod_elevation;
        c.aoa_elevation = geometry.aoa_elevation;

        const double s_bs_az = exponential(deg2rad(sp.bs_azimuth_deg), rng);
        const double s_bs_el = exponential(deg2rad(sp.bs_elevation_deg), rng);
        const double s_ue_az = exponential(deg2rad(sp.ue_azimuth_deg), rng);
        const double s_ue_el = exponential(deg2rad(sp.ue_elevation_deg), rng);

        const int n_sub = std::uniform_int_distribution<int>(cp.subpaths_min, cp.subpaths_max)(rng);
        const double sub_sigma = std::sqrt(c.power_fraction / n_sub / 2.0);
        c.subpaths.resize(static_cast<std::size_t>(n_sub));
        for (auto &s : c.subpaths)
        {
            s.aod_azimuth_offset = gaussian(s_bs_az, rng);
            s.aod_elevation_offset = gaussian(s_bs_el, rng);
            s.aoa_azimuth_offset = gaussian(s_ue_az, rng);
            s.aoa_elevation_offset = gaussian(s_ue_el, rng);
            const double re = gaussian(sub_sigma, rng);
            const double im = gaussian(sub_sigma, rng);
            s.gain = {re, im};
        }
    }
    return clusters;
}

CMatrix build_channel_matrix(std::span<const Cluster> clusters, const ArrayShape &bs_array,
                             const ArrayShape &ue_array)
{
    Eigen::Index paths = 0;
    for (const auto &c : clusters)
        paths += static_cast<Eigen::Index>(c.subpaths.size());

    // H = A_ue diag(g) A_bs^H, one column per subpath.
    CMatrix a_ue(ue_array.elements(), paths);
    CMatrix a_bs(bs_array.elements(), paths);
    Eigen::Index col = 0;
    for (const auto &c : clusters)
    {
        for (const auto &s : c.subpaths)
        {
            a_ue.col(col) = s.gain * array_response(ue_array, c.aoa_azimuth + s.aoa_azimuth_offset,
                                                    c.aoa_elevation + s.aoa_elevation_offset);
            a_bs.col(col) = array_response(bs_array, c.aod_azimuth + s.aod_azimuth_offset,
                                           c.aod_elevation + s.aod_elevation_offset);
            ++col;
        }
    }
    return a_ue * a_bs.adjoint();
}

ChannelInstance sample_channel_matrix(const LinkGeometry &geometry, LinkState state, double pathloss,
                                      const ChannelParams &params, const ArrayShape &bs_array,
                                      const ArrayShape &ue_array, RandomEngine &rng)
{
    if (state == LinkState::Outage)
        throw std::logic_error("sample_channel_matrix: no channel matrix for an outage link");
    ChannelInstance ch;
    ch.state = state;
    ch.distance_m = geometry.distance_m;
    ch.pathloss_db = pathloss;
    ch.clusters = sample_clusters(geometry, state, params, rng);
    ch.h = build_channel_matrix(ch.clusters, bs_array, ue_array);
    return ch;
}

} // namespace mmw
