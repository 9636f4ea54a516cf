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

#ifndef MMW_CHANNEL_HPP
#define MMW_CHANNEL_HPP

#include <complex>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mmw/deployment.hpp"
#include "mmw/params.hpp"
#include "mmw/rng.hpp"

namespace mmw
{

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class LinkState
{
    LoS,
    NLoS,
    Outage,
};

std::string_view to_string(LinkState state);

// Angle conventions used throughout: azimuth in [-pi, pi) measured from the
// x-axis in the horizontal plane, elevation measured up from the horizontal.
// Departure angles are seen from the BS, arrival angles from the UE.
double wrap_angle(double radians);

struct LinkGeometry
{
    double distance_m = 0.0;   // 3-D, includes the BS/UE height difference
    double horizontal_m = 0.0;
    double aod_azimuth = 0.0;
    double aod_elevation = 0.0;
    double aoa_azimuth = 0.0;
    double aoa_elevation = 0.0;
};

LinkGeometry link_geometry(Point bs, Point ue, const ChannelParams &params);

struct Subpath
{
    double aod_azimuth_offset = 0.0;
    double aod_elevation_offset = 0.0;
    double aoa_azimuth_offset = 0.0;
    double aoa_elevation_offset = 0.0;
    std::complex<double> gain{1.0, 0.0};
};

struct Cluster
{
    double power_fraction = 1.0;
    double aod_azimuth = 0.0;
    double aod_elevation = 0.0;
    double aoa_azimuth = 0.0;
    double aoa_elevation = 0.0;
    std::vector<Subpath> subpaths;
};

/// Realized power of a cluster, sum of |gain|^2 over its subpaths.
double realized_power(const Cluster &cluster);

struct ChannelInstance
{
    LinkState state = LinkState::Outage;
    double distance_m = 0.0;
    double pathloss_db = std::numeric_limits<double>::infinity();
    std::vector<Cluster> clusters;
    CMatrix h; // n_ue x n_bs; empty in outage

    bool in_outage() const noexcept { return state == LinkState::Outage; }
};

LinkState sample_link_state(double distance_m, const ChannelParams &params, RandomEngine &rng);

/// intercept + slope * 10 log10(d) + N(0, sigma^2). Throws std::logic_error for Outage.
double pathloss_db(double distance_m, LinkState state, const ChannelParams &params, RandomEngine &rng);

/// Cluster/subpath structure of one non-outage link. Cluster powers are
/// normalized to one and subpath gains are CN(0, power / subpaths), so the
/// matrix built from them has E[|H|_F^2] = n_bs * n_ue. The number of random
/// draws does not depend on the array shapes.
std::vector<Cluster> sample_clusters(const LinkGeometry &geometry, LinkState state, const ChannelParams &params,
                                     RandomEngine &rng);

/// H = sum over subpaths of gain * a_ue(aoa) * a_bs(aod)^H.
CMatrix build_channel_matrix(std::span<const Cluster> clusters, const ArrayShape &bs_array,
                             const ArrayShape &ue_array);

ChannelInstance sample_channel_matrix(const LinkGeometry &geometry, LinkState state, double pathloss_db,
                                      const ChannelParams &params, const ArrayShape &bs_array,
                                      const ArrayShape &ue_array, RandomEngine &rng);

} // namespace mmw

#endif
