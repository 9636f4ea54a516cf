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

#ifndef MMW_DEPLOYMENT_HPP
#define MMW_DEPLOYMENT_HPP

#include <ostream>
#include <vector>

#include "mmw/params.hpp"
#include "mmw/rng.hpp"

namespace mmw
{

struct Point
{
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point &) const = default;
};

/// One Monte Carlo drop. ue[0] is the typical receiver at the origin.
struct Deployment
{
    std::vector<Point> bs;
    std::vector<Point> ue;
    bool operator==(const Deployment &) const = default;
};

/// Homogeneous PPP on a disc of radius `radius_m` centred on the origin:
/// N ~ Poisson(density * pi R^2 / 1e6), then i.i.d. uniform placement
/// (r = R sqrt(u), angle uniform). Zero density yields no points.
std::vector<Point> sample_ppp(double density_per_km2, double radius_m, RandomEngine &rng);

/// BSs first, then UEs, from the same stream.
Deployment make_deployment(const ScenarioConfig &config, RandomEngine &rng);

/// Radius of the disc whose area equals the mean area per point.
double mean_cell_radius_m(double density_per_km2);

/// CSV with header "x_m,y_m,kind"; kind is "bs", "ue" or "typical_ue".
void write_deployment_csv(std::ostream &out, const Deployment &deployment);

} // namespace mmw

#endif
