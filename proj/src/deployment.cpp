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

#include "mmw/deployment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmw
{

std::vector<Point> sample_ppp(double density_per_km2, double radius_m, RandomEngine &rng)
{
    if (!(density_per_km2 >= 0.0) || !(radius_m > 0.0))
        throw std::invalid_argument("sample_ppp: density must be >= 0 and radius > 0");
    std::vector<Point> points;
    if (density_per_km2 == 0.0)
        return points;

    const double mean = density_per_km2 * std::numbers::pi * radius_m * radius_m / 1e6;
    const auto count = std::poisson_distribution<long long>(mean)(rng);
    points.reserve(static_cast<std::size_t>(count));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long long i = 0; i < count; ++i)
    {
        const double r = radius_m * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        points.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return points;
}

Deployment make_deployment(const ScenarioConfig &config, RandomEngine &rng)
{
    Deployment d;
    d.bs = sample_ppp(config.lambda_bs_per_km2, config.region_radius_m, rng);
    auto others = sample_ppp(config.lambda_ue_per_km2, config.region_radius_m, rng);
    d.ue.reserve(others.size() + 1);
    d.ue.push_back({0.0, 0.0});
    d.ue.insert(d.ue.end(), others.begin(), others.end());
    return d;
}

double mean_cell_radius_m(double density_per_km2)
{
    return 1e3 * std::sqrt(1.0 / (std::numbers::pi * density_per_km2));
}

void write_deployment_csv(std::ostream &out, const Deployment &deployment)
{
    out << "x_m,y_m,kind\n";
    for (const auto &p : deployment.bs)
        out << p.x << ',' << p.y << ",bs\n";
    for (std::size_t i = 0; i < deployment.ue.size(); ++i)
        out << deployment.ue[i].x << ',' << deployment.ue[i].y << (i == 0 ? ",typical_ue\n" : ",ue\n");
}

} // namespace mmw
