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

#include "mmw/beamforming.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace mmw
{

CVector array_response(const ArrayShape &shape, double azimuth, double elevation)
{
    const double k = 2.0 * std::numbers::pi * shape.element_spacing_wavelengths;
    const double vertical = k * std::sin(elevation);
    const double horizontal = k * std::cos(elevation) * std::sin(azimuth);
    // Separable: a(r, c) = v_r * h_c.
    CVector v(shape.rows);
    CVector h(shape.cols);
    for (int r = 0; r < shape.rows; ++r)
        v(r) = std::polar(1.0, r * vertical);
    for (int c = 0; c < shape.cols; ++c)
        h(c) = std::polar(1.0, c * horizontal);
    CVector a(shape.elements());
    for (int r = 0; r < shape.rows; ++r)
        a.segment(r * shape.cols, shape.cols) = v(r) * h;
    return a;
}

CVector steering_beam(const ArrayShape &shape, double azimuth, double elevation)
{
    return array_response(shape, azimuth, elevation) / std::sqrt(static_cast<double>(shape.elements()));
}

double beamforming_gain(const CMatrix &h, const CVector &w_tx, const CVector &w_rx)
{
    if (h.cols() != w_tx.size() || h.rows() != w_rx.size())
    {
        std::ostringstream os;
        os << "beamforming_gain: H is " << h.rows() << "x" << h.cols() << " but w_tx has " << w_tx.size()
           << " and w_rx has " << w_rx.size() << " entries";
        throw std::invalid_argument(os.str());
    }
    return std::norm(w_rx.dot(h * w_tx)); // dot() conjugates its left operand
}

double beamforming_gain(const CMatrix &h, const BeamPair &pair)
{
    return beamforming_gain(h, pair.w_tx, pair.w_rx);
}

std::size_t strongest_cluster(std::span<const Cluster> clusters)
{
    if (clusters.empty())
        throw std::invalid_argument("strongest_cluster: no clusters");
    std::size_t best = 0;
    double best_power = realized_power(clusters[0]);
    for (std::size_t k = 1; k < clusters.size(); ++k)
    {
        const double p = realized_power(clusters[k]);
        if (p > best_power)
        {
            best = k;
            best_power = p;
        }
    }
    return best;
}

BeamPair align_beams(std::span<const Cluster> clusters, const ArrayShape &bs_array, const ArrayShape &ue_array)
{
    const auto &c = clusters[strongest_cluster(clusters)];
    return {steering_beam(bs_array, c.aod_azimuth, c.aod_elevation),
            steering_beam(ue_array, c.aoa_azimuth, c.aoa_elevation)};
}

BeamPair align_beams(const ChannelInstance &channel, const ArrayShape &bs_array, const ArrayShape &ue_array)
{
    if (channel.in_outage())
        throw std::logic_error("align_beams: cannot align on an outage link");
    return align_beams(channel.clusters, bs_array, ue_array);
}

BeamPair svd_beams(const CMatrix &h)
{
    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixV().col(0), svd.matrixU().col(0)};
}

} // namespace mmw
