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

#ifndef MMW_BEAMFORMING_HPP
#define MMW_BEAMFORMING_HPP

#include <cstddef>
#include <span>

#include "mmw/channel.hpp"

namespace mmw
{

/// Unit-norm transmit (BS) and receive (UE) beamforming vectors.
struct BeamPair
{
    CVector w_tx;
    CVector w_rx;
};

/// UPA response with isotropic elements. Element (r, c), stored at r * cols + c, is
///   exp(j 2 pi d (r sin(el) + c cos(el) sin(az)))
/// with d the spacing in wavelengths. Rows run along the vertical axis and
/// columns along y, so the array faces the x-axis and its pattern is mirror
/// symmetric about the array plane (az and pi - az respond identically).
CVector array_response(const ArrayShape &shape, double azimuth, double elevation);

/// a(az, el) / sqrt(n): the unit-norm w maximizing |w^H a(az, el)|.
CVector steering_beam(const ArrayShape &shape, double azimuth, double elevation);

/// |w_rx^H H w_tx|^2. Throws std::invalid_argument on a dimension mismatch.
double beamforming_gain(const CMatrix &h, const BeamPair &pair);
double beamforming_gain(const CMatrix &h, const CVector &w_tx, const CVector &w_rx);

/// Index of the cluster with the largest realized power. Ties keep the lowest index.
std::size_t strongest_cluster(std::span<const Cluster> clusters);

/// Steers both ends at the centre angles of the strongest cluster.
BeamPair align_beams(std::span<const Cluster> clusters, const ArrayShape &bs_array, const ArrayShape &ue_array);
/// Throws std::logic_error for an outage channel.
BeamPair align_beams(const ChannelInstance &channel, const ArrayShape &bs_array, const ArrayShape &ue_array);

/// Dominant right/left singular vectors of H; attains sigma_max(H)^2.
BeamPair svd_beams(const CMatrix &h);

} // namespace mmw

#endif
