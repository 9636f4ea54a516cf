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

#ifndef MMW_NETWORK_HPP
#define MMW_NETWORK_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mmw/channel.hpp"
#include "mmw/rng.hpp"

namespace mmw
{

double db_to_linear(double db);
/// 10 log10(x); -inf for x == 0.
double linear_to_db(double x);

struct StateCounts
{
    std::size_t los = 0;
    std::size_t nlos = 0;
    std::size_t outage = 0;

    void add(LinkState s);
    std::size_t total() const noexcept { return los + nlos + outage; }
    StateCounts &operator+=(const StateCounts &o);
    bool operator==(const StateCounts &) const = default;
};

/// Power budget of one transmitter as seen at the receiver.
struct ReceivedLink
{
    LinkState state = LinkState::Outage;
    double tx_power_dbm = 0.0;
    double pathloss_db = std::numeric_limits<double>::infinity();
    double gain = 0.0; // beamforming gain, linear

    /// P_tx / PL * G in mW; exactly zero in outage.
    double power_mw() const;
};

struct LinkBudget
{
    std::optional<std::size_t> serving_bs;
    LinkState serving_state = LinkState::Outage;
    double received_signal_dbm = -std::numeric_limits<double>::infinity();
    double interference_dbm = -std::numeric_limits<double>::infinity();
    double noise_dbm = 0.0;
    double inr_db = -std::numeric_limits<double>::infinity();
    double sinr_db = -std::numeric_limits<double>::infinity();
    double snr_db = -std::numeric_limits<double>::infinity(); // interference-less baseline
    StateCounts interferer_states;

    bool served() const noexcept { return serving_bs.has_value(); }
};

/// Argmin of pathloss, +inf marks an outage link. Ties go to the lowest index;
/// none when every link is in outage.
std::optional<std::size_t> associate(std::span<const double> pathloss_db);

/// Blind full-buffer scheduling. Each BS with at least one associated UE picks
/// one uniformly at random; BSs without UEs stay silent (none). A BS listed in
/// `pinned` always schedules the paired UE and draws nothing.
struct PinnedUe
{
    std::size_t bs;
    std::size_t ue;
};
std::vector<std::optional<std::size_t>> schedule_blind(std::size_t num_bs,
                                                       std::span<const std::optional<std::size_t>> ue_association,
                                                       RandomEngine &rng, std::optional<PinnedUe> pinned = {});

double compute_sinr_db(const ReceivedLink &serving, std::span<const ReceivedLink> interferers, double noise_dbm);
/// -inf when no interferer delivers power.
double compute_inr_db(std::span<const ReceivedLink> interferers, double noise_dbm);

/// Fills every LinkBudget field for a served receiver.
LinkBudget link_budget(std::size_t serving_bs, const ReceivedLink &serving, std::span<const ReceivedLink> interferers,
                       double noise_dbm);

} // namespace mmw

#endif
