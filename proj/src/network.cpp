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

#include "mmw/network.hpp"

#include <cmath>
#include <stdexcept>

namespace mmw
{

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x)
{
    return x > 0.0 ? 10.0 * std::log10(x) : -std::numeric_limits<double>::infinity();
}

void StateCounts::add(LinkState s)
{
    switch (s)
    {
    case LinkState::LoS:
        ++los;
        break;
    case LinkState::NLoS:
        ++nlos;
        break;
    case LinkState::Outage:
        ++outage;
        break;
    }
}

StateCounts &StateCounts::operator+=(const StateCounts &o)
{
    los += o.los;
    nlos += o.nlos;
    outage += o.outage;
    return *this;
}

double ReceivedLink::power_mw() const
{
    if (state == LinkState::Outage || !std::isfinite(pathloss_db))
        return 0.0;
    return db_to_linear(tx_power_dbm - pathloss_db) * gain;
}

std::optional<std::size_t> associate(std::span<const double> pathloss_db)
{
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < pathloss_db.size(); ++i)
    {
        if (!std::isfinite(pathloss_db[i]))
            continue;
        if (!best || pathloss_db[i] < pathloss_db[*best])
            best = i;
    }
    return best;
}

std::vector<std::optional<std::size_t>> schedule_blind(std::size_t num_bs,
                                                       std::span<const std::optional<std::size_t>> ue_association,
                                                       RandomEngine &rng, std::optional<PinnedUe> pinned)
{
    std::vector<std::vector<std::size_t>> attached(num_bs);
    for (std::size_t ue = 0; ue < ue_association.size(); ++ue)
    {
        if (!ue_association[ue])
            continue;
        if (*ue_association[ue] >= num_bs)
            throw std::out_of_range("schedule_blind: association refers to an unknown BS");
        attached[*ue_association[ue]].push_back(ue);
    }

    std::vector<std::optional<std::size_t>> scheduled(num_bs);
    for (std::size_t bs = 0; bs < num_bs; ++bs)
    {
        if (pinned && pinned->bs == bs)
        {
            scheduled[bs] = pinned->ue;
            continue;
        }
        const auto &candidates = attached[bs];
        if (candidates.empty())
            continue;
        if (candidates.size() == 1)
        {
            scheduled[bs] = candidates.front();
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        scheduled[bs] = candidates[pick(rng)];
    }
    return scheduled;
}

namespace
{

double interference_mw(std::span<const ReceivedLink> interferers)
{
    double sum = 0.0;
    for (const auto &l : interferers)
        sum += l.power_mw();
    return sum;
}

} // namespace

double compute_sinr_db(const ReceivedLink &serving, std::span<const ReceivedLink> interferers, double noise_dbm)
{
    if (serving.state == LinkState::Outage)
        throw std::logic_error("compute_sinr_db: serving link is in outage");
    return linear_to_db(serving.power_mw() / (interference_mw(interferers) + db_to_linear(noise_dbm)));
}

double compute_inr_db(std::span<const ReceivedLink> interferers, double noise_dbm)
{
    return linear_to_db(interference_mw(interferers) / db_to_linear(noise_dbm));
}

LinkBudget link_budget(std::size_t serving_bs, const ReceivedLink &serving, std::span<const ReceivedLink> interferers,
                       double noise_dbm)
{
    LinkBudget b;
    b.serving_bs = serving_bs;
    b.serving_state = serving.state;
    b.noise_dbm = noise_dbm;
    b.received_signal_dbm = linear_to_db(serving.power_mw());
    b.interference_dbm = linear_to_db(interference_mw(interferers));
    b.inr_db = compute_inr_db(interferers, noise_dbm);
    b.sinr_db = compute_sinr_db(serving, interferers, noise_dbm);
    b.snr_db = b.received_signal_dbm - noise_dbm;
    for (const auto &l : interferers)
        b.interferer_states.add(l.state);
    return b;
}

} // namespace mmw
