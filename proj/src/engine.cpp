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

#include "mmw/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "mmw/beamforming.hpp"
#include "mmw/deployment.hpp"

namespace mmw
{

namespace
{

double link_distance_m(Point bs, Point ue, const ChannelParams &params)
{
    const double dx = ue.x - bs.x;
    const double dy = ue.y - bs.y;
    const double dz = params.bs_height_m - params.ue_height_m;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Difference that is exactly zero for equal values, including infinities.
double delta(double a, double b)
{
    return a == b ? 0.0 : a - b;
}

} // namespace

bool IterationResult::operator==(const IterationResult &o) const
{
    const auto &a = budget;
    const auto &b = o.budget;
    return iteration == o.iteration && num_bs == o.num_bs && num_ue == o.num_ue && active_bs == o.active_bs &&
           a.serving_bs == b.serving_bs && a.serving_state == b.serving_state &&
           a.received_signal_dbm == b.received_signal_dbm && a.interference_dbm == b.interference_dbm &&
           a.noise_dbm == b.noise_dbm && a.inr_db == b.inr_db && a.sinr_db == b.sinr_db && a.snr_db == b.snr_db &&
           a.interferer_states == b.interferer_states;
}

IterationResult run_iteration(const SimulationConfig &config, std::uint64_t index)
{
    const auto &s = config.scenario;
    const auto &params = config.channel();
    auto rng = make_stream(s.master_seed, index);

    const Deployment dep = make_deployment(s, rng);
    const std::size_t n_bs = dep.bs.size();
    const std::size_t n_ue = dep.ue.size();

    IterationResult result;
    result.iteration = index;
    result.num_bs = n_bs;
    result.num_ue = n_ue;
    result.budget.noise_dbm = noise_power_dbm(s);

    // Links toward the typical receiver.
    std::vector<LinkGeometry> geometry(n_bs);
    std::vector<LinkState> state(n_bs);
    std::vector<double> pathloss(n_bs);
    for (std::size_t b = 0; b < n_bs; ++b)
    {
        geometry[b] = link_geometry(dep.bs[b], dep.ue[0], params);
        state[b] = sample_link_state(geometry[b].distance_m, params, rng);
        pathloss[b] = state[b] == LinkState::Outage ? std::numeric_limits<double>::infinity()
                                                    : pathloss_db(geometry[b].distance_m, state[b], params, rng);
    }

    std::vector<std::optional<std::size_t>> association(n_ue);
    std::vector<LinkState> serving_state(n_ue, LinkState::Outage);
    association[0] = associate(pathloss);
    if (association[0])
        serving_state[0] = state[*association[0]];

    // Every other UE only needs its serving BS and that link's state.
    for (std::size_t u = 1; u < n_ue; ++u)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < n_bs; ++b)
        {
            const double d = link_distance_m(dep.bs[b], dep.ue[u], params);
            const LinkState st = sample_link_state(d, params, rng);
            if (st == LinkState::Outage)
                continue;
            const double pl = pathloss_db(d, st, params, rng);
            if (pl < best)
            {
                best = pl;
                association[u] = b;
                serving_state[u] = st;
            }
        }
    }

    if (!association[0])
    {
        result.active_bs = 0;
        for (const auto &sched : schedule_blind(n_bs, association, rng))
            result.active_bs += sched.has_value();
        return result;
    }

    const std::size_t serving = *association[0];
    const auto scheduled = schedule_blind(n_bs, association, rng, PinnedUe{serving, 0});
    result.active_bs = static_cast<std::size_t>(std::count_if(scheduled.begin(), scheduled.end(),
                                                              [](const auto &x) { return x.has_value(); }));

    const auto serving_channel = sample_channel_matrix(geometry[serving], state[serving], pathloss[serving], params,
                                                       s.bs_array, s.ue_array, rng);
    const BeamPair beams = s.alignment == BeamAlignment::Svd
                               ? svd_beams(serving_channel.h)
                               : align_beams(serving_channel, s.bs_array, s.ue_array);
    const ReceivedLink signal{serving_channel.state, s.tx_power_dbm, serving_channel.pathloss_db,
                              beamforming_gain(serving_channel.h, beams)};

    std::vector<ReceivedLink> interferers;
    for (std::size_t b = 0; b < n_bs; ++b)
    {
        if (b == serving || !scheduled[b])
            continue;
        if (state[b] == LinkState::Outage)
        {
            interferers.push_back({LinkState::Outage, s.tx_power_dbm, pathloss[b], 0.0});
            continue;
        }
        const auto to_typical =
            sample_channel_matrix(geometry[b], state[b], pathloss[b], params, s.bs_array, s.ue_array, rng);

        // Interferer b beams at its own scheduled UE.
        const std::size_t own = *scheduled[b];
        const auto own_geometry = link_geometry(dep.bs[b], dep.ue[own], params);
        const auto own_clusters = sample_clusters(own_geometry, serving_state[own], params, rng);
        const CVector w_tx = s.alignment == BeamAlignment::Svd
                                 ? svd_beams(build_channel_matrix(own_clusters, s.bs_array, s.ue_array)).w_tx
                                 : align_beams(own_clusters, s.bs_array, s.ue_array).w_tx;

        interferers.push_back(
            {state[b], s.tx_power_dbm, pathloss[b], beamforming_gain(to_typical.h, w_tx, beams.w_rx)});
    }

    result.budget = link_budget(serving, signal, interferers, noise_power_dbm(s));
    return result;
}

Deployment drop_deployment(const SimulationConfig &config, std::uint64_t index)
{
    auto rng = make_stream(config.scenario.master_seed, index);
    return make_deployment(config.scenario, rng);
}

Ecdf::Ecdf(std::vector<double> samples) : samples_(std::move(samples))
{
    if (std::any_of(samples_.begin(), samples_.end(), [](double x) { return std::isnan(x); }))
        throw std::invalid_argument("Ecdf: NaN sample");
    std::sort(samples_.begin(), samples_.end());
}

double Ecdf::cdf(double x) const
{
    if (samples_.empty())
        throw std::logic_error("Ecdf::cdf: empty sample");
    const auto n = std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
    return static_cast<double>(n) / static_cast<double>(samples_.size());
}

double Ecdf::percentile(double p) const
{
    if (samples_.empty())
        throw std::logic_error("Ecdf::percentile: empty sample");
    if (!(p >= 0.0 && p <= 100.0))
        throw std::invalid_argument("Ecdf::percentile: p must be in [0, 100]");
    const double n = static_cast<double>(samples_.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, samples_.size());
    return samples_[rank - 1];
}

double ks_distance(const Ecdf &a, const Ecdf &b)
{
    if (a.empty() || b.empty())
        throw std::logic_error("ks_distance: empty sample");
    const auto xa = a.samples();
    const auto xb = b.samples();
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < xa.size() || j < xb.size())
    {
        double x;
        if (j == xb.size() || (i < xa.size() && xa[i] <= xb[j]))
            x = xa[i];
        else
            x = xb[j];
        while (i < xa.size() && xa[i] <= x)
            ++i;
        while (j < xb.size() && xb[j] <= x)
            ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(xa.size());
        const double fb = static_cast<double>(j) / static_cast<double>(xb.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

std::string_view to_string(Regime r)
{
    switch (r)
    {
    case Regime::NoiseLimited:
        return "noise_limited";
    case Regime::Hybrid:
        return "hybrid";
    case Regime::InterferenceLimited:
        return "interference_limited";
    }
    return "?";
}

RegimeClassification classify_regime(const Ecdf &inr, const RegimeThresholds &thresholds)
{
    RegimeClassification c;
    c.fraction_above = 1.0 - inr.cdf(thresholds.inr_threshold_db);
    if (c.fraction_above <= thresholds.noise_limited_max)
        c.regime = Regime::NoiseLimited;
    else if (c.fraction_above >= thresholds.interference_limited_min)
        c.regime = Regime::InterferenceLimited;
    else
        c.regime = Regime::Hybrid;
    return c;
}

std::vector<IntervalStates> interferer_state_table(std::span<const IterationResult> results, double split_quantile)
{
    if (!(split_quantile > 0.0 && split_quantile < 1.0))
        throw std::invalid_argument("interferer_state_table: split quantile must be in (0, 1)");

    std::vector<const IterationResult *> served;
    for (const auto &r : results)
        if (r.served())
            served.push_back(&r);
    std::sort(served.begin(), served.end(), [](const IterationResult *a, const IterationResult *b) {
        if (a->budget.inr_db != b->budget.inr_db)
            return a->budget.inr_db < b->budget.inr_db;
        return a->iteration < b->iteration;
    });

    const auto split = static_cast<std::size_t>(std::floor(split_quantile * static_cast<double>(served.size())));
    auto interval = [&](std::size_t lo, std::size_t hi, double q_lo, double q_hi) {
        IntervalStates out;
        out.lower_quantile = q_lo;
        out.upper_quantile = q_hi;
        out.drops = hi - lo;
        StateCounts counts;
        for (std::size_t i = lo; i < hi; ++i)
            counts += served[i]->budget.interferer_states;
        out.interferers = counts.total();
        if (out.interferers > 0)
        {
            const double n = static_cast<double>(out.interferers);
            out.fractions = {counts.los / n, counts.nlos / n, counts.outage / n};
        }
        return out;
    };
    return {interval(0, split, 0.0, split_quantile), interval(split, served.size(), split_quantile, 1.0)};
}

Percentiles percentiles(const Ecdf &e)
{
    return {e.percentile(5.0), e.percentile(50.0), e.percentile(95.0)};
}

std::vector<IterationResult> run_iterations(const SimulationConfig &config, unsigned workers)
{
    config.validate();
    const std::uint64_t n = config.scenario.iterations;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));

    std::vector<IterationResult> results(n);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try
        {
            for (std::uint64_t i = next++; i < n; i = next++)
                results[i] = run_iteration(config, i);
        }
        catch (...)
        {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next = n;
        }
    };

    if (workers <= 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

CampaignResult summarize(const SimulationConfig &config, std::vector<IterationResult> iterations,
                         double table_split_quantile)
{
    CampaignResult c;
    c.config = config;

    std::vector<double> inr;
    std::vector<double> sinr;
    std::vector<double> snr;
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    for (const auto &r : iterations)
    {
        if (r.served())
        {
            ++c.served_drops;
            inr.push_back(r.budget.inr_db);
            sinr.push_back(r.budget.sinr_db);
            snr.push_back(r.budget.snr_db);
        }
        else if (config.scenario.include_outage_drops)
        {
            inr.push_back(neg_inf);
            sinr.push_back(neg_inf);
            snr.push_back(neg_inf);
        }
    }
    if (c.served_drops == 0)
        throw std::runtime_error("no coverage; cannot form ECDF");

    c.coverage_outage_fraction =
        static_cast<double>(iterations.size() - c.served_drops) / static_cast<double>(iterations.size());
    c.inr = Ecdf(std::move(inr));
    c.sinr = Ecdf(std::move(sinr));
    c.snr = Ecdf(std::move(snr));
    c.inr_percentiles = percentiles(c.inr);
    c.sinr_percentiles = percentiles(c.sinr);
    c.regime = classify_regime(c.inr, config.scenario.regime);
    c.interferer_states = interferer_state_table(iterations, table_split_quantile);
    c.iterations = std::move(iterations);
    return c;
}

CampaignResult run_campaign(const SimulationConfig &config, const CampaignOptions &options)
{
    return summarize(config, run_iterations(config, options.workers), options.table_split_quantile);
}

std::vector<SweepRow> density_sweep(const SimulationConfig &config, std::span<const double> densities,
                                    std::span<const double> frequencies_ghz, const CampaignOptions &options)
{
    if (densities.empty())
        throw std::invalid_argument("density_sweep: empty density list");
    if (frequencies_ghz.empty())
        throw std::invalid_argument("density_sweep: empty frequency list");

    std::vector<SweepRow> rows;
    for (double f : frequencies_ghz)
    {
        for (double lambda : densities)
        {
            SimulationConfig point = config;
            point.scenario.carrier_frequency_ghz = f;
            point.scenario.lambda_bs_per_km2 = lambda;
            const auto result = run_campaign(point, options);
            SweepRow row;
            row.frequency_ghz = f;
            row.lambda_bs_per_km2 = lambda;
            row.sinr = result.sinr_percentiles;
            row.inr = result.inr_percentiles;
            row.coverage_outage_fraction = result.coverage_outage_fraction;
            row.regime = result.regime;
            rows.push_back(row);
        }
    }
    return rows;
}

ArrayComparison compare_arrays(const SimulationConfig &config, const ArrayShape &bs_array, const ArrayShape &ue_array,
                               const CampaignOptions &options)
{
    SimulationConfig enlarged = config;
    enlarged.scenario.bs_array = bs_array;
    enlarged.scenario.ue_array = ue_array;

    ArrayComparison cmp{run_campaign(config, options), run_campaign(enlarged, options)};
    cmp.median_inr_delta_db = delta(cmp.enlarged.inr_percentiles.p50, cmp.baseline.inr_percentiles.p50);
    cmp.median_sinr_delta_db = delta(cmp.enlarged.sinr_percentiles.p50, cmp.baseline.sinr_percentiles.p50);
    return cmp;
}

} // namespace mmw
