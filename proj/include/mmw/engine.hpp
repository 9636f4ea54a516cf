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

#ifndef MMW_ENGINE_HPP
#define MMW_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mmw/deployment.hpp"
#include "mmw/network.hpp"
#include "mmw/params.hpp"

namespace mmw
{

/// Outcome of one drop at the typical receiver.
struct IterationResult
{
    std::uint64_t iteration = 0;
    std::size_t num_bs = 0;
    std::size_t num_ue = 0;     // including the typical receiver
    std::size_t active_bs = 0;  // BSs with a scheduled UE
    LinkBudget budget;

    bool served() const noexcept { return budget.served(); }
    bool operator==(const IterationResult &o) const;
};

/// One full drop, fully determined by (master_seed, index):
/// deployment, link states and pathloss for every BS/UE pair, min-pathloss
/// association, blind scheduling (the typical UE's server always schedules
/// it), then channels and beams toward the typical receiver.
IterationResult run_iteration(const SimulationConfig &config, std::uint64_t index);

/// The node positions run_iteration(config, index) uses.
Deployment drop_deployment(const SimulationConfig &config, std::uint64_t index);

/// Empirical CDF over dB samples; -inf samples are allowed.
class Ecdf
{
  public:
    Ecdf() = default;
    explicit Ecdf(std::vector<double> samples);

    /// (#samples <= x) / n
    double cdf(double x) const;
    /// Nearest rank: the ceil(p/100 * n)-th smallest sample (first for p = 0).
    double percentile(double p) const;

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    std::span<const double> samples() const noexcept { return samples_; }

  private:
    std::vector<double> samples_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_distance(const Ecdf &a, const Ecdf &b);

enum class Regime
{
    NoiseLimited,
    Hybrid,
    InterferenceLimited,
};

std::string_view to_string(Regime r);

struct RegimeClassification
{
    Regime regime = Regime::NoiseLimited;
    double fraction_above = 0.0; // 1 - F(threshold)
};

RegimeClassification classify_regime(const Ecdf &inr, const RegimeThresholds &thresholds = {});

struct StateFractions
{
    double los = 0.0;
    double nlos = 0.0;
    double outage = 0.0;
};

struct IntervalStates
{
    double lower_quantile = 0.0;
    double upper_quantile = 1.0;
    std::size_t drops = 0;
    std::size_t interferers = 0;
    StateFractions fractions; // all zero when the interval holds no interferers
};

/// Served drops sorted by INR (ties by iteration) are split at
/// floor(split_quantile * n); each side reports the pooled fraction of its
/// interferers in every link state.
std::vector<IntervalStates> interferer_state_table(std::span<const IterationResult> results, double split_quantile);

struct Percentiles
{
    double p5 = 0.0;
    double p50 = 0.0;
    double p95 = 0.0;
};

Percentiles percentiles(const Ecdf &e);

struct CampaignOptions
{
    unsigned workers = 0; // 0 = hardware concurrency
    double table_split_quantile = 0.12;
};

struct CampaignResult
{
    SimulationConfig config;
    std::vector<IterationResult> iterations;
    Ecdf inr;
    Ecdf sinr;
    Ecdf snr;
    std::size_t served_drops = 0;
    double coverage_outage_fraction = 0.0;
    std::vector<IntervalStates> interferer_states;
    Percentiles inr_percentiles;
    Percentiles sinr_percentiles;
    RegimeClassification regime;
};

/// Runs iterations [0, config.scenario.iterations) on `workers` threads.
/// Results are stored by index, so the output does not depend on the worker count.
std::vector<IterationResult> run_iterations(const SimulationConfig &config, unsigned workers = 0);

/// Aggregates per-drop results. Throws std::runtime_error when no drop is served.
CampaignResult summarize(const SimulationConfig &config, std::vector<IterationResult> iterations,
                         double table_split_quantile = 0.12);

CampaignResult run_campaign(const SimulationConfig &config, const CampaignOptions &options = {});

struct SweepRow
{
    double frequency_ghz = 0.0;
    double lambda_bs_per_km2 = 0.0;
    Percentiles sinr;
    Percentiles inr;
    double coverage_outage_fraction = 0.0;
    RegimeClassification regime;
};

/// One campaign per (frequency, density), frequency-major.
std::vector<SweepRow> density_sweep(const SimulationConfig &config, std::span<const double> densities,
                                    std::span<const double> frequencies_ghz, const CampaignOptions &options = {});

struct ArrayComparison
{
    CampaignResult baseline;
    CampaignResult enlarged;
    double median_inr_delta_db = 0.0;
    double median_sinr_delta_db = 0.0;
};

/// Paired campaigns (same seeds) that differ only in the array shapes.
ArrayComparison compare_arrays(const SimulationConfig &config, const ArrayShape &bs_array, const ArrayShape &ue_array,
                               const CampaignOptions &options = {});

} // namespace mmw

#endif
