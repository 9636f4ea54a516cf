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

#ifndef MMW_IO_HPP
#define MMW_IO_HPP

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "mmw/engine.hpp"

namespace mmw
{

// Output files. Every CSV starts with '#'-prefixed lines carrying the tool
// name, the master seed and the fully resolved configuration as one-line JSON.
// Column order and names below are a stable interface.

inline constexpr const char *kIterationColumns =
    "iteration,served,serving_state,signal_dbm,interference_dbm,noise_dbm,inr_db,sinr_db,snr_db,"
    "num_bs,active_bs,interferers_los,interferers_nlos,interferers_outage";
inline constexpr const char *kEcdfColumns = "metric,value_db,cdf";
inline constexpr const char *kSweepColumns =
    "frequency_ghz,lambda_bs_per_km2,sinr_p5_db,sinr_p50_db,sinr_p95_db,inr_p5_db,inr_p50_db,inr_p95_db,"
    "fraction_inr_above_threshold,regime,coverage_outage_fraction";
inline constexpr const char *kStateTableColumns =
    "lower_quantile,upper_quantile,drops,interferers,los_fraction,nlos_fraction,outage_fraction";

/// CSV cell text: 10 significant digits; non-finite values as inf, -inf, nan.
std::string csv_number(double x);

/// Non-finite values become the strings "inf", "-inf" or "nan".
nlohmann::json json_number(double x);

void write_provenance(std::ostream &out, const std::string &tool, const SimulationConfig &config);

void write_iterations_csv(std::ostream &out, const CampaignResult &result);
/// One row per distinct sample value, metrics "inr", "sinr", "snr".
void write_ecdf_csv(std::ostream &out, const CampaignResult &result);
void write_state_table_csv(std::ostream &out, const SimulationConfig &config, std::span<const IntervalStates> table);
void write_sweep_csv(std::ostream &out, const SimulationConfig &config, std::span<const SweepRow> rows);

nlohmann::json summary_json(const CampaignResult &result);

enum class PlotKind
{
    Ecdf,
    Sweep,
    CompareArrays,
};

/// Python/matplotlib script that reads the CSV written next to it.
std::string plot_script(PlotKind kind, const SimulationConfig &config);

/// Writes `contents` to `path`; throws std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path &path, const std::string &contents);

} // namespace mmw

#endif
