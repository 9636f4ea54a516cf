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

#ifndef MMW_PARAMS_HPP
#define MMW_PARAMS_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mmw
{

/// Raised for any configuration problem. `field()` names the offending JSON key.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field))
    {
    }
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Uniform planar array. Elements are indexed row-major, rows along the vertical axis.
struct ArrayShape
{
    int rows = 1;
    int cols = 1;
    double element_spacing_wavelengths = 0.5;

    int elements() const noexcept { return rows * cols; }
    bool operator==(const ArrayShape &) const = default;
};

/// Parses "RxC" (e.g. "8x8"). Throws ConfigError on malformed input.
ArrayShape parse_array_shape(const std::string &text);
std::string to_string(const ArrayShape &shape);

struct PathlossParams
{
    double intercept_db = 0.0;
    double slope = 2.0; // PL = intercept + slope * 10 log10(d)
    double shadowing_sigma_db = 0.0;
    bool operator==(const PathlossParams &) const = default;
};

// p_out(d) = max(0, 1 - exp(-d / outage_length_m + outage_offset))
// p_los(d) = (1 - p_out(d)) * exp(-d / los_length_m)
struct LinkStateParams
{
    double outage_length_m = 30.0;
    double outage_offset = 5.2;
    double los_length_m = 67.1;
    bool operator==(const LinkStateParams &) const = default;
};

struct ClusterParams
{
    double count_mean = 1.8;        // K = max(Poisson(count_mean), min_count)
    int min_count = 1;
    double power_decay_r = 2.8;     // gamma'_k = U^(r - 1) * 10^(-0.1 Z), Z ~ N(0, sigma^2)
    double power_shadow_sigma_db = 4.0;
    int subpaths_min = 1;           // subpaths per cluster ~ U{min..max}
    int subpaths_max = 10;
    bool operator==(const ClusterParams &) const = default;
};

/// Mean of the exponentially distributed per-cluster rms angular spread, degrees.
struct AngularSpreads
{
    double bs_azimuth_deg = 0.0;
    double bs_elevation_deg = 0.0;
    double ue_azimuth_deg = 0.0;
    double ue_elevation_deg = 0.0;
    bool operator==(const AngularSpreads &) const = default;
};

/// Statistical channel model table for one carrier frequency.
struct ChannelParams
{
    double frequency_ghz = 28.0;
    std::string source;
    PathlossParams los;
    PathlossParams nlos;
    LinkStateParams link_state;
    ClusterParams clusters;
    AngularSpreads spreads;
    double bs_height_m = 10.0;
    double ue_height_m = 1.5;

    double p_outage(double distance_m) const;
    double p_los(double distance_m) const;
    double p_nlos(double distance_m) const;

    /// Throws ConfigError when a table invariant is broken.
    void validate() const;

    bool operator==(const ChannelParams &) const = default;
};

enum class BeamAlignment
{
    StrongestCluster,
    Svd,
};

struct RegimeThresholds
{
    double inr_threshold_db = 0.0;
    double noise_limited_max = 0.2;        // fraction above threshold
    double interference_limited_min = 0.8;
    bool operator==(const RegimeThresholds &) const = default;
};

struct ScenarioConfig
{
    double carrier_frequency_ghz = 28.0;
    double bandwidth_hz = 500e6;
    double tx_power_dbm = 30.0;
    double noise_figure_db = 7.0;
    double noise_psd_dbm_per_hz = -174.0;
    double lambda_bs_per_km2 = 30.0;
    double lambda_ue_per_km2 = 300.0;
    ArrayShape bs_array{8, 8, 0.5};
    ArrayShape ue_array{4, 4, 0.5};
    double region_radius_m = 400.0;
    std::uint64_t iterations = 50000;
    std::uint64_t master_seed = 1;
    BeamAlignment alignment = BeamAlignment::StrongestCluster;
    RegimeThresholds regime;
    bool include_outage_drops = false;

    bool operator==(const ScenarioConfig &) const = default;
};

/// Scenario plus every loaded channel table. Immutable once validated.
struct SimulationConfig
{
    ScenarioConfig scenario;
    std::vector<ChannelParams> channel_tables;

    /// Table whose frequency matches `frequency_ghz` (within 1e-6 GHz).
    const ChannelParams &channel_for(double frequency_ghz) const;
    const ChannelParams &channel() const { return channel_for(scenario.carrier_frequency_ghz); }

    void validate() const;
    bool operator==(const SimulationConfig &) const = default;
};

double noise_power_dbm(double bandwidth_hz, double noise_figure_db, double noise_psd_dbm_per_hz = -174.0);
inline double noise_power_dbm(const ScenarioConfig &s)
{
    return noise_power_dbm(s.bandwidth_hz, s.noise_figure_db, s.noise_psd_dbm_per_hz);
}

// JSON (de)serialization. Channel tables inside a configuration may be given
// inline or as a path relative to `base_dir`.
ChannelParams channel_params_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ChannelParams &p);
ScenarioConfig scenario_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ScenarioConfig &s);
SimulationConfig config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
nlohmann::json to_json(const SimulationConfig &c);

/// Reads and validates a configuration file.
SimulationConfig load_config(const std::filesystem::path &path);

} // namespace mmw

#endif
