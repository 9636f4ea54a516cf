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

#include "mmw/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

namespace mmw
{

using nlohmann::json;

namespace
{

std::string join(const std::string &prefix, const std::string &key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

const json &require(const json &j, const std::string &key, const std::string &prefix)
{
    if (!j.is_object())
        throw ConfigError(prefix, "expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(join(prefix, key), "missing required field");
    return *it;
}

template <typename T>
T as(const json &value, const std::string &field)
{
    try
    {
        if constexpr (std::is_floating_point_v<T>)
        {
            if (!value.is_number())
                throw ConfigError(field, "expected a number");
        }
        else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>)
        {
            if (!value.is_number_integer())
                throw ConfigError(field, "expected an integer");
            if constexpr (std::is_unsigned_v<T>)
                if (value.is_number_integer() && !value.is_number_unsigned() && value.get<long long>() < 0)
                    throw ConfigError(field, "expected a non-negative integer");
        }
        else if constexpr (std::is_same_v<T, bool>)
        {
            if (!value.is_boolean())
                throw ConfigError(field, "expected true or false");
        }
        return value.get<T>();
    }
    catch (const json::exception &e)
    {
        throw ConfigError(field, e.what());
    }
}

template <typename T>
T required(const json &j, const std::string &key, const std::string &prefix)
{
    return as<T>(require(j, key, prefix), join(prefix, key));
}

template <typename T>
T optional(const json &j, const std::string &key, const std::string &prefix, T fallback)
{
    if (!j.is_object())
        throw ConfigError(prefix, "expected a JSON object");
    auto it = j.find(key);
    return it == j.end() ? fallback : as<T>(*it, join(prefix, key));
}

void check(bool ok, const std::string &field, const std::string &what)
{
    if (!ok)
        throw ConfigError(field, what);
}

PathlossParams pathloss_from_json(const json &j, const std::string &prefix)
{
    PathlossParams p;
    p.intercept_db = required<double>(j, "intercept_db", prefix);
    p.slope = required<double>(j, "slope", prefix);
    p.shadowing_sigma_db = required<double>(j, "shadowing_sigma_db", prefix);
    return p;
}

json pathloss_to_json(const PathlossParams &p)
{
    return {{"intercept_db", p.intercept_db}, {"slope", p.slope}, {"shadowing_sigma_db", p.shadowing_sigma_db}};
}

ArrayShape array_from_json(const json &j, const std::string &prefix)
{
    if (j.is_string())
        return parse_array_shape(j.get<std::string>());
    ArrayShape a;
    a.rows = required<int>(j, "rows", prefix);
    a.cols = required<int>(j, "cols", prefix);
    a.element_spacing_wavelengths = optional<double>(j, "element_spacing_wavelengths", prefix, 0.5);
    return a;
}

json array_to_json(const ArrayShape &a)
{
    return {{"rows", a.rows}, {"cols", a.cols}, {"element_spacing_wavelengths", a.element_spacing_wavelengths}};
}

void validate_array(const ArrayShape &a, const std::string &field)
{
    check(a.rows >= 1, field + ".rows", "must be >= 1");
    check(a.cols >= 1, field + ".cols", "must be >= 1");
    check(a.element_spacing_wavelengths > 0.0, field + ".element_spacing_wavelengths", "must be > 0");
}

const char *alignment_name(BeamAlignment a)
{
    return a == BeamAlignment::Svd ? "svd" : "strongest_cluster";
}

} // namespace

ArrayShape parse_array_shape(const std::string &text)
{
    static const std::regex pattern(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw ConfigError("array", "expected ROWSxCOLS, got '" + text + "'");
    ArrayShape a;
    a.rows = std::stoi(m[1]);
    a.cols = std::stoi(m[2]);
    validate_array(a, "array");
    return a;
}

std::string to_string(const ArrayShape &shape)
{
    return std::to_string(shape.rows) + "x" + std::to_string(shape.cols);
}

double ChannelParams::p_outage(double d) const
{
    return std::max(0.0, 1.0 - std::exp(-d / link_state.outage_length_m + link_state.outage_offset));
}

double ChannelParams::p_los(double d) const
{
    return (1.0 - p_outage(d)) * std::exp(-d / link_state.los_length_m);
}

double ChannelParams::p_nlos(double d) const
{
    return std::max(0.0, 1.0 - p_outage(d) - p_los(d));
}

void ChannelParams::validate() const
{
    const std::string f = "channel_tables[" + std::to_string(frequency_ghz) + " GHz]";
    check(frequency_ghz > 0.0, f + ".frequency_ghz", "must be > 0");
    for (const auto &[name, pl] : {std::pair{"los", los}, std::pair{"nlos", nlos}})
    {
        check(std::isfinite(pl.intercept_db), f + "." + name + ".intercept_db", "must be finite");
        check(pl.slope > 0.0, f + "." + name + ".slope", "must be > 0");
        check(pl.shadowing_sigma_db >= 0.0, f + "." + name + ".shadowing_sigma_db", "must be >= 0");
    }
    // These signs keep p_los, p_out in [0,1] with p_los + p_out <= 1 for every d >= 0.
    check(link_state.outage_length_m > 0.0, f + ".link_state.outage_length_m", "must be > 0");
    check(link_state.outage_offset >= 0.0, f + ".link_state.outage_offset", "must be >= 0");
    check(link_state.los_length_m > 0.0, f + ".link_state.los_length_m", "must be > 0");
    check(clusters.count_mean >= 0.0, f + ".clusters.count_mean", "must be >= 0");
    check(clusters.min_count >= 1, f + ".clusters.min_count", "must be >= 1");
    check(clusters.power_decay_r >= 1.0, f + ".clusters.power_decay_r", "must be >= 1");
    check(clusters.power_shadow_sigma_db >= 0.0, f + ".clusters.power_shadow_sigma_db", "must be >= 0");
    check(clusters.subpaths_min >= 1, f + ".clusters.subpaths_min", "must be >= 1");
    check(clusters.subpaths_max >= clusters.subpaths_min, f + ".clusters.subpaths_max", "must be >= subpaths_min");
    check(spreads.bs_azimuth_deg >= 0.0 && spreads.bs_elevation_deg >= 0.0 && spreads.ue_azimuth_deg >= 0.0 &&
              spreads.ue_elevation_deg >= 0.0,
          f + ".angular_spread_deg", "spreads must be >= 0");
    check(bs_height_m >= 0.0, f + ".bs_height_m", "must be >= 0");
    check(ue_height_m >= 0.0, f + ".ue_height_m", "must be >= 0");
}

const ChannelParams &SimulationConfig::channel_for(double frequency_ghz) const
{
    for (const auto &t : channel_tables)
        if (std::abs(t.frequency_ghz - frequency_ghz) < 1e-6)
            return t;
    std::ostringstream os;
    os << "no channel table for frequency " << frequency_ghz << " GHz";
    throw ConfigError("scenario.carrier_frequency_ghz", os.str());
}

void SimulationConfig::validate() const
{
    const auto &s = scenario;
    check(s.carrier_frequency_ghz > 0.0, "scenario.carrier_frequency_ghz", "must be > 0");
    check(s.bandwidth_hz > 0.0, "scenario.bandwidth_hz", "must be > 0");
    check(std::isfinite(s.tx_power_dbm), "scenario.tx_power_dbm", "must be finite");
    check(std::isfinite(s.noise_figure_db), "scenario.noise_figure_db", "must be finite");
    check(std::isfinite(s.noise_psd_dbm_per_hz), "scenario.noise_psd_dbm_per_hz", "must be finite");
    check(s.lambda_bs_per_km2 > 0.0, "scenario.lambda_bs_per_km2", "must be > 0");
    // Zero UE density leaves only the typical receiver, which is a meaningful scenario.
    check(s.lambda_ue_per_km2 >= 0.0, "scenario.lambda_ue_per_km2", "must be >= 0");
    validate_array(s.bs_array, "scenario.bs_array");
    validate_array(s.ue_array, "scenario.ue_array");
    check(s.region_radius_m > 0.0, "scenario.region_radius_m", "must be > 0");
    check(s.iterations >= 1, "scenario.iterations", "must be >= 1");
    check(s.regime.noise_limited_max >= 0.0 && s.regime.noise_limited_max <= s.regime.interference_limited_min &&
              s.regime.interference_limited_min <= 1.0,
          "scenario.regime", "need 0 <= noise_limited_max <= interference_limited_min <= 1");
    for (std::size_t i = 0; i < channel_tables.size(); ++i)
    {
        channel_tables[i].validate();
        for (std::size_t k = 0; k < i; ++k)
            check(std::abs(channel_tables[k].frequency_ghz - channel_tables[i].frequency_ghz) >= 1e-6,
                  "channel_tables", "duplicate table for " + std::to_string(channel_tables[i].frequency_ghz) + " GHz");
    }
    channel_for(s.carrier_frequency_ghz);
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db, double noise_psd_dbm_per_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power_dbm: bandwidth must be > 0");
    return noise_psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

ChannelParams channel_params_from_json(const json &j)
{
    const std::string prefix = "channel_table";
    ChannelParams p;
    p.frequency_ghz = required<double>(j, "frequency_ghz", prefix);
    p.source = optional<std::string>(j, "source", prefix, "");
    p.los = pathloss_from_json(require(j, "los", prefix), prefix + ".los");
    p.nlos = pathloss_from_json(require(j, "nlos", prefix), prefix + ".nlos");

    const auto &ls = require(j, "link_state", prefix);
    p.link_state.outage_length_m = required<double>(ls, "outage_length_m", prefix + ".link_state");
    p.link_state.outage_offset = required<double>(ls, "outage_offset", prefix + ".link_state");
    p.link_state.los_length_m = required<double>(ls, "los_length_m", prefix + ".link_state");

    const auto &cl = require(j, "clusters", prefix);
    const std::string cp = prefix + ".clusters";
    p.clusters.count_mean = required<double>(cl, "count_mean", cp);
    p.clusters.min_count = optional<int>(cl, "min_count", cp, 1);
    p.clusters.power_decay_r = required<double>(cl, "power_decay_r", cp);
    p.clusters.power_shadow_sigma_db = required<double>(cl, "power_shadow_sigma_db", cp);
    p.clusters.subpaths_min = required<int>(cl, "subpaths_min", cp);
    p.clusters.subpaths_max = required<int>(cl, "subpaths_max", cp);

    const auto &sp = require(j, "angular_spread_deg", prefix);
    const std::string sprefix = prefix + ".angular_spread_deg";
    p.spreads.bs_azimuth_deg = required<double>(sp, "bs_azimuth", sprefix);
    p.spreads.bs_elevation_deg = required<double>(sp, "bs_elevation", sprefix);
    p.spreads.ue_azimuth_deg = required<double>(sp, "ue_azimuth", sprefix);
    p.spreads.ue_elevation_deg = required<double>(sp, "ue_elevation", sprefix);

    p.bs_height_m = optional<double>(j, "bs_height_m", prefix, 10.0);
    p.ue_height_m = optional<double>(j, "ue_height_m", prefix, 1.5);
    p.validate();
    return p;
}

json to_json(const ChannelParams &p)
{
    return {
        {"frequency_ghz", p.frequency_ghz},
        {"source", p.source},
        {"los", pathloss_to_json(p.los)},
        {"nlos", pathloss_to_json(p.nlos)},
        {"link_state",
         {{"outage_length_m", p.link_state.outage_length_m},
          {"outage_offset", p.link_state.outage_offset},
          {"los_length_m", p.link_state.los_length_m}}},
        {"clusters",
         {{"count_mean", p.clusters.count_mean},
          {"min_count", p.clusters.min_count},
          {"power_decay_r", p.clusters.power_decay_r},
          {"power_shadow_sigma_db", p.clusters.power_shadow_sigma_db},
          {"subpaths_min", p.clusters.subpaths_min},
          {"subpaths_max", p.clusters.subpaths_max}}},
        {"angular_spread_deg",
         {{"bs_azimuth", p.spreads.bs_azimuth_deg},
          {"bs_elevation", p.spreads.bs_elevation_deg},
          {"ue_azimuth", p.spreads.ue_azimuth_deg},
          {"ue_elevation", p.spreads.ue_elevation_deg}}},
        {"bs_height_m", p.bs_height_m},
        {"ue_height_m", p.ue_height_m},
    };
}

ScenarioConfig scenario_from_json(const json &j)
{
    const std::string prefix = "scenario";
    ScenarioConfig s;
    s.carrier_frequency_ghz = required<double>(j, "carrier_frequency_ghz", prefix);
    s.bandwidth_hz = optional<double>(j, "bandwidth_hz", prefix, s.bandwidth_hz);
    s.tx_power_dbm = optional<double>(j, "tx_power_dbm", prefix, s.tx_power_dbm);
    s.noise_figure_db = optional<double>(j, "noise_figure_db", prefix, s.noise_figure_db);
    s.noise_psd_dbm_per_hz = optional<double>(j, "noise_psd_dbm_per_hz", prefix, s.noise_psd_dbm_per_hz);
    s.lambda_bs_per_km2 = required<double>(j, "lambda_bs_per_km2", prefix);
    s.lambda_ue_per_km2 = required<double>(j, "lambda_ue_per_km2", prefix);
    if (auto it = j.find("bs_array"); it != j.end())
        s.bs_array = array_from_json(*it, prefix + ".bs_array");
    if (auto it = j.find("ue_array"); it != j.end())
        s.ue_array = array_from_json(*it, prefix + ".ue_array");
    s.region_radius_m = optional<double>(j, "region_radius_m", prefix, s.region_radius_m);
    s.iterations = optional<std::uint64_t>(j, "iterations", prefix, s.iterations);
    s.master_seed = optional<std::uint64_t>(j, "master_seed", prefix, s.master_seed);

    const auto alignment = optional<std::string>(j, "alignment", prefix, "strongest_cluster");
    if (alignment == "strongest_cluster")
        s.alignment = BeamAlignment::StrongestCluster;
    else if (alignment == "svd")
        s.alignment = BeamAlignment::Svd;
    else
        throw ConfigError(prefix + ".alignment", "expected 'strongest_cluster' or 'svd', got '" + alignment + "'");

    if (auto it = j.find("regime"); it != j.end())
    {
        const std::string rp = prefix + ".regime";
        s.regime.inr_threshold_db = optional<double>(*it, "inr_threshold_db", rp, s.regime.inr_threshold_db);
        s.regime.noise_limited_max = optional<double>(*it, "noise_limited_max", rp, s.regime.noise_limited_max);
        s.regime.interference_limited_min =
            optional<double>(*it, "interference_limited_min", rp, s.regime.interference_limited_min);
    }
    s.include_outage_drops = optional<bool>(j, "include_outage_drops", prefix, false);
    return s;
}

json to_json(const ScenarioConfig &s)
{
    return {
        {"carrier_frequency_ghz", s.carrier_frequency_ghz},
        {"bandwidth_hz", s.bandwidth_hz},
        {"tx_power_dbm", s.tx_power_dbm},
        {"noise_figure_db", s.noise_figure_db},
        {"noise_psd_dbm_per_hz", s.noise_psd_dbm_per_hz},
        {"lambda_bs_per_km2", s.lambda_bs_per_km2},
        {"lambda_ue_per_km2", s.lambda_ue_per_km2},
        {"bs_array", array_to_json(s.bs_array)},
        {"ue_array", array_to_json(s.ue_array)},
        {"region_radius_m", s.region_radius_m},
        {"iterations", s.iterations},
        {"master_seed", s.master_seed},
        {"alignment", alignment_name(s.alignment)},
        {"regime",
         {{"inr_threshold_db", s.regime.inr_threshold_db},
          {"noise_limited_max", s.regime.noise_limited_max},
          {"interference_limited_min", s.regime.interference_limited_min}}},
        {"include_outage_drops", s.include_outage_drops},
    };
}

SimulationConfig config_from_json(const json &j, const std::filesystem::path &base_dir)
{
    SimulationConfig c;
    c.scenario = scenario_from_json(require(j, "scenario", ""));
    const auto &tables = require(j, "channel_tables", "");
    if (!tables.is_array() || tables.empty())
        throw ConfigError("channel_tables", "expected a non-empty array");
    for (const auto &entry : tables)
    {
        if (entry.is_string())
        {
            std::filesystem::path p = entry.get<std::string>();
            if (p.is_relative())
                p = base_dir / p;
            std::ifstream in(p);
            if (!in)
                throw ConfigError("channel_tables", "cannot open table file " + p.string());
            json table;
            try
            {
                table = json::parse(in);
            }
            catch (const json::exception &e)
            {
                throw ConfigError("channel_tables", p.string() + ": " + e.what());
            }
            c.channel_tables.push_back(channel_params_from_json(table));
        }
        else
        {
            c.channel_tables.push_back(channel_params_from_json(entry));
        }
    }
    c.validate();
    return c;
}

json to_json(const SimulationConfig &c)
{
    json tables = json::array();
    for (const auto &t : c.channel_tables)
        tables.push_back(to_json(t));
    return {{"scenario", to_json(c.scenario)}, {"channel_tables", tables}};
}

SimulationConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open config file " + path.string());
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw ConfigError("", path.string() + ": parse error: " + e.what());
    }
    return config_from_json(j, path.parent_path());
}

} // namespace mmw
