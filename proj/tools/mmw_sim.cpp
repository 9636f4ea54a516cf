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

// mmw_sim: command-line front end for the INR/SINR Monte Carlo engine.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmw/engine.hpp"
#include "mmw/io.hpp"
#include "mmw/params.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct CommonOptions
{
    std::string config_path = "config/default.json";
    std::string out_dir = "out";
    std::optional<double> lambda_bs;
    std::optional<double> lambda_ue;
    std::optional<double> freq;
    std::optional<std::uint64_t> iterations;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> bs_array;
    std::optional<std::string> ue_array;
    std::optional<double> region_radius;
    std::optional<std::string> alignment;
    unsigned threads = 0;
    bool include_outage = false;
};

void add_common(CLI::App &cmd, CommonOptions &o)
{
    cmd.add_option("--config", o.config_path, "Configuration JSON")->check(CLI::ExistingFile)->capture_default_str();
    cmd.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--lambda-bs", o.lambda_bs, "BS density [1/km^2]")->check(CLI::PositiveNumber);
    cmd.add_option("--lambda-ue", o.lambda_ue, "UE density [1/km^2]")->check(CLI::NonNegativeNumber);
    cmd.add_option("--freq", o.freq, "Carrier frequency [GHz]; needs a matching channel table")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--iterations", o.iterations, "Monte Carlo drops")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--bs-array", o.bs_array, "BS array ROWSxCOLS");
    cmd.add_option("--ue-array", o.ue_array, "UE array ROWSxCOLS");
    cmd.add_option("--region-radius-m", o.region_radius, "Simulation disc radius [m]")->check(CLI::PositiveNumber);
    cmd.add_option("--alignment", o.alignment, "Beam alignment")
        ->check(CLI::IsMember({"strongest_cluster", "svd"}));
    cmd.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
    cmd.add_flag("--include-outage-drops", o.include_outage, "Keep coverage-outage drops in the ECDFs at -inf");
}

mmw::SimulationConfig resolve(const CommonOptions &o)
{
    auto config = mmw::load_config(o.config_path);
    auto &s = config.scenario;
    if (o.lambda_bs)
        s.lambda_bs_per_km2 = *o.lambda_bs;
    if (o.lambda_ue)
        s.lambda_ue_per_km2 = *o.lambda_ue;
    if (o.freq)
        s.carrier_frequency_ghz = *o.freq;
    if (o.iterations)
        s.iterations = *o.iterations;
    if (o.seed)
        s.master_seed = *o.seed;
    if (o.bs_array)
        s.bs_array = mmw::parse_array_shape(*o.bs_array);
    if (o.ue_array)
        s.ue_array = mmw::parse_array_shape(*o.ue_array);
    if (o.region_radius)
        s.region_radius_m = *o.region_radius;
    if (o.alignment)
        s.alignment = *o.alignment == "svd" ? mmw::BeamAlignment::Svd : mmw::BeamAlignment::StrongestCluster;
    if (o.include_outage)
        s.include_outage_drops = true;
    config.validate();
    return config;
}

template <typename Writer>
void write_with(const fs::path &path, Writer &&writer)
{
    std::ostringstream os;
    writer(os);
    mmw::write_file(path, os.str());
}

void write_campaign(const fs::path &dir, const mmw::CampaignResult &result)
{
    fs::create_directories(dir);
    write_with(dir / "iterations.csv", [&](std::ostream &os) { mmw::write_iterations_csv(os, result); });
    write_with(dir / "ecdf.csv", [&](std::ostream &os) { mmw::write_ecdf_csv(os, result); });
    write_with(dir / "interferer_states.csv", [&](std::ostream &os) {
        mmw::write_state_table_csv(os, result.config, result.interferer_states);
    });
    mmw::write_file(dir / "summary.json", mmw::summary_json(result).dump(2) + "\n");
    mmw::write_file(dir / "plot.py", mmw::plot_script(mmw::PlotKind::Ecdf, result.config));
}

void print_summary(const mmw::CampaignResult &r)
{
    const auto &s = r.config.scenario;
    std::cout << s.carrier_frequency_ghz << " GHz, lambda_bs=" << s.lambda_bs_per_km2
              << "/km^2, lambda_ue=" << s.lambda_ue_per_km2 << "/km^2, " << r.iterations.size() << " drops ("
              << r.served_drops << " served)\n"
              << "  INR  p5/p50/p95 [dB]: " << r.inr_percentiles.p5 << " / " << r.inr_percentiles.p50 << " / "
              << r.inr_percentiles.p95 << "\n"
              << "  SINR p5/p50/p95 [dB]: " << r.sinr_percentiles.p5 << " / " << r.sinr_percentiles.p50 << " / "
              << r.sinr_percentiles.p95 << "\n"
              << "  P(INR > " << s.regime.inr_threshold_db << " dB) = " << r.regime.fraction_above << " -> "
              << mmw::to_string(r.regime.regime) << "\n";
}

int cmd_run(const CommonOptions &o, std::optional<std::uint64_t> dump_index)
{
    const auto config = resolve(o);
    const auto result = mmw::run_campaign(config, {o.threads});
    write_campaign(o.out_dir, result);
    if (dump_index)
    {
        write_with(fs::path(o.out_dir) / "deployment.csv", [&](std::ostream &os) {
            mmw::write_provenance(os, "mmw_sim deployment", config);
            mmw::write_deployment_csv(os, mmw::drop_deployment(config, *dump_index));
        });
    }
    print_summary(result);
    return 0;
}

int cmd_table1(const CommonOptions &o, double split)
{
    const auto config = resolve(o);
    const auto result = mmw::run_campaign(config, {o.threads, split});
    write_campaign(o.out_dir, result);
    std::cout << "ECDF interval      LoS      NLoS     outage   (interferers)\n";
    for (const auto &t : result.interferer_states)
    {
        std::cout << "[" << 100.0 * t.lower_quantile << "% - " << 100.0 * t.upper_quantile << "%]   "
                  << 100.0 * t.fractions.los << "%   " << 100.0 * t.fractions.nlos << "%   "
                  << 100.0 * t.fractions.outage << "%   (" << t.interferers << ")\n";
    }
    return 0;
}

int cmd_sweep(const CommonOptions &o, const std::vector<double> &densities, const std::vector<double> &freqs)
{
    auto config = resolve(o);
    std::vector<double> frequencies = freqs;
    if (frequencies.empty())
        frequencies.push_back(config.scenario.carrier_frequency_ghz);
    for (double f : frequencies)
        config.channel_for(f);

    const auto rows = mmw::density_sweep(config, densities, frequencies, {o.threads});
    fs::create_directories(o.out_dir);
    write_with(fs::path(o.out_dir) / "sweep.csv", [&](std::ostream &os) { mmw::write_sweep_csv(os, config, rows); });
    mmw::write_file(fs::path(o.out_dir) / "plot.py", mmw::plot_script(mmw::PlotKind::Sweep, config));

    std::cout << "freq_ghz  lambda_bs  sinr_p5  sinr_p50  inr_p50  regime\n";
    for (const auto &r : rows)
        std::cout << r.frequency_ghz << "  " << r.lambda_bs_per_km2 << "  " << r.sinr.p5 << "  " << r.sinr.p50
                  << "  " << r.inr.p50 << "  " << mmw::to_string(r.regime.regime) << "\n";
    return 0;
}

int cmd_compare_arrays(CommonOptions o, const std::string &large_bs, const std::string &large_ue)
{
    if (!o.freq)
        o.freq = 73.0;
    const auto config = resolve(o);
    const auto bs = mmw::parse_array_shape(large_bs);
    const auto ue = mmw::parse_array_shape(large_ue);
    const auto cmp = mmw::compare_arrays(config, bs, ue, {o.threads});

    const fs::path out = o.out_dir;
    write_campaign(out / "baseline", cmp.baseline);
    write_campaign(out / "enlarged", cmp.enlarged);
    write_with(out / "deltas.csv", [&](std::ostream &os) {
        mmw::write_provenance(os, "mmw_sim compare-arrays", config);
        os << "percentile,inr_baseline_db,inr_enlarged_db,inr_delta_db,sinr_baseline_db,sinr_enlarged_db,"
              "sinr_delta_db\n";
        for (int p = 1; p <= 99; ++p)
        {
            const double ib = cmp.baseline.inr.percentile(p);
            const double ie = cmp.enlarged.inr.percentile(p);
            const double sb = cmp.baseline.sinr.percentile(p);
            const double se = cmp.enlarged.sinr.percentile(p);
            auto d = [](double a, double b) { return a == b ? 0.0 : a - b; };
            os << p << ',' << mmw::csv_number(ib) << ',' << mmw::csv_number(ie) << ','
               << mmw::csv_number(d(ie, ib)) << ',' << mmw::csv_number(sb) << ','
               << mmw::csv_number(se) << ',' << mmw::csv_number(d(se, sb)) << '\n';
        }
    });
    json summary = {
        {"master_seed", config.scenario.master_seed},
        {"config", mmw::to_json(config)},
        {"baseline", {{"bs_array", mmw::to_string(config.scenario.bs_array)},
                      {"ue_array", mmw::to_string(config.scenario.ue_array)}}},
        {"enlarged", {{"bs_array", mmw::to_string(bs)}, {"ue_array", mmw::to_string(ue)}}},
        {"median_inr_delta_db", mmw::json_number(cmp.median_inr_delta_db)},
        {"median_sinr_delta_db", mmw::json_number(cmp.median_sinr_delta_db)},
    };
    mmw::write_file(out / "compare.json", summary.dump(2) + "\n");
    mmw::write_file(out / "plot.py", mmw::plot_script(mmw::PlotKind::CompareArrays, config));

    std::cout << "median INR delta:  " << cmp.median_inr_delta_db << " dB\n"
              << "median SINR delta: " << cmp.median_sinr_delta_db << " dB\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Monte Carlo INR/SINR analysis of mmWave cellular networks"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::optional<std::uint64_t> dump_index;
    auto *run = app.add_subcommand("run", "Single campaign: per-drop CSV, ECDF data, summary JSON");
    add_common(*run, run_opts);
    run->add_option("--dump-deployment", dump_index, "Also write the node positions of this drop");

    CommonOptions sweep_opts;
    std::vector<double> densities;
    std::vector<double> freqs;
    auto *sweep = app.add_subcommand("sweep", "Percentiles versus BS density");
    add_common(*sweep, sweep_opts);
    sweep->add_option("--densities", densities, "BS densities [1/km^2]")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sweep->add_option("--freqs", freqs, "Carrier frequencies [GHz]")->delimiter(',')->check(CLI::PositiveNumber);

    CommonOptions table_opts;
    double split = 0.12;
    auto *table = app.add_subcommand("table1", "Interferer link-state probabilities per INR-ECDF interval");
    add_common(*table, table_opts);
    table->add_option("--split", split, "ECDF split quantile")->check(CLI::Range(0.0, 1.0))->capture_default_str();

    CommonOptions cmp_opts;
    std::string large_bs = "16x16";
    std::string large_ue = "8x8";
    auto *cmp = app.add_subcommand("compare-arrays", "Paired campaigns with baseline and enlarged arrays");
    add_common(*cmp, cmp_opts);
    cmp->add_option("--large-bs-array", large_bs, "Enlarged BS array")->capture_default_str();
    cmp->add_option("--large-ue-array", large_ue, "Enlarged UE array")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(run_opts, dump_index);
        if (*sweep)
            return cmd_sweep(sweep_opts, densities, freqs);
        if (*table)
            return cmd_table1(table_opts, split);
        if (*cmp)
            return cmd_compare_arrays(cmp_opts, large_bs, large_ue);
    }
    catch (const mmw::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
