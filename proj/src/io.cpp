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

#include "mmw/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mmw
{

using nlohmann::json;

std::string csv_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

namespace
{

json percentiles_json(const Percentiles &p)
{
    return {{"p5", json_number(p.p5)}, {"p50", json_number(p.p50)}, {"p95", json_number(p.p95)}};
}

void write_ecdf_rows(std::ostream &out, const char *metric, const Ecdf &e)
{
    const auto s = e.samples();
    const double n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        if (i + 1 < s.size() && s[i + 1] == s[i])
            continue;
        out << metric << ',' << csv_number(s[i]) << ',' << csv_number(static_cast<double>(i + 1) / n) << '\n';
    }
}

const char *plot_body(PlotKind kind)
{
    switch (kind)
    {
    case PlotKind::Ecdf:
        return R"(data = read("ecdf.csv")
fig, ax = plt.subplots()
for metric, label in (("inr", "INR"), ("sinr", "SINR")):
    rows = [r for r in data if r["metric"] == metric]
    xs = [float(r["value_db"]) for r in rows]
    ys = [float(r["cdf"]) for r in rows]
    ax.step(xs, ys, where="post", label=label)
ax.axvline(0.0, color="k", lw=0.8, ls=":")
ax.set_xlabel("dB")
ax.set_ylabel("ECDF")
ax.legend()
fig.savefig("ecdf.png", dpi=150)
)";
    case PlotKind::Sweep:
        return R"(data = read("sweep.csv")
fig, ax = plt.subplots()
for f in sorted({r["frequency_ghz"] for r in data}, key=float):
    rows = sorted((r for r in data if r["frequency_ghz"] == f), key=lambda r: float(r["lambda_bs_per_km2"]))
    xs = [float(r["lambda_bs_per_km2"]) for r in rows]
    for col, style in (("sinr_p5_db", "--"), ("sinr_p50_db", "-")):
        ax.plot(xs, [float(r[col]) for r in rows], style, marker="o", label=f"{f} GHz {col[5:8]}")
ax.set_xlabel("BS density [BSs/km^2]")
ax.set_ylabel("SINR [dB]")
ax.legend()
fig.savefig("sweep.png", dpi=150)
)";
    case PlotKind::CompareArrays:
        return R"(fig, axes = plt.subplots(1, 2, figsize=(10, 4))
for arm, style in (("baseline", "-"), ("enlarged", "--")):
    data = read(f"{arm}/ecdf.csv")
    for ax, metric in zip(axes, ("inr", "sinr")):
        rows = [r for r in data if r["metric"] == metric]
        ax.step([float(r["value_db"]) for r in rows], [float(r["cdf"]) for r in rows], style, where="post", label=arm)
        ax.set_xlabel(metric.upper() + " [dB]")
        ax.set_ylabel("ECDF")
        ax.legend()
fig.savefig("compare_arrays.png", dpi=150)
)";
    }
    return "";
}

} // namespace

json json_number(double x)
{
    if (std::isfinite(x))
        return x;
    return csv_number(x);
}

void write_provenance(std::ostream &out, const std::string &tool, const SimulationConfig &config)
{
    out << "# tool: " << tool << '\n';
    out << "# master_seed: " << config.scenario.master_seed << '\n';
    out << "# config: " << to_json(config).dump() << '\n';
}

void write_iterations_csv(std::ostream &out, const CampaignResult &result)
{
    write_provenance(out, "mmw_sim iterations", result.config);
    out << kIterationColumns << '\n';
    for (const auto &r : result.iterations)
    {
        const auto &b = r.budget;
        out << r.iteration << ',' << (r.served() ? 1 : 0) << ',' << (r.served() ? to_string(b.serving_state) : "none")
            << ',' << csv_number(b.received_signal_dbm) << ',' << csv_number(b.interference_dbm) << ',' << csv_number(b.noise_dbm) << ','
            << csv_number(b.inr_db) << ',' << csv_number(b.sinr_db) << ',' << csv_number(b.snr_db) << ',' << r.num_bs << ','
            << r.active_bs << ',' << b.interferer_states.los << ',' << b.interferer_states.nlos << ','
            << b.interferer_states.outage << '\n';
    }
}

void write_ecdf_csv(std::ostream &out, const CampaignResult &result)
{
    write_provenance(out, "mmw_sim ecdf", result.config);
    out << kEcdfColumns << '\n';
    write_ecdf_rows(out, "inr", result.inr);
    write_ecdf_rows(out, "sinr", result.sinr);
    write_ecdf_rows(out, "snr", result.snr);
}

void write_state_table_csv(std::ostream &out, const SimulationConfig &config, std::span<const IntervalStates> table)
{
    write_provenance(out, "mmw_sim interferer-states", config);
    out << kStateTableColumns << '\n';
    for (const auto &t : table)
        out << csv_number(t.lower_quantile) << ',' << csv_number(t.upper_quantile) << ',' << t.drops << ',' << t.interferers
            << ',' << csv_number(t.fractions.los) << ',' << csv_number(t.fractions.nlos) << ',' << csv_number(t.fractions.outage)
            << '\n';
}

void write_sweep_csv(std::ostream &out, const SimulationConfig &config, std::span<const SweepRow> rows)
{
    write_provenance(out, "mmw_sim sweep", config);
    out << kSweepColumns << '\n';
    for (const auto &r : rows)
        out << csv_number(r.frequency_ghz) << ',' << csv_number(r.lambda_bs_per_km2) << ',' << csv_number(r.sinr.p5) << ','
            << csv_number(r.sinr.p50) << ',' << csv_number(r.sinr.p95) << ',' << csv_number(r.inr.p5) << ',' << csv_number(r.inr.p50) << ','
            << csv_number(r.inr.p95) << ',' << csv_number(r.regime.fraction_above) << ',' << to_string(r.regime.regime) << ','
            << csv_number(r.coverage_outage_fraction) << '\n';
}

json summary_json(const CampaignResult &result)
{
    json table = json::array();
    for (const auto &t : result.interferer_states)
        table.push_back({{"lower_quantile", t.lower_quantile},
                         {"upper_quantile", t.upper_quantile},
                         {"drops", t.drops},
                         {"interferers", t.interferers},
                         {"los", t.fractions.los},
                         {"nlos", t.fractions.nlos},
                         {"outage", t.fractions.outage}});
    return {
        {"master_seed", result.config.scenario.master_seed},
        {"config", to_json(result.config)},
        {"iterations", result.iterations.size()},
        {"served_drops", result.served_drops},
        {"coverage_outage_fraction", result.coverage_outage_fraction},
        {"noise_dbm", noise_power_dbm(result.config.scenario)},
        {"inr_percentiles_db", percentiles_json(result.inr_percentiles)},
        {"sinr_percentiles_db", percentiles_json(result.sinr_percentiles)},
        {"regime",
         {{"class", std::string(to_string(result.regime.regime))},
          {"fraction_inr_above_threshold", result.regime.fraction_above},
          {"inr_threshold_db", result.config.scenario.regime.inr_threshold_db}}},
        {"interferer_state_table", table},
    };
}

std::string plot_script(PlotKind kind, const SimulationConfig &config)
{
    std::ostringstream header;
    header << "#!/usr/bin/env python3\n# Generated by mmw_sim. Run from the output directory: python3 plot.py\n";
    write_provenance(header, "mmw_sim plot", config);
    std::string script = R"(import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


)";
    return header.str() + script + plot_body(kind);
}

void write_file(const std::filesystem::path &path, const std::string &contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << contents;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

} // namespace mmw
