// SPDX-License-Identifier: Apache-2.0
//
// risbeam - link-level simulator for RIS-aided mmWave/THz MIMO systems
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
//
// Command line front end. Subcommands:
//   sweep     run a Monte Carlo sweep and write a CSV
//   validate  run the reduced-scale invariant suite
//   oracle    compare estimator pair selection against the exhaustive oracle
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risbeam/experiment.hpp"

namespace {

// Flags shared by the sweep and oracle subcommands; values are applied on
// top of the config file (file first, explicit flags win).
struct CommonFlags
{
    std::string config_path;
    std::string band;
    std::string ptx_list;
    std::uint64_t seed = 0;
    int trials = 0;
    int threads = 0;
    bool has_seed = false;
    bool has_trials = false;
    bool has_threads = false;
};

void add_common_flags(CLI::App *cmd, CommonFlags &flags)
{
    cmd->add_option("--config", flags.config_path, "Config file (flat key = value lines)");
    cmd->add_option("--band", flags.band, "Band preset: mmwave28 or thz142");
    cmd->add_option("--ptx", flags.ptx_list, "Comma-separated transmit power sweep in dBm");
    cmd->add_option("--seed", flags.seed, "Base seed for all random draws")
        ->each([&](const std::string &) { flags.has_seed = true; });
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per sweep point")
        ->each([&](const std::string &) { flags.has_trials = true; });
    cmd->add_option("--threads", flags.threads, "Worker pool size (never changes results)")
        ->each([&](const std::string &) { flags.has_threads = true; });
}

risbeam::ExperimentConfig build_config(const CommonFlags &flags)
{
    risbeam::ExperimentConfig cfg;
    if (!flags.config_path.empty())
        cfg = risbeam::load_config(flags.config_path);

    if (!flags.band.empty())
        cfg.band = risbeam::parse_band(flags.band);
    if (!flags.ptx_list.empty()) {
        cfg.ptx_dbm_sweep.clear();
        std::stringstream ss(flags.ptx_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                cfg.ptx_dbm_sweep.push_back(std::stod(item));
            } catch (const std::exception &) {
                throw std::invalid_argument("--ptx: expected a comma-separated list of numbers");
            }
        }
    }
    if (flags.has_seed)
        cfg.seed = flags.seed;
    if (flags.has_trials)
        cfg.trials = flags.trials;
    if (flags.has_threads)
        cfg.threads = flags.threads;

    risbeam::validate_config(cfg);
    return cfg;
}

void write_plot_script(const std::string &script_path, const std::string &csv_path)
{
    std::ofstream out(script_path);
    if (!out)
        throw std::runtime_error("cannot write plot script '" + script_path + "'");
    out << "#!/usr/bin/env python3\n"
           "# Plots the sweep CSV produced alongside this script.\n"
           "import csv\n"
           "from collections import defaultdict\n"
           "import matplotlib.pyplot as plt\n"
           "\n"
           "curves = defaultdict(list)\n"
           "with open("
        << "\"" << csv_path << "\""
        << ") as f:\n"
           "    for row in csv.DictReader(f):\n"
           "        curves[row[\"method\"]].append(\n"
           "            (float(row[\"ptx_dbm\"]), float(row[\"mean_capacity\"]),\n"
           "             float(row[\"mean_spectral_efficiency\"])))\n"
           "\n"
           "for method, pts in curves.items():\n"
           "    pts.sort()\n"
           "    x = [p[0] for p in pts]\n"
           "    plt.plot(x, [p[1] for p in pts], marker=\"o\", label=method + \" capacity\")\n"
           "    if method == \"proposed\":\n"
           "        plt.plot(x, [p[2] for p in pts], marker=\"s\", linestyle=\"--\",\n"
           "                 label=\"proposed spectral efficiency\")\n"
           "\n"
           "plt.xlabel(\"transmit power [dBm]\")\n"
           "plt.ylabel(\"bits/s/Hz\")\n"
           "plt.legend()\n"
           "plt.grid(True)\n"
           "plt.savefig(\""
        << csv_path << ".png\", dpi=150)\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulator for surface-assisted MIMO beamforming"};
    app.require_subcommand(1);

    CommonFlags sweep_flags;
    std::string out_path = "sweep.csv";
    std::string plot_script;
    CLI::App *sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write a CSV");
    add_common_flags(sweep, sweep_flags);
    sweep->add_option("--out", out_path, "Output CSV path");
    sweep->add_option("--plot-script", plot_script, "Also emit a plotting script at this path");

    CLI::App *validate =
        app.add_subcommand("validate", "Run the reduced-scale invariant suite");

    CommonFlags oracle_flags;
    CLI::App *oracle = app.add_subcommand(
        "oracle", "Compare estimator pair selection against the exhaustive oracle");
    add_common_flags(oracle, oracle_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sweep->parsed()) {
            const risbeam::ExperimentConfig cfg = build_config(sweep_flags);
            const auto records = risbeam::run_experiment(cfg);
            risbeam::write_records(records, out_path);
            if (!plot_script.empty())
                write_plot_script(plot_script, out_path);
            std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
            return 0;
        }
        if (validate->parsed())
            return risbeam::run_validation(std::cout) ? 0 : 2;
        if (oracle->parsed()) {
            risbeam::oracle_report(build_config(oracle_flags), std::cout);
            return 0;
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
