// SPDX-License-Identifier: Apache-2.0
//
// risanm: RIS-assisted mmWave channel estimation via atomic norm minimization
// Copyright (C) 2026 risanm project contributors
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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risanm/config.hpp"
#include "risanm/harness.hpp"
#include "risanm/metrics.hpp"

namespace
{

namespace fs = std::filesystem;
using risanm::harness::ConfigError;
using risanm::harness::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIo = 3;

std::vector<double> parse_snr_list(const std::string& csv)
{
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size())
            throw ConfigError("bad --snr entry: " + item);
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError("--snr list is empty");
    return out;
}

std::vector<std::string> parse_arch_list(const std::string& csv)
{
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    if (out.empty())
        throw ConfigError("--arch list is empty");
    return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int trials,
            std::int64_t seed, const std::string& arch_csv, const std::string& snr_csv,
            bool no_plots)
{
    ExperimentConfig cfg;
    try
    {
        cfg = risanm::harness::load_config(config_path);
        if (trials > 0)
            cfg.trials = trials;
        if (seed >= 0)
            cfg.seed = static_cast<std::uint64_t>(seed);
        if (!arch_csv.empty())
            cfg.architectures = parse_arch_list(arch_csv);
        if (!snr_csv.empty())
            cfg.snr_grid_db = parse_snr_list(snr_csv);
        risanm::harness::validate_config(cfg);
        (void)risanm::harness::worker_count(); // surface RIS_ANM_THREADS typos early
    }
    catch (const ConfigError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try
    {
        const risanm::harness::SweepResult result = risanm::harness::run_sweep(cfg, &std::cerr);
        fs::create_directories(out_dir);
        const fs::path csv = fs::path(out_dir) / "results.csv";
        risanm::harness::write_csv(result.table, csv.string());
        if (!no_plots)
            risanm::harness::write_svg_plots(result.table, out_dir);
        std::cout << "wrote " << csv.string() << "\n";
        if (result.budget_exceeded)
        {
            std::cerr << "error: failed-trial fraction reached 1% at SNR >= -5 dB\n";
            return kExitBudget;
        }
        return kExitOk;
    }
    catch (const std::ios_base::failure& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const fs::filesystem_error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    }
}

int cmd_validate(const std::string& config_path)
{
    try
    {
        const ExperimentConfig cfg = risanm::harness::load_config(config_path);
        risanm::harness::validate_config(cfg);
        std::cout << risanm::harness::dump_config(cfg);
        return kExitOk;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_table1()
{
    const ExperimentConfig cfg;
    std::cout << "setup    N   K   N_RF  overhead\n";
    for (int i = 1; i <= 5; i++)
    {
        const std::string label = "setup" + std::to_string(i);
        const risanm::HybridSetup& s = cfg.hybrid_setups.at(label);
        char line[96];
        std::snprintf(line, sizeof(line), "%-7s %3d %3d  %4d  %8d\n", label.c_str(), s.n_beams,
                      s.n_active, s.n_rf,
                      risanm::metrics::overhead_hybrid(s.n_beams, s.n_active, s.n_rf));
        std::cout << line;
    }
    const risanm::PassiveSetup& p = cfg.passive;
    std::cout << "passive overhead (N0=" << p.n0 << ", M0=" << p.m0 << ", T=" << p.t_blocks
              << ", L=2x2, N_RF_M=" << p.n_rf_ms << "): "
              << risanm::metrics::overhead_passive(p.n0, p.m0, p.t_blocks, 2, 2, p.n_rf_ms)
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"RIS channel estimation Monte Carlo harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", arch_csv, snr_csv;
    int trials = 0;
    std::int64_t seed = -1;
    bool no_plots = false;

    CLI::App* run = app.add_subcommand("run", "run a sweep and write CSV + SVG results");
    run->add_option("--config", config_path, "config file path")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--trials", trials, "override trial count");
    run->add_option("--seed", seed, "override experiment seed");
    run->add_option("--arch", arch_csv, "comma-separated architecture subset");
    run->add_option("--snr", snr_csv, "comma-separated SNR grid in dB");
    run->add_flag("--no-plots", no_plots, "skip SVG output");

    CLI::App* validate = app.add_subcommand("validate", "parse and check a config file");
    std::string validate_path;
    validate->add_option("--config", validate_path, "config file path")->required();

    CLI::App* table1 = app.add_subcommand("table1", "print the hybrid setups and overheads");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed())
        return cmd_run(config_path, out_dir, trials, seed, arch_csv, snr_csv, no_plots);
    if (validate->parsed())
        return cmd_validate(validate_path);
    if (table1->parsed())
        return cmd_table1();
    return kExitConfig;
}
