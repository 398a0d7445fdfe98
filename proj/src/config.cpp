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

#include "risanm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "risanm/metrics.hpp"

namespace risanm::harness
{

namespace
{

std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        b++;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        e--;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

long long parse_int(const std::string& key, const std::string& v)
{
    std::size_t pos = 0;
    long long x = 0;
    try
    {
        x = std::stoll(v, &pos);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config: bad integer for '" + key + "': " + v);
    }
    if (pos != v.size())
        throw ConfigError("config: bad integer for '" + key + "': " + v);
    return x;
}

double parse_double(const std::string& key, const std::string& v)
{
    std::size_t pos = 0;
    double x = 0.0;
    try
    {
        x = std::stod(v, &pos);
    }
    catch (const std::exception&)
    {
        throw ConfigError("config: bad number for '" + key + "': " + v);
    }
    if (pos != v.size())
        throw ConfigError("config: bad number for '" + key + "': " + v);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + v);
}

CombinerMode parse_mode(const std::string& key, const std::string& v)
{
    if (v == "direct")
        return CombinerMode::direct;
    if (v == "analog_random_phase")
        return CombinerMode::analog_random_phase;
    throw ConfigError("config: bad combiner_mode for '" + key + "': " + v);
}

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "n_bs")
        cfg.n_bs = static_cast<int>(parse_int(key, value));
    else if (key == "n_ris")
        cfg.n_ris = static_cast<int>(parse_int(key, value));
    else if (key == "n_ms")
        cfg.n_ms = static_cast<int>(parse_int(key, value));
    else if (key == "paths")
        cfg.paths = static_cast<int>(parse_int(key, value));
    else if (key == "snr_grid_db")
    {
        cfg.snr_grid_db.clear();
        for (const std::string& item : split_list(value))
            cfg.snr_grid_db.push_back(parse_double(key, item));
    }
    else if (key == "trials")
        cfg.trials = static_cast<int>(parse_int(key, value));
    else if (key == "architectures")
        cfg.architectures = split_list(value);
    else if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "min_sep_rule")
        cfg.min_sep_rule = value;
    else if (key == "se_on_estimate")
        cfg.se_on_estimate = parse_bool(key, value);
    else if (key == "solver.tau_scale")
        cfg.solver.tau_scale = parse_double(key, value);
    else if (key == "solver.penalty")
        cfg.solver.penalty = parse_double(key, value);
    else if (key == "solver.max_iters")
        cfg.solver.max_iters = static_cast<int>(parse_int(key, value));
    else if (key == "solver.tol_primal")
        cfg.solver.tol_primal = parse_double(key, value);
    else if (key == "solver.tol_dual")
        cfg.solver.tol_dual = parse_double(key, value);
    else if (key == "solver.adapt_penalty")
        cfg.solver.adapt_penalty = parse_bool(key, value);
    else if (key == "solver.tau_floor_rel")
        cfg.solver.tau_floor_rel = parse_double(key, value);
    else if (key == "passive.n0")
        cfg.passive.n0 = static_cast<int>(parse_int(key, value));
    else if (key == "passive.m0")
        cfg.passive.m0 = static_cast<int>(parse_int(key, value));
    else if (key == "passive.t_blocks")
        cfg.passive.t_blocks = static_cast<int>(parse_int(key, value));
    else if (key == "passive.n_rf_ms")
        cfg.passive.n_rf_ms = static_cast<int>(parse_int(key, value));
    else if (key == "passive.stage1_tau_scale")
        cfg.passive.stage1_tau_scale = parse_double(key, value);
    else if (key == "passive.stage1_max_iters")
        cfg.passive.stage1_max_iters = static_cast<int>(parse_int(key, value));
    else if (key == "passive.stage1_tol")
        cfg.passive.stage1_tol = parse_double(key, value);
    else
    {
        // per-setup keys: setupN.field
        for (int i = 1; i <= 5; i++)
        {
            const std::string prefix = "setup" + std::to_string(i) + ".";
            if (key.rfind(prefix, 0) != 0)
                continue;
            HybridSetup& s = cfg.hybrid_setups["setup" + std::to_string(i)];
            const std::string field = key.substr(prefix.size());
            if (field == "n_beams")
                s.n_beams = static_cast<int>(parse_int(key, value));
            else if (field == "n_active")
                s.n_active = static_cast<int>(parse_int(key, value));
            else if (field == "n_rf")
                s.n_rf = static_cast<int>(parse_int(key, value));
            else if (field == "combiner_mode")
                s.combiner_mode = parse_mode(key, value);
            else if (field == "refresh_combiners")
                s.refresh_combiners = parse_bool(key, value);
            else
                throw ConfigError("config: unknown key '" + key + "'");
            return;
        }
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

} // namespace

ExperimentConfig::ExperimentConfig()
{
    hybrid_setups["setup1"] = {20, 12, 12, CombinerMode::direct, false};
    hybrid_setups["setup2"] = {20, 16, 16, CombinerMode::direct, false};
    hybrid_setups["setup3"] = {20, 32, 32, CombinerMode::direct, false};
    hybrid_setups["setup4"] = {10, 12, 6, CombinerMode::analog_random_phase, false};
    hybrid_setups["setup5"] = {10, 16, 8, CombinerMode::analog_random_phase, false};
}

const std::vector<std::string>& known_arch_labels()
{
    static const std::vector<std::string> labels = {
        "passive", "setup1", "setup2", "setup3", "setup4", "setup5", "full_active"};
    return labels;
}

ExperimentConfig parse_config_text(const std::string& text)
{
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line))
    {
        lineno++;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " has an empty key");
        apply_key(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string dump_config(const ExperimentConfig& cfg)
{
    std::ostringstream out;
    out << "n_bs = " << cfg.n_bs << "\n";
    out << "n_ris = " << cfg.n_ris << "\n";
    out << "n_ms = " << cfg.n_ms << "\n";
    out << "paths = " << cfg.paths << "\n";
    out << "snr_grid_db = ";
    for (std::size_t i = 0; i < cfg.snr_grid_db.size(); i++)
        out << (i ? ", " : "") << fmt(cfg.snr_grid_db[i]);
    out << "\n";
    out << "trials = " << cfg.trials << "\n";
    out << "architectures = ";
    for (std::size_t i = 0; i < cfg.architectures.size(); i++)
        out << (i ? ", " : "") << cfg.architectures[i];
    out << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "min_sep_rule = " << cfg.min_sep_rule << "\n";
    out << "se_on_estimate = " << (cfg.se_on_estimate ? "true" : "false") << "\n";
    out << "solver.tau_scale = " << fmt(cfg.solver.tau_scale) << "\n";
    out << "solver.penalty = " << fmt(cfg.solver.penalty) << "\n";
    out << "solver.max_iters = " << cfg.solver.max_iters << "\n";
    out << "solver.tol_primal = " << fmt(cfg.solver.tol_primal) << "\n";
    out << "solver.tol_dual = " << fmt(cfg.solver.tol_dual) << "\n";
    out << "solver.adapt_penalty = " << (cfg.solver.adapt_penalty ? "true" : "false") << "\n";
    out << "solver.tau_floor_rel = " << fmt(cfg.solver.tau_floor_rel) << "\n";
    out << "passive.n0 = " << cfg.passive.n0 << "\n";
    out << "passive.m0 = " << cfg.passive.m0 << "\n";
    out << "passive.t_blocks = " << cfg.passive.t_blocks << "\n";
    out << "passive.n_rf_ms = " << cfg.passive.n_rf_ms << "\n";
    out << "passive.stage1_tau_scale = " << fmt(cfg.passive.stage1_tau_scale) << "\n";
    out << "passive.stage1_max_iters = " << cfg.passive.stage1_max_iters << "\n";
    out << "passive.stage1_tol = " << fmt(cfg.passive.stage1_tol) << "\n";
    for (int i = 1; i <= 5; i++)
    {
        const std::string label = "setup" + std::to_string(i);
        const auto it = cfg.hybrid_setups.find(label);
        if (it == cfg.hybrid_setups.end())
            continue;
        const HybridSetup& s = it->second;
        out << label << ".n_beams = " << s.n_beams << "\n";
        out << label << ".n_active = " << s.n_active << "\n";
        out << label << ".n_rf = " << s.n_rf << "\n";
        out << label << ".combiner_mode = "
            << (s.combiner_mode == CombinerMode::direct ? "direct" : "analog_random_phase")
            << "\n";
        out << label << ".refresh_combiners = " << (s.refresh_combiners ? "true" : "false")
            << "\n";
    }
    return out.str();
}

void validate_config(const ExperimentConfig& cfg)
{
    if (cfg.n_bs < 2 || cfg.n_ris < 2 || cfg.n_ms < 2)
        throw ConfigError("config: array sizes must be at least 2");
    if (cfg.paths < 1)
        throw ConfigError("config: paths must be positive");
    if (4 * cfg.paths > cfg.n_bs || 4 * cfg.paths > cfg.n_ris || 4 * cfg.paths > cfg.n_ms)
        throw ConfigError("config: the 4/N separation rule cannot host this many paths");
    if (cfg.trials < 1)
        throw ConfigError("config: trials must be positive");
    if (cfg.snr_grid_db.empty())
        throw ConfigError("config: snr_grid_db must not be empty");
    if (cfg.architectures.empty())
        throw ConfigError("config: architectures must not be empty");
    const auto& known = known_arch_labels();
    for (const std::string& arch : cfg.architectures)
    {
        if (std::find(known.begin(), known.end(), arch) == known.end())
            throw ConfigError("config: unknown architecture '" + arch + "'");
        if (arch.rfind("setup", 0) == 0 && cfg.hybrid_setups.find(arch) == cfg.hybrid_setups.end())
            throw ConfigError("config: no setup record for '" + arch + "'");
    }
    for (const auto& [label, s] : cfg.hybrid_setups)
    {
        if (s.n_beams < 1)
            throw ConfigError("config: " + label + ".n_beams must be positive");
        if (s.n_active < 1 || s.n_active > cfg.n_ris)
            throw ConfigError("config: " + label + ".n_active must be in [1, n_ris]");
        if (s.n_rf < 1 || s.n_rf > s.n_active)
            throw ConfigError("config: " + label + ".n_rf must be in [1, n_active]");
        if ((s.combiner_mode == CombinerMode::direct) != (s.n_active == s.n_rf))
            throw ConfigError("config: " + label + " combiner_mode inconsistent with K vs N_RF");
    }
    const PassiveSetup& p = cfg.passive;
    if (p.n0 < 1 || p.m0 < 1 || p.n_rf_ms < 1)
        throw ConfigError("config: passive stage-1 sizes must be positive");
    if (p.m0 > cfg.n_ms)
        throw ConfigError("config: passive.m0 cannot exceed n_ms");
    if (p.n_rf_ms > cfg.n_ms)
        throw ConfigError("config: passive.n_rf_ms cannot exceed n_ms");
    const int q = cfg.paths * cfg.paths;
    if (p.t_blocks < 2 * q)
        throw ConfigError("config: passive.t_blocks must be at least 2 * paths^2");
    if (cfg.solver.max_iters < 1 || cfg.solver.penalty <= 0.0 || cfg.solver.tau_scale <= 0.0)
        throw ConfigError("config: solver options out of range");

    // fair-comparison budget: every configured arch trains for the same slot count
    const bool has_passive = std::find(cfg.architectures.begin(), cfg.architectures.end(),
                                       std::string("passive")) != cfg.architectures.end();
    int budget = -1;
    std::string budget_owner;
    for (const std::string& arch : cfg.architectures)
    {
        const auto it = cfg.hybrid_setups.find(arch);
        if (it == cfg.hybrid_setups.end())
            continue;
        const int t_h =
            metrics::overhead_hybrid(it->second.n_beams, it->second.n_active, it->second.n_rf);
        if (budget < 0)
        {
            budget = t_h;
            budget_owner = arch;
        }
        else if (t_h != budget)
            throw ConfigError("config: " + arch + " trains " + std::to_string(t_h) +
                              " slots but " + budget_owner + " trains " + std::to_string(budget));
    }
    if (has_passive && budget >= 0)
    {
        const int t_p = metrics::overhead_passive(p.n0, p.m0, p.t_blocks, cfg.paths, cfg.paths,
                                                  p.n_rf_ms);
        if (t_p != budget)
            throw ConfigError("config: passive trains " + std::to_string(t_p) +
                              " slots but the hybrid setups train " + std::to_string(budget));
    }
}

} // namespace risanm::harness
