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

#include "risanm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "risanm/channel.hpp"
#include "risanm/control.hpp"
#include "risanm/hybrid.hpp"
#include "risanm/metrics.hpp"
#include "risanm/passive.hpp"
#include "risanm/rng.hpp"

namespace risanm::harness
{

namespace
{

constexpr std::uint64_t kChannelTag = 0x6368616eULL; // distinct stream domain

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double metric_value(const TrialRecord& r, const std::string& name)
{
    if (name == "mse_phi_rm")
        return r.mse_phi_rm;
    if (name == "mse_theta_br")
        return r.mse_theta_br;
    if (name == "mse_delta")
        return r.mse_delta;
    if (name == "mse_rho")
        return r.mse_rho;
    if (name == "ris_gain")
        return r.ris_gain;
    if (name == "se_bits")
        return r.se_bits;
    if (name == "overhead")
        return static_cast<double>(r.overhead);
    throw std::logic_error("metric_value: unknown metric " + name);
}

int arch_id(const std::string& arch)
{
    const auto& labels = known_arch_labels();
    const auto it = std::find(labels.begin(), labels.end(), arch);
    if (it == labels.end())
        throw ConfigError("run_trial: unknown architecture '" + arch + "'");
    return static_cast<int>(it - labels.begin());
}

HybridSetup resolve_setup(const ExperimentConfig& cfg, const std::string& arch)
{
    if (arch == "full_active")
    {
        HybridSetup s;
        const auto it = cfg.hybrid_setups.find("setup3");
        s.n_beams = it != cfg.hybrid_setups.end() ? it->second.n_beams : 20;
        s.n_active = cfg.n_ris;
        s.n_rf = cfg.n_ris;
        s.combiner_mode = CombinerMode::direct;
        return s;
    }
    const auto it = cfg.hybrid_setups.find(arch);
    if (it == cfg.hybrid_setups.end())
        throw ConfigError("run_trial: no setup record for '" + arch + "'");
    return it->second;
}

void parallel_for(int n_tasks, int workers, const std::function<void(int)>& fn)
{
    workers = std::max(1, std::min(workers, n_tasks));
    if (workers == 1)
    {
        for (int i = 0; i < n_tasks; i++)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; w++)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
                fn(i);
        });
    for (auto& t : pool)
        t.join();
}

} // namespace

const std::vector<std::string>& metric_names()
{
    static const std::vector<std::string> names = {"mse_phi_rm", "mse_theta_br", "mse_delta",
                                                   "mse_rho",    "ris_gain",     "se_bits",
                                                   "overhead"};
    return names;
}

int worker_count()
{
    const char* env = std::getenv("RIS_ANM_THREADS");
    int n = 0;
    if (env != nullptr && *env != '\0')
    {
        try
        {
            std::size_t pos = 0;
            n = std::stoi(env, &pos);
            if (pos != std::string(env).size() || n < 0)
                throw std::invalid_argument("negative");
        }
        catch (const std::exception&)
        {
            throw ConfigError("RIS_ANM_THREADS must be a non-negative integer");
        }
    }
    if (n == 0)
        n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

TrialRecord run_trial(const ExperimentConfig& cfg, const std::string& arch, double snr_db,
                      int trial_index)
{
    const int aid = arch_id(arch);
    const std::uint64_t snr_key = std::bit_cast<std::uint64_t>(snr_db);
    Rng chan_rng(derive_stream(cfg.seed, kChannelTag, 0, static_cast<std::uint64_t>(trial_index)));
    Rng rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(aid), snr_key,
                          static_cast<std::uint64_t>(trial_index)));

    const double sigma = std::isinf(snr_db) && snr_db > 0.0
                             ? 0.0
                             : std::pow(10.0, -snr_db / 20.0);
    const int paths = cfg.paths;

    const channel::Link br =
        channel::synth_link(cfg.n_ris, cfg.n_bs, paths, 4.0 / cfg.n_ris, 4.0 / cfg.n_bs, chan_rng);
    const channel::Link rm =
        channel::synth_link(cfg.n_ms, cfg.n_ris, paths, 4.0 / cfg.n_ms, 4.0 / cfg.n_ris, chan_rng);

    TrialRecord rec;
    rec.arch_label = arch;
    try
    {
        std::vector<double> phi_rm_hat, theta_br_hat;
        CascadeParams cas_hat;
        PhaseControl omega;
        Mat h_hat;
        if (arch == "passive")
        {
            const passive::PassiveEstimate est = passive::estimate_passive(
                br.matrix, rm.matrix, cfg.passive, paths, sigma, rng, cfg.solver);
            phi_rm_hat = est.phi_rm;
            theta_br_hat = est.theta_br;
            cas_hat = est.cascade;
            omega = control::design_phase(cas_hat, cfg.n_ris);
            h_hat = control::reconstruct_channel(est.phi_rm, est.theta_br, cas_hat, omega,
                                                 cfg.n_ms, cfg.n_bs);
            rec.overhead = metrics::overhead_passive(cfg.passive.n0, cfg.passive.m0,
                                                     cfg.passive.t_blocks, paths, paths,
                                                     cfg.passive.n_rf_ms);
        }
        else
        {
            const HybridSetup setup = resolve_setup(cfg, arch);
            const hybrid::HybridEstimate est = hybrid::estimate_hybrid(
                br.matrix, rm.matrix, setup, paths, sigma, rng, cfg.solver);
            phi_rm_hat = est.link_rm.arrival_freqs;
            theta_br_hat = est.link_br.departure_freqs;
            cas_hat = est.cascade;
            omega = control::design_phase(cas_hat, cfg.n_ris);
            h_hat = control::reconstruct_channel(est.link_rm, est.link_br, omega, cfg.n_ms,
                                                 cfg.n_bs, cfg.n_ris);
            rec.overhead = metrics::overhead_hybrid(setup.n_beams, setup.n_active, setup.n_rf);
        }

        const std::vector<double> delta_true =
            channel::angle_differences(br.params.arrival_freqs, rm.params.departure_freqs);
        const std::vector<cxd> rho_true =
            channel::product_gains(rm.params.gains, br.params.gains);

        rec.mse_phi_rm = metrics::mse_freqs(rm.params.arrival_freqs, phi_rm_hat, paths);
        rec.mse_theta_br = metrics::mse_freqs(br.params.departure_freqs, theta_br_hat, paths);
        rec.mse_delta =
            metrics::mse_freqs(delta_true, cas_hat.delta_freqs, static_cast<int>(delta_true.size()));
        rec.mse_rho = metrics::mse_gains(delta_true, rho_true, cas_hat.delta_freqs,
                                         cas_hat.product_gains);
        rec.ris_gain =
            metrics::ris_gain(rm.params.departure_freqs, br.params.arrival_freqs, omega);

        const auto [f, w] = control::design_beamformers(h_hat);
        const double sigma2 = sigma * sigma;
        const Mat h_eval = cfg.se_on_estimate ? h_hat : channel::cascade(rm.matrix, omega, br.matrix);
        rec.se_bits = metrics::se_bound(h_eval, f, w, sigma2);
    }
    catch (const std::exception&)
    {
        rec.failed = true;
    }
    return rec;
}

std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg, const std::string& arch,
                                  double snr_db, int workers)
{
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, workers, [&](int i) {
        records[static_cast<std::size_t>(i)] = run_trial(cfg, arch, snr_db, i);
    });
    return records;
}

SweepResult run_sweep(const ExperimentConfig& cfg, std::ostream* progress)
{
    const int n_arch = static_cast<int>(cfg.architectures.size());
    const int n_snr = static_cast<int>(cfg.snr_grid_db.size());
    const int trials = cfg.trials;
    const int cells = n_arch * n_snr;
    const int total = cells * trials;

    std::vector<std::vector<TrialRecord>> records(static_cast<std::size_t>(cells));
    for (auto& cell : records)
        cell.resize(static_cast<std::size_t>(trials));
    std::vector<std::atomic<int>> done(static_cast<std::size_t>(cells));
    std::mutex log_mutex;

    parallel_for(total, worker_count(), [&](int task) {
        const int cell = task / trials;
        const int trial = task % trials;
        const int a = cell / n_snr;
        const int s = cell % n_snr;
        const std::string& arch = cfg.architectures[static_cast<std::size_t>(a)];
        const double snr = cfg.snr_grid_db[static_cast<std::size_t>(s)];
        records[static_cast<std::size_t>(cell)][static_cast<std::size_t>(trial)] =
            run_trial(cfg, arch, snr, trial);
        if (done[static_cast<std::size_t>(cell)].fetch_add(1) + 1 == trials && progress != nullptr)
        {
            int fails = 0;
            for (const TrialRecord& r : records[static_cast<std::size_t>(cell)])
                fails += r.failed ? 1 : 0;
            const std::lock_guard<std::mutex> lock(log_mutex);
            *progress << arch << " @ " << fmt(snr) << " dB: " << trials << " trials, " << fails
                      << " failed\n"
                      << std::flush;
        }
    });

    SweepResult out;
    for (int a = 0; a < n_arch; a++)
        for (int s = 0; s < n_snr; s++)
        {
            const auto& cell =
                records[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_snr) +
                        static_cast<std::size_t>(s)];
            int fails = 0;
            for (const TrialRecord& r : cell)
                fails += r.failed ? 1 : 0;
            const int good = trials - fails;
            const double snr = cfg.snr_grid_db[static_cast<std::size_t>(s)];
            if (snr >= -5.0 && trials > 0 &&
                static_cast<double>(fails) / static_cast<double>(trials) >= 0.01)
                out.budget_exceeded = true;
            for (const std::string& metric : metric_names())
            {
                ResultRow row;
                row.arch = cfg.architectures[static_cast<std::size_t>(a)];
                row.snr_db = snr;
                row.metric = metric;
                row.trials = good;
                row.failures = fails;
                double mean = std::numeric_limits<double>::quiet_NaN();
                double se = std::numeric_limits<double>::quiet_NaN();
                if (good > 0)
                {
                    double acc = 0.0;
                    for (const TrialRecord& r : cell)
                        if (!r.failed)
                            acc += metric_value(r, metric);
                    mean = acc / good;
                    double var = 0.0;
                    if (good > 1)
                    {
                        for (const TrialRecord& r : cell)
                            if (!r.failed)
                            {
                                const double d = metric_value(r, metric) - mean;
                                var += d * d;
                            }
                        var /= good - 1;
                    }
                    se = std::sqrt(var / good);
                }
                row.mean = mean;
                row.std_err = se;
                out.table.rows.push_back(row);
            }
        }
    return out;
}

std::string csv_text(const ResultTable& table)
{
    std::ostringstream out;
    out << "arch,snr_db,metric,mean,std_err,trials,failures\n";
    for (const ResultRow& r : table.rows)
        out << r.arch << ',' << fmt(r.snr_db) << ',' << r.metric << ',' << fmt(r.mean) << ','
            << fmt(r.std_err) << ',' << r.trials << ',' << r.failures << '\n';
    return out.str();
}

void write_csv(const ResultTable& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::ios_base::failure("cannot open '" + path + "' for writing");
    out << csv_text(table);
    out.flush();
    if (!out)
        throw std::ios_base::failure("write failed for '" + path + "'");
}

ResultTable read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "arch,snr_db,metric,mean,std_err,trials,failures")
        throw std::ios_base::failure("bad CSV header in '" + path + "'");
    ResultTable table;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 7)
            throw std::ios_base::failure("bad CSV row in '" + path + "': " + line);
        ResultRow r;
        r.arch = fields[0];
        r.snr_db = std::strtod(fields[1].c_str(), nullptr);
        r.metric = fields[2];
        r.mean = std::strtod(fields[3].c_str(), nullptr);
        r.std_err = std::strtod(fields[4].c_str(), nullptr);
        r.trials = std::stoi(fields[5]);
        r.failures = std::stoi(fields[6]);
        table.rows.push_back(r);
    }
    return table;
}

namespace
{

const char* arch_color(const std::string& arch)
{
    if (arch == "passive")
        return "#1f77b4";
    if (arch == "setup1")
        return "#ff7f0e";
    if (arch == "setup2")
        return "#2ca02c";
    if (arch == "setup3")
        return "#d62728";
    if (arch == "setup4")
        return "#9467bd";
    if (arch == "setup5")
        return "#8c564b";
    return "#17becf"; // full_active and anything else
}

} // namespace

void write_svg_plots(const ResultTable& table, const std::string& out_dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (const std::string& metric : metric_names())
    {
        const bool log_y = metric.rfind("mse_", 0) == 0;

        // collect per-arch series in row order
        std::vector<std::string> archs;
        std::vector<std::vector<std::pair<double, double>>> series;
        double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
        bool any = false;
        for (const ResultRow& r : table.rows)
        {
            if (r.metric != metric || !std::isfinite(r.mean))
                continue;
            double y = r.mean;
            if (log_y)
            {
                if (y <= 0.0)
                    continue;
                y = std::log10(y);
            }
            std::size_t idx = 0;
            for (; idx < archs.size(); idx++)
                if (archs[idx] == r.arch)
                    break;
            if (idx == archs.size())
            {
                archs.push_back(r.arch);
                series.emplace_back();
            }
            series[idx].emplace_back(r.snr_db, y);
            if (!any)
            {
                xmin = xmax = r.snr_db;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, r.snr_db);
            xmax = std::max(xmax, r.snr_db);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        if (!any)
            continue;
        if (xmax - xmin < 1e-12)
            xmax = xmin + 1.0;
        if (ymax - ymin < 1e-12)
            ymax = ymin + 1.0;

        const double w = 640, h = 420, ml = 70, mr = 160, mt = 40, mb = 50;
        const auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
        const auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
        svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
        svg << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
            << metric << (log_y ? " (log10)" : "") << " vs SNR (dB)</text>\n";
        svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
            << h - mb << "\" stroke=\"black\"/>\n";
        svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << ml << "\" y=\"" << h - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(xmin)
            << "</text>\n";
        svg << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(xmax)
            << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << h - mb
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(ymin)
            << "</text>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(ymax)
            << "</text>\n";
        for (std::size_t i = 0; i < archs.size(); i++)
        {
            const char* color = arch_color(archs[i]);
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : series[i])
                svg << sx(x) << ',' << sy(y) << ' ';
            svg << "\"/>\n";
            for (const auto& [x, y] : series[i])
                svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"2.5\" fill=\""
                    << color << "\"/>\n";
            const double ly = mt + 16.0 * static_cast<double>(i);
            svg << "<line x1=\"" << w - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << w - mr + 34
                << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << w - mr + 40 << "\" y=\"" << ly + 4
                << "\" font-family=\"sans-serif\" font-size=\"12\">" << archs[i] << "</text>\n";
        }
        svg << "</svg>\n";

        const fs::path path = fs::path(out_dir) / (metric + ".svg");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
        out << svg.str();
        if (!out)
            throw std::ios_base::failure("write failed for '" + path.string() + "'");
    }
}

PairedComparison paired_greater(const std::vector<double>& a, const std::vector<double>& b)
{
    PairedComparison out;
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<double> d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; i++)
        if (std::isfinite(a[i]) && std::isfinite(b[i]))
            d.push_back(a[i] - b[i]);
    out.pairs = static_cast<int>(d.size());
    if (d.size() < 2)
        return out;
    double mean = 0.0;
    for (double x : d)
        mean += x;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double x : d)
        var += (x - mean) * (x - mean);
    var /= static_cast<double>(d.size()) - 1.0;
    const double se = std::sqrt(var / static_cast<double>(d.size()));
    out.t_stat = se > 0.0 ? mean / se : (mean > 0.0 ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity());
    out.significant = out.t_stat > 1.645;
    return out;
}

} // namespace risanm::harness
