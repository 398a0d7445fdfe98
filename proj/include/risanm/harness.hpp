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

#ifndef RISANM_HARNESS_HPP
#define RISANM_HARNESS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "risanm/config.hpp"
#include "risanm/types.hpp"

namespace risanm::harness
{

struct ResultRow
{
    std::string arch;
    double snr_db = 0.0;
    std::string metric;
    double mean = 0.0;
    double std_err = 0.0;
    int trials = 0;   // contributing (non-failed) trials
    int failures = 0; // failed trials at this cell
};

struct ResultTable
{
    std::vector<ResultRow> rows;
};

// Canonical per-trial metric column order.
const std::vector<std::string>& metric_names();

// Reads RIS_ANM_THREADS; 0 or unset means hardware concurrency.
int worker_count();

// One Monte Carlo trial: fresh channels, the architecture's estimator, phase
// and beamformer design, metric evaluation. Channels are drawn from a stream
// keyed by the trial index alone so that architectures and SNR points see the
// same channel instances (common random numbers); all estimation-side
// randomness comes from the (seed, arch, snr, trial) stream. Estimator
// failures are caught and flagged, not thrown.
TrialRecord run_trial(const ExperimentConfig& cfg, const std::string& arch, double snr_db,
                      int trial_index);

// All trials of one (arch, snr) cell, parallel over trials.
std::vector<TrialRecord> run_cell(const ExperimentConfig& cfg, const std::string& arch,
                                  double snr_db, int workers);

struct SweepResult
{
    ResultTable table;
    bool budget_exceeded = false; // failed fraction >= 1% at some SNR >= -5 dB
};

// Full architectures x SNR grid x trials sweep with a deterministic ordered
// reduction; `progress` (optional) receives one line per finished cell.
SweepResult run_sweep(const ExperimentConfig& cfg, std::ostream* progress = nullptr);

// CSV with header arch,snr_db,metric,mean,std_err,trials,failures; UTF-8, LF,
// round-trip exact floats.
std::string csv_text(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& path);
ResultTable read_csv(const std::string& path);

// One minimal self-contained SVG per metric (one polyline per architecture).
void write_svg_plots(const ResultTable& table, const std::string& out_dir);

// One-sided paired comparison: true when mean(a - b) > 0 at 95% confidence
// (normal approximation); non-finite pairs are skipped.
struct PairedComparison
{
    double t_stat = 0.0;
    int pairs = 0;
    bool significant = false;
};
PairedComparison paired_greater(const std::vector<double>& a, const std::vector<double>& b);

} // namespace risanm::harness

#endif
