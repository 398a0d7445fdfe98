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

#ifndef RISANM_CONFIG_HPP
#define RISANM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "risanm/types.hpp"

namespace risanm::harness
{

// Raised on malformed files, unknown keys, or invalid values.
struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig
{
    int n_bs = 16;
    int n_ris = 32;
    int n_ms = 16;
    int paths = 2;
    std::vector<double> snr_grid_db = {-10.0, -5.0, 0.0, 5.0};
    int trials = 2000;
    std::vector<std::string> architectures = {"passive",  "setup1", "setup2", "setup3",
                                              "setup4",   "setup5", "full_active"};
    std::map<std::string, HybridSetup> hybrid_setups; // keyed by arch label
    PassiveSetup passive;
    SolverOptions solver;
    std::uint64_t seed = 20260814ULL;
    std::string min_sep_rule = "4/N";
    bool se_on_estimate = false; // evaluate SE on the reconstructed channel

    ExperimentConfig();
};

// Labels of the five hybrid training geometries plus the fully active bound.
const std::vector<std::string>& known_arch_labels();

// Parses the flat key = value text format; unknown keys are errors.
ExperimentConfig parse_config_text(const std::string& text);

// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

// Serialization round trip, mainly for `validate` and tests.
std::string dump_config(const ExperimentConfig& cfg);

// Semantic checks beyond parsing (dimensions, separations, budgets).
void validate_config(const ExperimentConfig& cfg);

} // namespace risanm::harness

#endif
