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

#ifndef RISANM_PASSIVE_HPP
#define RISANM_PASSIVE_HPP

#include <utility>
#include <vector>

#include "risanm/rng.hpp"
#include "risanm/types.hpp"

namespace risanm::passive
{

struct Stage1Result
{
    std::vector<double> theta_br; // departure frequencies at the BS
    std::vector<double> phi_rm;   // arrival frequencies at the MS
    PhaseControl omega0;          // fixed phase control used during stage 1
    Mat gmix;                     // refitted L x L mixing matrix of H_eff
    int uses = 0;                 // pilot slots consumed
    int iterations = 0;
    double primal_residual = 0.0;
};

// Stage 1: N0 downlink beams through a fixed random phase control; the MS
// re-draws its M0-column combiner every beam so the N0 x M0 functionals probe
// the effective channel from many directions. Matrix ANM on the slotted
// observations, ROOTMUSIC on the two Toeplitz blocks.
Stage1Result stage1(const Mat& h_br, const Mat& h_rm, const PassiveSetup& setup, int paths,
                    double sigma, Rng& rng, const SolverOptions& opts);

struct Stage2Result
{
    CascadeParams cascade;
    int uses = 0;
    int iterations = 0;
    double primal_residual = 0.0;
};

// Stage 2: T blocks with beams matched to the stage-1 estimates and a fresh
// random phase control per block, each block compressed to one scalar; vector
// ANM + ROOTMUSIC gives the angle differences, least squares the product
// gains. The known beam-mismatch scaling is divided out of the gains.
Stage2Result stage2(const Mat& h_br, const Mat& h_rm, const Stage1Result& s1,
                    const PassiveSetup& setup, int paths, double sigma, Rng& rng,
                    const SolverOptions& opts);

struct PassiveEstimate
{
    std::vector<double> theta_br;
    std::vector<double> phi_rm;
    CascadeParams cascade;
    int uses = 0;
};

// Runs both stages. Only cascade quantities are identifiable on top of the
// two frequency sets; per-link gains and RIS-side angles are not.
PassiveEstimate estimate_passive(const Mat& h_br, const Mat& h_rm, const PassiveSetup& setup,
                                 int paths, double sigma, Rng& rng, const SolverOptions& opts);

} // namespace risanm::passive

#endif
