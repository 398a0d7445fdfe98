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

#ifndef RISANM_HYBRID_HPP
#define RISANM_HYBRID_HPP

#include <vector>

#include "risanm/rng.hpp"
#include "risanm/types.hpp"

namespace risanm::hybrid
{

struct MeasurementPlan
{
    Mat selection;              // K x N_R row-selection matrix
    std::vector<Mat> combiners; // N_RF x K slices, analog mode only
    Mat effective;              // stacked measurement operator acting on RIS signals
    int uses = 0;               // pilot slots consumed by training so far
};

// i.i.d. unit-modulus phases scaled so each column has unit norm.
Mat random_pilots(int n, int cols, Rng& rng);

// Draws the active-element selection (uniform without replacement) and, in
// analog mode, ceil(K/N_RF) fixed random-phase combiner slices.
MeasurementPlan build_plan(const HybridSetup& setup, int n_ris, Rng& rng);

// Observation effective * (H_br X + Z), Z iid CN(0, sigma^2); analog slices
// see independent noise.
Mat train_downlink(const Mat& h_br, MeasurementPlan& plan, const Mat& x, double sigma, Rng& rng);

// Uplink observes the reciprocal channel H_rm^T.
Mat train_uplink(const Mat& h_rm, MeasurementPlan& plan, const Mat& x_ms, double sigma, Rng& rng);

// Matrix ANM + ROOTMUSIC on both Toeplitz blocks + least-squares gains; the
// row/column frequency pairing is resolved by the smallest LS residual over
// all pairings.
LinkParams estimate_link(const Mat& y, const MeasurementPlan& plan, const Mat& x, int paths,
                         double sigma, const SolverOptions& opts);

struct HybridEstimate
{
    LinkParams link_br; // arrival = phi_BR (RIS side), departure = theta_BR (BS side)
    LinkParams link_rm; // arrival = phi_RM (MS side), departure = theta_RM (RIS side)
    CascadeParams cascade;
};

// Full two-way training and estimation; cascade parameters per the Kronecker
// composition of the two links. `paths` is the known per-link path count.
HybridEstimate estimate_hybrid(const Mat& h_br, const Mat& h_rm, const HybridSetup& setup,
                               int paths, double sigma, Rng& rng, const SolverOptions& opts);

} // namespace risanm::hybrid

#endif
