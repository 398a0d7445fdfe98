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

#ifndef RISANM_TYPES_HPP
#define RISANM_TYPES_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace risanm
{

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Parameters of one point-to-point link: per-path arrival (receive side) and
// departure (transmit side) spatial frequencies in [-0.5, 0.5) plus complex
// path gains.
struct LinkParams
{
    std::vector<double> arrival_freqs;
    std::vector<double> departure_freqs;
    std::vector<cxd> gains;

    std::size_t paths() const { return gains.size(); }
};

// Cascade (through-RIS) quantities: angle-difference frequencies and product
// path gains, both of length L_br * L_rm. Entry i = p * L_br + l pairs RIS-MS
// path p with BS-RIS path l (l fastest, matching the Kronecker gain order).
struct CascadeParams
{
    std::vector<double> delta_freqs;
    std::vector<cxd> product_gains;

    std::size_t size() const { return product_gains.size(); }
};

// Unit-modulus RIS phase-control vector (length N_R).
struct PhaseControl
{
    Vec omega;
};

// Hermitian Toeplitz matrix represented by its first column; first_col[0]
// must be real.
struct ToeplitzGenerator
{
    Vec first_col;

    Eigen::Index size() const { return first_col.size(); }
};

struct SolverOptions
{
    double tau_scale = 1.0;     // constant c in tau = c * sigma * sqrt(n1 n2 log(n1 n2))
    double penalty = 1.0;       // initial ADMM step rho
    int max_iters = 3000;
    double tol_primal = 1e-5;
    double tol_dual = 1e-5;
    bool adapt_penalty = true;  // residual-balancing rho updates
    double tau_floor_rel = 1e-3; // tau >= tau_floor_rel * ||observations||
};

struct AnmSolution
{
    Mat estimate;
    ToeplitzGenerator toeplitz_left;
    ToeplitzGenerator toeplitz_right; // empty for the SMV problem
    int iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
};

enum class CombinerMode
{
    direct,             // K == N_RF, observations read straight off the chains
    analog_random_phase // N_RF < K, stacked unit-modulus combiner slices
};

// Hybrid-RIS training geometry: N beams, K active elements, N_RF chains.
struct HybridSetup
{
    int n_beams = 0;
    int n_active = 0;
    int n_rf = 0;
    CombinerMode combiner_mode = CombinerMode::direct;
    bool refresh_combiners = false; // redraw analog slices per beam (sensitivity knob)
};

// Passive-RIS training geometry: stage-1 N0 beams with M0 combiner columns,
// stage-2 T phase-control blocks, N_RF_M receive chains at the MS.
struct PassiveSetup
{
    int n0 = 16;
    int m0 = 16;
    int t_blocks = 12;
    int n_rf_ms = 16;
    double stage1_tau_scale = 0.5; // stage-1 observations are compressed
    int stage1_max_iters = 20000;  // stage 1 needs deeper ADMM than the links
    double stage1_tol = 1e-7;
};

struct TrialRecord
{
    double mse_phi_rm = 0.0;
    double mse_theta_br = 0.0;
    double mse_delta = 0.0;
    double mse_rho = 0.0;
    double ris_gain = 0.0;
    double se_bits = 0.0;
    int overhead = 0;
    std::string arch_label;
    bool failed = false;
};

} // namespace risanm

#endif
