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

#include "risanm/passive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "risanm/anm.hpp"
#include "risanm/channel.hpp"
#include "risanm/hybrid.hpp"
#include "risanm/spectral.hpp"

namespace risanm::passive
{

namespace
{

Vec random_phase_vec(int n, Rng& rng)
{
    Vec v(n);
    for (Eigen::Index i = 0; i < n; i++)
        v(i) = rng.unit_phase();
    return v;
}

Vec cnoise_vec(int n, double sigma, Rng& rng)
{
    Vec z(n);
    for (Eigen::Index i = 0; i < n; i++)
        z(i) = sigma * rng.cnormal();
    return z;
}

} // namespace

Stage1Result stage1(const Mat& h_br, const Mat& h_rm, const PassiveSetup& setup, int paths,
                    double sigma, Rng& rng, const SolverOptions& opts)
{
    const int n_ris = static_cast<int>(h_br.rows());
    const int n_bs = static_cast<int>(h_br.cols());
    const int n_ms = static_cast<int>(h_rm.rows());
    if (h_rm.cols() != n_ris)
        throw std::invalid_argument("stage1: channel dimensions inconsistent");

    Stage1Result out;
    out.omega0.omega = random_phase_vec(n_ris, rng);
    const Mat h_eff = channel::cascade(h_rm, out.omega0, h_br);

    std::vector<Vec> ys;
    std::vector<Mat> left_ops;
    std::vector<Vec> pilots;
    double obs_norm2 = 0.0;
    for (int s = 0; s < setup.n0; s++)
    {
        const Vec x = hybrid::random_pilots(n_bs, 1, rng).col(0);
        const Mat w = hybrid::random_pilots(n_ms, setup.m0, rng);
        const Vec y = w.adjoint() * (h_eff * x + cnoise_vec(n_ms, sigma, rng));
        obs_norm2 += y.squaredNorm();
        ys.push_back(y);
        left_ops.push_back(w.adjoint());
        pilots.push_back(x);
    }

    SolverOptions o1 = opts;
    o1.tau_scale = opts.tau_scale * setup.stage1_tau_scale;
    o1.max_iters = std::max(opts.max_iters, setup.stage1_max_iters);
    o1.tol_primal = std::min(opts.tol_primal, setup.stage1_tol);
    o1.tol_dual = std::min(opts.tol_dual, setup.stage1_tol);
    double tau = anm::tau_rule(sigma, n_ms, n_bs, o1);
    tau = std::max(tau, opts.tau_floor_rel * std::sqrt(obs_norm2));

    const AnmSolution sol = anm::matrix_anm_slotted(ys, left_ops, pilots, n_ms, n_bs, tau, o1);

    out.phi_rm = spectral::rootmusic(sol.toeplitz_left, paths);
    out.theta_br = spectral::rootmusic(sol.toeplitz_right, paths);

    // Refit the low-dimensional mixing matrix on the estimated angle pair:
    // H_eff = A_M(phi) Gmix A_B(theta)^H. Row p of Gmix ties the MS-side path
    // p to the cascade atoms, which stage 2 uses to place its atoms.
    const Mat am = channel::steering_matrix(n_ms, out.phi_rm);
    const Mat ab = channel::steering_matrix(n_bs, out.theta_br);
    const int q = paths * paths;
    Mat op(static_cast<Eigen::Index>(setup.n0) * setup.m0, q);
    Vec yall(static_cast<Eigen::Index>(setup.n0) * setup.m0);
    for (int s = 0; s < setup.n0; s++)
    {
        const Mat wa = left_ops[static_cast<std::size_t>(s)] * am; // M0 x L
        const Vec bx = ab.adjoint() * pilots[static_cast<std::size_t>(s)]; // L
        for (int m = 0; m < setup.m0; m++)
        {
            const Eigen::Index r = static_cast<Eigen::Index>(s) * setup.m0 + m;
            yall(r) = ys[static_cast<std::size_t>(s)](m);
            for (int p = 0; p < paths; p++)
                for (int l = 0; l < paths; l++)
                    op(r, p * paths + l) = wa(m, p) * bx(l);
        }
    }
    const std::vector<cxd> gvec = spectral::ls_gains(yall, op);
    out.gmix = Mat(paths, paths);
    for (int p = 0; p < paths; p++)
        for (int l = 0; l < paths; l++)
            out.gmix(p, l) = gvec[static_cast<std::size_t>(p * paths + l)];

    out.uses = setup.n0 * ((setup.m0 + setup.n_rf_ms - 1) / setup.n_rf_ms);
    out.iterations = sol.iterations;
    out.primal_residual = sol.primal_residual;
    return out;
}

namespace
{

// Places the q = L*L estimated atoms onto the (p, l) grid of stage-1 path
// indices. Each candidate placement predicts the stage-1 mixing matrix as
// Gmix(p, l) = rho_pl * omega0^T alpha(delta_pl); the placement that matches
// the refitted Gmix best is the physical one.
std::vector<int> place_atoms(const std::vector<double>& delta, const std::vector<cxd>& raw,
                             const Vec& kappa, const Vec& lambda, const Stage1Result& s1,
                             int paths)
{
    const int q = static_cast<int>(delta.size());
    std::vector<int> ident(static_cast<std::size_t>(q));
    std::iota(ident.begin(), ident.end(), 0);
    if (q != 4 || paths != 2)
        return ident; // enumeration implemented for the paper's L = 2 case

    const int n_ris = static_cast<int>(s1.omega0.omega.size());
    Vec resp(q);
    for (int i = 0; i < q; i++)
        resp(i) = (s1.omega0.omega.transpose() *
                   channel::steering_vector(n_ris, delta[static_cast<std::size_t>(i)]))(0);

    std::vector<int> perm = ident, best = ident;
    double best_score = std::numeric_limits<double>::infinity();
    do
    {
        // perm[cell] = atom sitting in grid cell (p = cell / L, l = cell % L)
        double score = 0.0;
        for (int cell = 0; cell < q; cell++)
        {
            const int p = cell / paths;
            const int l = cell % paths;
            const int i = perm[static_cast<std::size_t>(cell)];
            const cxd rho = raw[static_cast<std::size_t>(i)] / (kappa(p) * lambda(l));
            score += std::norm(rho * resp(i) - s1.gmix(p, l));
        }
        if (score < best_score)
        {
            best_score = score;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

Stage2Result stage2(const Mat& h_br, const Mat& h_rm, const Stage1Result& s1,
                    const PassiveSetup& setup, int paths, double sigma, Rng& rng,
                    const SolverOptions& opts)
{
    const int n_ris = static_cast<int>(h_br.rows());
    const int n_bs = static_cast<int>(h_br.cols());
    const int n_ms = static_cast<int>(h_rm.rows());
    const int q = paths * paths;
    const int t_blocks = setup.t_blocks;
    if (t_blocks < 2 * q)
        throw std::invalid_argument("stage2: fewer blocks than twice the atom count");

    // beams matched to stage-1 estimates, fixed over all blocks
    const Mat w_t = channel::steering_matrix(n_ms, s1.phi_rm);
    const Mat x_t = channel::steering_matrix(n_bs, s1.theta_br) / std::sqrt(n_bs);
    const double norm_scale = static_cast<double>(n_ms) * std::sqrt(static_cast<double>(n_bs));

    Vec y(t_blocks);
    Mat phi(t_blocks, n_ris);
    for (int t = 0; t < t_blocks; t++)
    {
        const PhaseControl om{random_phase_vec(n_ris, rng)};
        Mat z(n_ms, static_cast<Eigen::Index>(paths));
        for (Eigen::Index j = 0; j < paths; j++)
            z.col(j) = cnoise_vec(n_ms, sigma, rng);
        const Mat block = w_t.adjoint() * (channel::cascade(h_rm, om, h_br) * x_t + z);
        y(t) = block.sum() / norm_scale;
        phi.row(t) = om.omega.transpose();
    }

    // each scalar sees noise of std sigma * L / sqrt(N_M N_B)
    const double sigma_eff =
        sigma * paths / std::sqrt(static_cast<double>(n_ms) * static_cast<double>(n_bs));
    double tau = anm::tau_rule(sigma_eff, n_ris, 1, opts);
    tau = std::max(tau, opts.tau_floor_rel * y.norm());

    const AnmSolution sol = anm::vector_anm(y, phi, tau, opts);
    Stage2Result out;
    out.iterations = sol.iterations;
    out.primal_residual = sol.primal_residual;
    out.uses = t_blocks * paths * ((paths + setup.n_rf_ms - 1) / setup.n_rf_ms);

    const std::vector<double> delta = spectral::rootmusic(sol.toeplitz_left, q);
    const Mat op = phi * channel::steering_matrix(n_ris, delta);
    const std::vector<cxd> raw = spectral::ls_gains(y, op);

    // Every term of the compressed block sum lands on a true atom, so the raw
    // amplitude of atom (p, l) carries an exact kappa_p * lambda_l factor of
    // beam alignment, computable from the stage-1 estimates.
    const Mat am = channel::steering_matrix(n_ms, s1.phi_rm);
    const Mat ab = channel::steering_matrix(n_bs, s1.theta_br);
    const Vec kappa = (am.adjoint() * am).colwise().sum().transpose() / static_cast<double>(n_ms);
    const Vec lambda = (ab.adjoint() * ab).rowwise().sum() / static_cast<double>(n_bs);

    const std::vector<int> cell_atom = place_atoms(delta, raw, kappa, lambda, s1, paths);
    out.cascade.delta_freqs.resize(static_cast<std::size_t>(q));
    out.cascade.product_gains.resize(static_cast<std::size_t>(q));
    for (int cell = 0; cell < q; cell++)
    {
        const int p = cell / paths;
        const int l = cell % paths;
        const int i = cell_atom[static_cast<std::size_t>(cell)];
        out.cascade.delta_freqs[static_cast<std::size_t>(cell)] =
            delta[static_cast<std::size_t>(i)];
        out.cascade.product_gains[static_cast<std::size_t>(cell)] =
            raw[static_cast<std::size_t>(i)] / (kappa(p) * lambda(l));
    }
    return out;
}

PassiveEstimate estimate_passive(const Mat& h_br, const Mat& h_rm, const PassiveSetup& setup,
                                 int paths, double sigma, Rng& rng, const SolverOptions& opts)
{
    PassiveEstimate out;
    const Stage1Result s1 = stage1(h_br, h_rm, setup, paths, sigma, rng, opts);
    const Stage2Result s2 = stage2(h_br, h_rm, s1, setup, paths, sigma, rng, opts);
    out.theta_br = s1.theta_br;
    out.phi_rm = s1.phi_rm;
    out.cascade = s2.cascade;
    out.uses = s1.uses + s2.uses;
    return out;
}

} // namespace risanm::passive
