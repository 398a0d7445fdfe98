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

#include "risanm/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "risanm/anm.hpp"
#include "risanm/channel.hpp"
#include "risanm/spectral.hpp"

namespace risanm::hybrid
{

Mat random_pilots(int n, int cols, Rng& rng)
{
    Mat x(n, cols);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index j = 0; j < cols; j++)
        for (Eigen::Index i = 0; i < n; i++)
            x(i, j) = rng.unit_phase() * scale;
    return x;
}

MeasurementPlan build_plan(const HybridSetup& setup, int n_ris, Rng& rng)
{
    const int k = setup.n_active;
    const int n_rf = setup.n_rf;
    if (k > n_ris)
        throw std::invalid_argument("build_plan: more active elements than RIS elements");
    if (n_rf < 1 || n_rf > k)
        throw std::invalid_argument("build_plan: need 1 <= N_RF <= K");
    if ((setup.combiner_mode == CombinerMode::direct) != (k == n_rf))
        throw std::invalid_argument("build_plan: combiner mode inconsistent with K vs N_RF");

    MeasurementPlan plan;
    plan.selection = Mat::Zero(k, n_ris);
    const std::vector<int> rows = rng.sample_without_replacement(n_ris, k);
    for (int i = 0; i < k; i++)
        plan.selection(i, rows[static_cast<std::size_t>(i)]) = cxd(1.0, 0.0);

    if (setup.combiner_mode == CombinerMode::direct)
    {
        plan.effective = plan.selection;
        return plan;
    }

    const int slices = (k + n_rf - 1) / n_rf;
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    plan.effective = Mat(static_cast<Eigen::Index>(slices) * n_rf, n_ris);
    for (int s = 0; s < slices; s++)
    {
        Mat mc(n_rf, k);
        for (Eigen::Index i = 0; i < n_rf; i++)
            for (Eigen::Index j = 0; j < k; j++)
                mc(i, j) = rng.unit_phase() * scale;
        plan.combiners.push_back(mc);
        plan.effective.middleRows(static_cast<Eigen::Index>(s) * n_rf, n_rf) =
            mc * plan.selection;
    }
    return plan;
}

namespace
{

Mat noise(int rows, int cols, double sigma, Rng& rng)
{
    Mat z(rows, cols);
    for (Eigen::Index j = 0; j < cols; j++)
        for (Eigen::Index i = 0; i < rows; i++)
            z(i, j) = sigma * rng.cnormal();
    return z;
}

Mat observe(const Mat& h, MeasurementPlan& plan, const Mat& x, double sigma, Rng& rng)
{
    if (h.cols() != x.rows() || plan.selection.cols() != h.rows())
        throw std::invalid_argument("train: dimension mismatch");
    const auto n_ris = h.rows();
    const auto n = x.cols();
    if (plan.combiners.empty())
    {
        plan.uses += static_cast<int>(n);
        return plan.effective * (h * x + noise(static_cast<int>(n_ris), static_cast<int>(n), sigma, rng));
    }
    const auto n_rf = plan.combiners.front().rows();
    Mat y(plan.effective.rows(), n);
    for (std::size_t s = 0; s < plan.combiners.size(); s++)
    {
        const Mat slice = plan.combiners[s] * plan.selection;
        y.middleRows(static_cast<Eigen::Index>(s) * n_rf, n_rf) =
            slice * (h * x + noise(static_cast<int>(n_ris), static_cast<int>(n), sigma, rng));
        plan.uses += static_cast<int>(n);
    }
    return y;
}

// The two Toeplitz blocks fix the frequency sets but not which column
// frequency belongs to which row frequency; the physical pairing is the one
// whose rank-one atoms explain the data best. atom_cols(r, c) holds the
// vectorized measurement of the atom with row frequency r and column
// frequency c.
LinkParams fit_pairing(const std::vector<double>& row_freqs, const std::vector<double>& col_freqs,
                       const Vec& yv, const std::vector<std::vector<Vec>>& atom_cols)
{
    const int paths = static_cast<int>(row_freqs.size());
    std::vector<int> perm(static_cast<std::size_t>(paths)), best_perm;
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<cxd> best_gains;
    double best_res = std::numeric_limits<double>::infinity();
    do
    {
        Mat op(yv.size(), paths);
        for (int l = 0; l < paths; l++)
            op.col(l) =
                atom_cols[static_cast<std::size_t>(l)][static_cast<std::size_t>(perm[static_cast<std::size_t>(l)])];
        std::vector<cxd> g;
        try
        {
            g = spectral::ls_gains(yv, op);
        }
        catch (const std::runtime_error&)
        {
            continue; // degenerate pairing, e.g. coinciding frequencies
        }
        Vec gv(paths);
        for (int l = 0; l < paths; l++)
            gv(l) = g[static_cast<std::size_t>(l)];
        const double res = (op * gv - yv).norm();
        if (res < best_res)
        {
            best_res = res;
            best_perm = perm;
            best_gains = g;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best_gains.empty())
        throw std::runtime_error("estimate_link: gain fit failed for every pairing");

    LinkParams out;
    out.arrival_freqs = row_freqs;
    out.departure_freqs.resize(static_cast<std::size_t>(paths));
    for (int l = 0; l < paths; l++)
        out.departure_freqs[static_cast<std::size_t>(l)] =
            col_freqs[static_cast<std::size_t>(best_perm[static_cast<std::size_t>(l)])];
    out.gains = best_gains;
    return out;
}

// Per-beam training block used when the analog combiner re-randomizes every
// beam: each beam then sees its own measurement operator.
struct SlottedBlock
{
    std::vector<Vec> ys;
    std::vector<Mat> ops;
    std::vector<Vec> xs;
};

SlottedBlock train_slotted(const Mat& h, MeasurementPlan& plan, const HybridSetup& setup,
                           const Mat& x, double sigma, Rng& rng)
{
    if (h.cols() != x.rows() || plan.selection.cols() != h.rows())
        throw std::invalid_argument("train: dimension mismatch");
    const int k = setup.n_active;
    const int n_rf = setup.n_rf;
    const int slices = (k + n_rf - 1) / n_rf;
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    SlottedBlock blk;
    for (Eigen::Index j = 0; j < x.cols(); j++)
    {
        Mat op(static_cast<Eigen::Index>(slices) * n_rf, h.rows());
        Vec y(static_cast<Eigen::Index>(slices) * n_rf);
        const Vec tx = h * x.col(j);
        for (int s = 0; s < slices; s++)
        {
            Mat mc(n_rf, k);
            for (Eigen::Index a = 0; a < n_rf; a++)
                for (Eigen::Index b = 0; b < k; b++)
                    mc(a, b) = rng.unit_phase() * scale;
            const Mat slice = mc * plan.selection;
            op.middleRows(static_cast<Eigen::Index>(s) * n_rf, n_rf) = slice;
            y.segment(static_cast<Eigen::Index>(s) * n_rf, n_rf) =
                slice * (tx + noise(static_cast<int>(h.rows()), 1, sigma, rng).col(0));
            plan.uses += 1;
        }
        blk.ys.push_back(y);
        blk.ops.push_back(op);
        blk.xs.push_back(x.col(j));
    }
    return blk;
}

LinkParams estimate_link_slotted(const SlottedBlock& blk, int n1, int n2, int paths,
                                 double sigma, const SolverOptions& opts)
{
    double sq = 0.0;
    Eigen::Index total = 0;
    for (const Vec& y : blk.ys)
    {
        sq += y.squaredNorm();
        total += y.size();
    }
    double tau = anm::tau_rule(sigma, n1, n2, opts);
    tau = std::max(tau, opts.tau_floor_rel * std::sqrt(sq));

    const AnmSolution sol = anm::matrix_anm_slotted(blk.ys, blk.ops, blk.xs, n1, n2, tau, opts);
    const std::vector<double> row_freqs = spectral::rootmusic(sol.toeplitz_left, paths);
    const std::vector<double> col_freqs = spectral::rootmusic(sol.toeplitz_right, paths);

    Vec yv(total);
    std::vector<std::vector<Vec>> atom_cols(
        static_cast<std::size_t>(paths),
        std::vector<Vec>(static_cast<std::size_t>(paths), Vec(total)));
    Eigen::Index at = 0;
    for (std::size_t s = 0; s < blk.ys.size(); s++)
    {
        const Eigen::Index rows = blk.ys[s].size();
        yv.segment(at, rows) = blk.ys[s];
        for (int r = 0; r < paths; r++)
        {
            const Vec lv = blk.ops[s] * channel::steering_vector(n1, row_freqs[static_cast<std::size_t>(r)]);
            for (int c = 0; c < paths; c++)
            {
                const cxd rc = channel::steering_vector(n2, col_freqs[static_cast<std::size_t>(c)])
                                   .dot(blk.xs[s]);
                atom_cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].segment(at, rows) =
                    lv * rc;
            }
        }
        at += rows;
    }
    return fit_pairing(row_freqs, col_freqs, yv, atom_cols);
}

} // namespace

Mat train_downlink(const Mat& h_br, MeasurementPlan& plan, const Mat& x, double sigma, Rng& rng)
{
    return observe(h_br, plan, x, sigma, rng);
}

Mat train_uplink(const Mat& h_rm, MeasurementPlan& plan, const Mat& x_ms, double sigma, Rng& rng)
{
    return observe(h_rm.transpose(), plan, x_ms, sigma, rng);
}

LinkParams estimate_link(const Mat& y, const MeasurementPlan& plan, const Mat& x, int paths,
                         double sigma, const SolverOptions& opts)
{
    const int n1 = static_cast<int>(plan.effective.cols());
    const int n2 = static_cast<int>(x.rows());
    double tau = anm::tau_rule(sigma, n1, n2, opts);
    tau = std::max(tau, opts.tau_floor_rel * y.norm());

    const AnmSolution sol = anm::matrix_anm(y, plan.effective, x, n1, n2, tau, opts);
    const std::vector<double> row_freqs = spectral::rootmusic(sol.toeplitz_left, paths);
    const std::vector<double> col_freqs = spectral::rootmusic(sol.toeplitz_right, paths);

    const Eigen::Map<const Vec> yv(y.data(), y.size());
    std::vector<std::vector<Vec>> atom_cols(static_cast<std::size_t>(paths),
                                            std::vector<Vec>(static_cast<std::size_t>(paths)));
    for (int r = 0; r < paths; r++)
    {
        const Vec lv = plan.effective * channel::steering_vector(n1, row_freqs[static_cast<std::size_t>(r)]);
        for (int c = 0; c < paths; c++)
        {
            const Eigen::RowVectorXcd rv =
                channel::steering_vector(n2, col_freqs[static_cast<std::size_t>(c)]).adjoint() * x;
            const Mat atom = lv * rv;
            atom_cols[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                Eigen::Map<const Vec>(atom.data(), atom.size());
        }
    }
    return fit_pairing(row_freqs, col_freqs, Vec(yv), atom_cols);
}

HybridEstimate estimate_hybrid(const Mat& h_br, const Mat& h_rm, const HybridSetup& setup,
                               int paths, double sigma, Rng& rng, const SolverOptions& opts)
{
    const int n_ris = static_cast<int>(h_br.rows());
    const int n_bs = static_cast<int>(h_br.cols());
    const int n_ms = static_cast<int>(h_rm.rows());
    MeasurementPlan plan = build_plan(setup, n_ris, rng);
    const bool slotted =
        setup.combiner_mode == CombinerMode::analog_random_phase && setup.refresh_combiners;

    HybridEstimate est;

    const Mat x_dl = random_pilots(n_bs, setup.n_beams, rng);
    if (slotted)
    {
        const SlottedBlock dl = train_slotted(h_br, plan, setup, x_dl, sigma, rng);
        est.link_br = estimate_link_slotted(dl, n_ris, n_bs, paths, sigma, opts);
    }
    else
    {
        const Mat y_dl = train_downlink(h_br, plan, x_dl, sigma, rng);
        est.link_br = estimate_link(y_dl, plan, x_dl, paths, sigma, opts);
    }

    const Mat x_ul = random_pilots(n_ms, setup.n_beams, rng);

    // conj(Y) observes H_rm^H = A_R(theta_RM) diag(conj g) A_M(phi_RM)^H, so
    // the conjugated problem carries H_rm's frequencies with their own signs
    LinkParams up;
    if (slotted)
    {
        SlottedBlock ul = train_slotted(h_rm.transpose(), plan, setup, x_ul, sigma, rng);
        for (std::size_t s = 0; s < ul.ys.size(); s++)
        {
            ul.ys[s] = ul.ys[s].conjugate().eval();
            ul.ops[s] = ul.ops[s].conjugate().eval();
            ul.xs[s] = ul.xs[s].conjugate().eval();
        }
        up = estimate_link_slotted(ul, n_ris, n_ms, paths, sigma, opts);
    }
    else
    {
        const Mat y_ul = train_uplink(h_rm, plan, x_ul, sigma, rng);
        MeasurementPlan conj_plan = plan;
        conj_plan.effective = plan.effective.conjugate();
        up = estimate_link(y_ul.conjugate(), conj_plan, x_ul.conjugate(), paths, sigma, opts);
    }
    est.link_rm.arrival_freqs = up.departure_freqs; // phi_RM at the MS
    est.link_rm.departure_freqs = up.arrival_freqs; // theta_RM at the RIS
    est.link_rm.gains.resize(up.gains.size());
    for (std::size_t i = 0; i < up.gains.size(); i++)
        est.link_rm.gains[i] = std::conj(up.gains[i]);

    est.cascade.delta_freqs =
        channel::angle_differences(est.link_br.arrival_freqs, est.link_rm.departure_freqs);
    est.cascade.product_gains = channel::product_gains(est.link_rm.gains, est.link_br.gains);
    return est;
}

} // namespace risanm::hybrid
