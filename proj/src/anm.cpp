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

#include "risanm/anm.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace risanm::anm
{

Mat toeplitz_materialize(const ToeplitzGenerator& g)
{
    const auto n = g.first_col.size();
    if (n < 1)
        throw std::invalid_argument("toeplitz_materialize: empty generator");
    if (std::abs(g.first_col(0).imag()) > 1e-9 * std::max(1.0, std::abs(g.first_col(0))))
        throw std::invalid_argument("toeplitz_materialize: leading entry must be real");

    Mat t(n, n);
    for (Eigen::Index d = 0; d < n; d++)
    {
        const cxd val = (d == 0) ? cxd(g.first_col(0).real(), 0.0) : g.first_col(d);
        for (Eigen::Index a = d; a < n; a++)
        {
            t(a, a - d) = val;
            t(a - d, a) = std::conj(val);
        }
    }
    return t;
}

ToeplitzGenerator toeplitz_adjoint(const Mat& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("toeplitz_adjoint: matrix must be square");
    const auto n = m.rows();
    ToeplitzGenerator g;
    g.first_col = Vec(n);
    for (Eigen::Index d = 0; d < n; d++)
    {
        // mean over the d-th subdiagonal of (M + M^H)/2
        cxd acc(0.0, 0.0);
        for (Eigen::Index i = 0; i + d < n; i++)
            acc += 0.5 * (m(i + d, i) + std::conj(m(i, i + d)));
        g.first_col(d) = acc / static_cast<double>(n - d);
    }
    g.first_col(0) = cxd(g.first_col(0).real(), 0.0);
    return g;
}

Mat psd_project(const Mat& h)
{
    if (h.rows() != h.cols())
        throw std::invalid_argument("psd_project: matrix must be square");
    const Mat sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(sym);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("psd_project: eigendecomposition failed");
    const RVec w = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double tau_rule(double sigma, int n1, int n2, const SolverOptions& opts)
{
    const double nn = static_cast<double>(n1) * static_cast<double>(n2);
    if (nn < 2.0)
        throw std::invalid_argument("tau_rule: n1*n2 must be at least 2");
    return opts.tau_scale * sigma * std::sqrt(nn * std::log(nn));
}

namespace
{

void check_finite(const Mat& m, const char* who)
{
    if (!m.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite input");
}

// Writes the Hermitian Toeplitz block for generator g into dst.
void fill_toeplitz(const Vec& g, Eigen::Ref<Mat> dst)
{
    const auto n = g.size();
    for (Eigen::Index d = 0; d < n; d++)
    {
        const cxd val = (d == 0) ? cxd(g(0).real(), 0.0) : g(d);
        for (Eigen::Index a = d; a < n; a++)
        {
            dst(a, a - d) = val;
            dst(a - d, a) = std::conj(val);
        }
    }
}

// Subdiagonal means of the Hermitian part, written into g.
void adjoint_into(const Eigen::Ref<const Mat>& m, Vec& g)
{
    const auto n = m.rows();
    for (Eigen::Index d = 0; d < n; d++)
    {
        cxd acc(0.0, 0.0);
        for (Eigen::Index i = 0; i + d < n; i++)
            acc += 0.5 * (m(i + d, i) + std::conj(m(i, i + d)));
        g(d) = acc / static_cast<double>(n - d);
    }
    g(0) = cxd(g(0).real(), 0.0);
}

// Shared ADMM loop over the (n1+n2) block SDP. The fidelity term enters only
// through h_update, which must solve
//   min_H  fidelity(H) + rho ||H - wbar||_F^2
// for the current penalty.
AnmSolution admm_block(int n1, int n2, double tau, const SolverOptions& opts,
                       const std::function<void(double, const Mat&, Mat&)>& h_update)
{
    const int m = n1 + n2;
    Mat z = Mat::Zero(m, m);
    Mat zp = Mat::Zero(m, m);
    Mat lam = Mat::Zero(m, m);
    Mat b = Mat::Zero(m, m);
    Mat h = Mat::Zero(n1, n2);
    Mat wbar(n1, n2);
    Vec u(n1), v(n2);
    double rho = opts.penalty;

    AnmSolution sol;
    Eigen::SelfAdjointEigenSolver<Mat> es;
    int it = 0;
    double pr = 0.0, dr = 0.0;
    for (it = 1; it <= opts.max_iters; it++)
    {
        const Mat w = z - lam;
        adjoint_into(w.topLeftCorner(n1, n1), u);
        u(0) -= tau / (2.0 * rho * n1);
        adjoint_into(w.bottomRightCorner(n2, n2), v);
        v(0) -= tau / (2.0 * rho * n2);
        wbar = 0.5 * (w.topRightCorner(n1, n2) + w.bottomLeftCorner(n2, n1).adjoint());
        h_update(rho, wbar, h);

        fill_toeplitz(u, b.topLeftCorner(n1, n1));
        fill_toeplitz(v, b.bottomRightCorner(n2, n2));
        b.topRightCorner(n1, n2) = h;
        b.bottomLeftCorner(n2, n1) = h.adjoint();

        zp.swap(z);
        es.compute(0.5 * (b + lam + (b + lam).adjoint()));
        if (es.info() != Eigen::Success)
            throw std::runtime_error("matrix_anm: PSD projection failed");
        const RVec ev = es.eigenvalues().cwiseMax(0.0);
        z.noalias() = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        lam += b - z;

        const double prn = (b - z).norm();
        const double drn = rho * (z - zp).norm();
        pr = prn / std::max({1.0, b.norm(), z.norm()});
        dr = drn / std::max(1.0, rho * lam.norm());
        if (pr < opts.tol_primal && dr < opts.tol_dual)
        {
            sol.converged = true;
            break;
        }
        // Residual balancing keeps the two residuals within a decade of each
        // other; without it the fixed-penalty iteration stalls on this SDP.
        if (opts.adapt_penalty && it % 50 == 0)
        {
            if (prn > 10.0 * drn)
            {
                rho *= 2.0;
                lam *= 0.5;
            }
            else if (drn > 10.0 * prn)
            {
                rho *= 0.5;
                lam *= 2.0;
            }
        }
    }

    sol.estimate = h;
    sol.toeplitz_left.first_col = u;
    sol.toeplitz_right.first_col = v;
    sol.iterations = std::min(it, opts.max_iters);
    sol.primal_residual = pr;
    sol.dual_residual = dr;
    return sol;
}

} // namespace

AnmSolution matrix_anm(const Mat& y, const Mat& meff, const Mat& x, int n1, int n2, double tau,
                       const SolverOptions& opts)
{
    if (meff.cols() != n1 || x.rows() != n2)
        throw std::invalid_argument("matrix_anm: operator dimensions inconsistent");
    if (y.rows() != meff.rows() || y.cols() != x.cols())
        throw std::invalid_argument("matrix_anm: observation dimensions inconsistent");
    if (!(tau > 0.0))
        throw std::invalid_argument("matrix_anm: tau must be positive");
    check_finite(y, "matrix_anm");
    check_finite(meff, "matrix_anm");
    check_finite(x, "matrix_anm");

    // Normal operators on both sides; the H-update is diagonal in their
    // eigenbases: P H Q + 2 rho H = RHS.
    Eigen::SelfAdjointEigenSolver<Mat> esp(Mat(meff.adjoint() * meff));
    Eigen::SelfAdjointEigenSolver<Mat> esq(Mat(x * x.adjoint()));
    if (esp.info() != Eigen::Success || esq.info() != Eigen::Success)
        throw std::runtime_error("matrix_anm: normal-operator eigendecomposition failed");
    const Mat ep = esp.eigenvectors();
    const Mat eq = esq.eigenvectors();
    const RVec dp = esp.eigenvalues();
    const RVec dq = esq.eigenvalues();
    const Mat rhs0 = meff.adjoint() * y * x.adjoint();

    auto h_update = [&](double rho, const Mat& wbar, Mat& h) {
        Mat core = ep.adjoint() * (rhs0 + 2.0 * rho * wbar) * eq;
        for (Eigen::Index i = 0; i < core.rows(); i++)
            for (Eigen::Index j = 0; j < core.cols(); j++)
                core(i, j) /= dp(i) * dq(j) + 2.0 * rho;
        h.noalias() = ep * core * eq.adjoint();
    };

    return admm_block(n1, n2, tau, opts, h_update);
}

AnmSolution matrix_anm_slotted(const std::vector<Vec>& ys, const std::vector<Mat>& left_ops,
                               const std::vector<Vec>& pilots, int n1, int n2, double tau,
                               const SolverOptions& opts)
{
    const std::size_t slots = ys.size();
    if (slots == 0 || left_ops.size() != slots || pilots.size() != slots)
        throw std::invalid_argument("matrix_anm_slotted: slot lists inconsistent");
    if (!(tau > 0.0))
        throw std::invalid_argument("matrix_anm_slotted: tau must be positive");

    // Normal matrix of the stacked per-slot operators acting on vec(H),
    // G = sum_s (conj(x_s) x_s^T) (x) (M_s^H M_s), column-major vec.
    const Eigen::Index nv = static_cast<Eigen::Index>(n1) * n2;
    Mat gmat = Mat::Zero(nv, nv);
    Mat rhs0 = Mat::Zero(n1, n2);
    for (std::size_t s = 0; s < slots; s++)
    {
        const Mat& ms = left_ops[s];
        const Vec& xs = pilots[s];
        if (ms.cols() != n1 || xs.size() != n2 || ys[s].size() != ms.rows())
            throw std::invalid_argument("matrix_anm_slotted: slot dimensions inconsistent");
        check_finite(ms, "matrix_anm_slotted");
        const Mat mm = ms.adjoint() * ms;
        for (Eigen::Index j2 = 0; j2 < n2; j2++)
            for (Eigen::Index j1 = 0; j1 < n2; j1++)
                gmat.block(j2 * n1, j1 * n1, n1, n1) += std::conj(xs(j2)) * xs(j1) * mm;
        rhs0 += ms.adjoint() * ys[s] * xs.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Mat> esg(gmat);
    if (esg.info() != Eigen::Success)
        throw std::runtime_error("matrix_anm_slotted: normal-matrix eigendecomposition failed");
    const Mat eg = esg.eigenvectors();
    const RVec dg = esg.eigenvalues();

    auto h_update = [&, n1, n2](double rho, const Mat& wbar, Mat& h) {
        Mat rhs = rhs0 + 2.0 * rho * wbar;
        const Eigen::Map<const Vec> rvec(rhs.data(), nv);
        Vec core = eg.adjoint() * rvec;
        for (Eigen::Index i = 0; i < nv; i++)
            core(i) /= dg(i) + 2.0 * rho;
        const Vec hv = eg * core;
        h = Eigen::Map<const Mat>(hv.data(), n1, n2);
    };

    return admm_block(n1, n2, tau, opts, h_update);
}

AnmSolution vector_anm(const Vec& y, const Mat& phi, double tau, const SolverOptions& opts)
{
    const auto t = phi.rows();
    const auto n = phi.cols();
    if (y.size() != t)
        throw std::invalid_argument("vector_anm: observation length mismatch");
    if (!(tau > 0.0))
        throw std::invalid_argument("vector_anm: tau must be positive");
    check_finite(phi, "vector_anm");
    if (!y.allFinite())
        throw std::invalid_argument("vector_anm: non-finite input");

    Eigen::SelfAdjointEigenSolver<Mat> esp(Mat(phi.adjoint() * phi));
    if (esp.info() != Eigen::Success)
        throw std::runtime_error("vector_anm: normal-matrix eigendecomposition failed");
    const Mat low = esp.eigenvectors();
    const RVec c = esp.eigenvalues();
    const Vec rhs0 = phi.adjoint() * y;

    const auto m = n + 1;
    Mat z = Mat::Zero(m, m);
    Mat zp = Mat::Zero(m, m);
    Mat lam = Mat::Zero(m, m);
    Mat b = Mat::Zero(m, m);
    Vec u(n), h(n);
    double rho = opts.penalty;

    AnmSolution sol;
    Eigen::SelfAdjointEigenSolver<Mat> es;
    int it = 0;
    double pr = 0.0, dr = 0.0;
    for (it = 1; it <= opts.max_iters; it++)
    {
        const Mat w = z - lam;
        adjoint_into(w.topLeftCorner(n, n), u);
        u(0) -= tau / (2.0 * rho * static_cast<double>(n));
        const double s = w(n, n).real() - tau / (2.0 * rho);
        const Vec wb = 0.5 * (w.topRightCorner(n, 1) + w.bottomLeftCorner(1, n).adjoint());
        Vec core = low.adjoint() * (rhs0 + 2.0 * rho * wb);
        for (Eigen::Index i = 0; i < n; i++)
            core(i) /= c(i) + 2.0 * rho;
        h.noalias() = low * core;

        fill_toeplitz(u, b.topLeftCorner(n, n));
        b.topRightCorner(n, 1) = h;
        b.bottomLeftCorner(1, n) = h.adjoint();
        b(n, n) = cxd(s, 0.0);

        zp.swap(z);
        es.compute(0.5 * (b + lam + (b + lam).adjoint()));
        if (es.info() != Eigen::Success)
            throw std::runtime_error("vector_anm: PSD projection failed");
        const RVec ev = es.eigenvalues().cwiseMax(0.0);
        z.noalias() = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        lam += b - z;

        const double prn = (b - z).norm();
        const double drn = rho * (z - zp).norm();
        pr = prn / std::max({1.0, b.norm(), z.norm()});
        dr = drn / std::max(1.0, rho * lam.norm());
        if (pr < opts.tol_primal && dr < opts.tol_dual)
        {
            sol.converged = true;
            break;
        }
        if (opts.adapt_penalty && it % 50 == 0)
        {
            if (prn > 10.0 * drn)
            {
                rho *= 2.0;
                lam *= 0.5;
            }
            else if (drn > 10.0 * prn)
            {
                rho *= 0.5;
                lam *= 2.0;
            }
        }
    }

    sol.estimate = h;
    sol.toeplitz_left.first_col = u;
    sol.iterations = std::min(it, opts.max_iters);
    sol.primal_residual = pr;
    sol.dual_residual = dr;
    return sol;
}

} // namespace risanm::anm
