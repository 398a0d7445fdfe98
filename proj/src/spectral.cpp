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

#include "risanm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "risanm/anm.hpp"
#include "risanm/channel.hpp"

namespace risanm::spectral
{

namespace
{

std::vector<cxd> companion_roots(const Vec& coef)
{
    // coef[k] multiplies z^k; strip negligible leading terms first
    const double top = coef.cwiseAbs().maxCoeff();
    Eigen::Index deg = coef.size() - 1;
    while (deg > 0 && std::abs(coef(deg)) < 1e-14 * top)
        deg--;
    if (deg < 1)
        throw std::runtime_error("rootmusic: degenerate noise polynomial");

    Mat comp = Mat::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; i++)
        comp(i, i - 1) = cxd(1.0, 0.0);
    for (Eigen::Index i = 0; i < deg; i++)
        comp(i, deg - 1) = -coef(i) / coef(deg);
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rootmusic: companion eigendecomposition failed");
    std::vector<cxd> roots(static_cast<std::size_t>(deg));
    for (Eigen::Index i = 0; i < deg; i++)
        roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return roots;
}

double root_freq(const cxd& z)
{
    return channel::wrap_freq(std::arg(z) / (2.0 * std::numbers::pi));
}

// Greedy pick with a wrap-aware dedupe window; mirror twins of one frequency
// straddle the unit circle, so near-duplicates must collapse to one pick.
void pick_roots(const std::vector<cxd>& cands, int want, std::vector<double>& sel)
{
    for (const cxd& z : cands)
    {
        if (static_cast<int>(sel.size()) >= want)
            return;
        const double f = root_freq(z);
        bool fresh = true;
        for (double fs : sel)
            if (std::abs(channel::wrap_freq(f - fs)) <= 1e-4)
            {
                fresh = false;
                break;
            }
        if (fresh)
            sel.push_back(f);
    }
}

} // namespace

std::vector<double> rootmusic(const ToeplitzGenerator& t, int paths)
{
    const auto n = t.first_col.size();
    if (paths < 1 || paths >= n)
        throw std::invalid_argument("rootmusic: need 1 <= paths < generator length");
    if (t.first_col.cwiseAbs().maxCoeff() <= 0.0)
        throw std::invalid_argument("rootmusic: all-zero generator");

    const Mat tm = anm::toeplitz_materialize(t);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (tm + tm.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rootmusic: eigendecomposition failed");
    // noise projector I - Es Es^H from the `paths` largest eigenpairs
    const Mat sig = es.eigenvectors().rightCols(paths);
    const Mat c = Mat::Identity(n, n) - sig * sig.adjoint();

    // polynomial sum_d trace(C, d) z^{d + n - 1}; Hermitian C gives conjugate
    // symmetric coefficients, enforced exactly below
    Vec coef = Vec::Zero(2 * n - 1);
    for (Eigen::Index d = 0; d < n; d++)
    {
        cxd acc(0.0, 0.0);
        for (Eigen::Index i = 0; i + d < n; i++)
            acc += c(i, i + d);
        coef(n - 1 + d) = acc;
        coef(n - 1 - d) = std::conj(acc);
    }

    std::vector<cxd> roots = companion_roots(coef);

    // inside the closed unit disk, closest to the circle first
    std::vector<cxd> inside;
    for (const cxd& z : roots)
        if (std::abs(z) <= 1.0)
            inside.push_back(z);
    auto by_modulus_desc = [](const cxd& a, const cxd& b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb)
            return ma > mb;
        return std::arg(a) < std::arg(b);
    };
    std::sort(inside.begin(), inside.end(), by_modulus_desc);

    std::vector<double> sel;
    sel.reserve(static_cast<std::size_t>(paths));
    pick_roots(inside, paths, sel);

    if (static_cast<int>(sel.size()) < paths)
    {
        // not enough interior candidates; admit outside roots by distance to
        // the circle
        std::vector<cxd> all = roots;
        std::sort(all.begin(), all.end(), [](const cxd& a, const cxd& b) {
            const double da = std::abs(std::abs(a) - 1.0), db = std::abs(std::abs(b) - 1.0);
            if (da != db)
                return da < db;
            return std::arg(a) < std::arg(b);
        });
        pick_roots(all, paths, sel);
    }
    if (static_cast<int>(sel.size()) < paths)
        throw std::runtime_error("rootmusic: fewer distinct roots than requested paths");

    std::sort(sel.begin(), sel.end());
    return sel;
}

std::vector<cxd> ls_gains(const Vec& y, const Mat& op)
{
    if (op.rows() != y.size())
        throw std::invalid_argument("ls_gains: operator rows must match observation length");
    Eigen::JacobiSVD<Mat> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e10)
        throw std::runtime_error("ls_gains: operator ill-conditioned");
    const Vec g = svd.solve(y);
    return {g.data(), g.data() + g.size()};
}

std::vector<int> match_permutation(const std::vector<double>& truth,
                                   const std::vector<double>& est)
{
    if (truth.size() != est.size())
        throw std::invalid_argument("match_permutation: length mismatch");
    const auto n = truth.size();
    std::vector<int> perm(n), best(n);
    std::iota(perm.begin(), perm.end(), 0);
    best = perm;
    double best_err = std::numeric_limits<double>::infinity();
    do
    {
        double err = 0.0;
        for (std::size_t i = 0; i < n; i++)
        {
            const double d = channel::wrap_freq(truth[i] - est[static_cast<std::size_t>(perm[i])]);
            err += d * d;
        }
        if (err < best_err)
        {
            best_err = err;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace risanm::spectral
