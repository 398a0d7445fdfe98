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

#include "risanm/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risanm::channel
{

double wrap_freq(double f)
{
    double w = f - std::floor(f + 0.5);
    if (w >= 0.5) // guard against floor rounding at the boundary
        w -= 1.0;
    return w;
}

Vec steering_vector(int n, double f)
{
    Vec a(n);
    const double step = 2.0 * std::numbers::pi * f;
    for (int k = 0; k < n; k++)
        a(k) = cxd(std::cos(step * k), std::sin(step * k));
    return a;
}

Mat steering_matrix(int n, const std::vector<double>& freqs)
{
    Mat a(n, static_cast<Eigen::Index>(freqs.size()));
    for (std::size_t i = 0; i < freqs.size(); i++)
        a.col(static_cast<Eigen::Index>(i)) = steering_vector(n, freqs[i]);
    return a;
}

namespace
{

// Rejection sampling of frequencies with pairwise wrap-around separation.
std::vector<double> draw_freqs(int count, double min_sep, Rng& rng)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    int guard = 0;
    while (static_cast<int>(out.size()) < count)
    {
        if (++guard > 100000)
            throw std::runtime_error("synth_link: separation constraint unsatisfiable");
        const double f = wrap_freq(rng.uniform(-0.5, 0.5));
        bool ok = true;
        for (double g : out)
            if (std::abs(wrap_freq(f - g)) < min_sep)
            {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(f);
    }
    return out;
}

} // namespace

Mat link_matrix(int n_rx, int n_tx, const LinkParams& params)
{
    const Mat ar = steering_matrix(n_rx, params.arrival_freqs);
    const Mat at = steering_matrix(n_tx, params.departure_freqs);
    Vec g(static_cast<Eigen::Index>(params.gains.size()));
    for (std::size_t i = 0; i < params.gains.size(); i++)
        g(static_cast<Eigen::Index>(i)) = params.gains[i];
    return ar * g.asDiagonal() * at.adjoint();
}

Link synth_link(int n_rx, int n_tx, int paths, double min_sep_rx, double min_sep_tx, Rng& rng)
{
    if (paths < 1 || n_rx < 1 || n_tx < 1)
        throw std::invalid_argument("synth_link: dimensions must be positive");

    Link link;
    link.params.arrival_freqs = draw_freqs(paths, min_sep_rx, rng);
    link.params.departure_freqs = draw_freqs(paths, min_sep_tx, rng);
    link.params.gains.resize(static_cast<std::size_t>(paths));
    for (auto& g : link.params.gains)
        g = rng.cnormal();
    link.matrix = link_matrix(n_rx, n_tx, link.params);
    return link;
}

Mat cascade(const Mat& h_rm, const PhaseControl& omega, const Mat& h_br)
{
    if (h_rm.cols() != omega.omega.size() || omega.omega.size() != h_br.rows())
        throw std::invalid_argument("cascade: dimension mismatch");
    return h_rm * omega.omega.asDiagonal() * h_br;
}

std::vector<double> angle_differences(const std::vector<double>& phi_br,
                                      const std::vector<double>& theta_rm)
{
    std::vector<double> delta;
    delta.reserve(phi_br.size() * theta_rm.size());
    for (double t : theta_rm)
        for (double p : phi_br)
            delta.push_back(wrap_freq(p - t));
    return delta;
}

std::vector<cxd> product_gains(const std::vector<cxd>& rho_rm, const std::vector<cxd>& rho_br)
{
    std::vector<cxd> rho;
    rho.reserve(rho_rm.size() * rho_br.size());
    for (const cxd& a : rho_rm)
        for (const cxd& b : rho_br)
            rho.push_back(a * b);
    return rho;
}

Vec effective_g(const CascadeParams& cascade, const PhaseControl& omega)
{
    const auto q = static_cast<Eigen::Index>(cascade.size());
    const int n_ris = static_cast<int>(omega.omega.size());
    Vec g(q);
    for (Eigen::Index i = 0; i < q; i++)
    {
        const Vec alpha = steering_vector(n_ris, cascade.delta_freqs[static_cast<std::size_t>(i)]);
        g(i) = cascade.product_gains[static_cast<std::size_t>(i)] *
               (omega.omega.transpose() * alpha)(0);
    }
    return g;
}

} // namespace risanm::channel
