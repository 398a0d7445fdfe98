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

#include "risanm/control.hpp"

#include <cmath>
#include <stdexcept>

#include "risanm/channel.hpp"

namespace risanm::control
{

PhaseControl design_phase(const CascadeParams& cascade, int n_ris)
{
    const auto q = static_cast<Eigen::Index>(cascade.size());
    if (q == 0)
        throw std::invalid_argument("design_phase: empty cascade");
    double mass = 0.0;
    for (const cxd& r : cascade.product_gains)
        mass += std::norm(r);
    if (!(mass > 0.0))
        throw std::invalid_argument("design_phase: all-zero product gains");

    Mat c(n_ris, q);
    for (Eigen::Index i = 0; i < q; i++)
        c.col(i) = channel::steering_vector(n_ris, cascade.delta_freqs[static_cast<std::size_t>(i)]) *
                   cascade.product_gains[static_cast<std::size_t>(i)];
    const Mat cc = c * c.adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (cc + cc.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("design_phase: eigendecomposition failed");
    Vec e1 = es.eigenvectors().col(n_ris - 1);
    // fix the global phase so the projection is deterministic
    const cxd ph = std::exp(cxd(0.0, -std::arg(e1(0))));
    e1 *= ph;

    PhaseControl out;
    out.omega = Vec(n_ris);
    for (Eigen::Index i = 0; i < n_ris; i++)
        out.omega(i) = std::exp(cxd(0.0, -std::arg(e1(i))));
    return out;
}

Mat reconstruct_channel(const std::vector<double>& phi_rm, const std::vector<double>& theta_br,
                        const CascadeParams& cascade, const PhaseControl& omega, int n_ms,
                        int n_bs)
{
    const std::size_t l_rm = phi_rm.size();
    const std::size_t l_br = theta_br.size();
    if (cascade.size() != l_rm * l_br)
        throw std::invalid_argument("reconstruct_channel: cascade size mismatch");
    const Vec g = channel::effective_g(cascade, omega);
    Mat gmat(static_cast<Eigen::Index>(l_rm), static_cast<Eigen::Index>(l_br));
    for (std::size_t p = 0; p < l_rm; p++)
        for (std::size_t l = 0; l < l_br; l++)
            gmat(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(l)) =
                g(static_cast<Eigen::Index>(p * l_br + l));
    return channel::steering_matrix(n_ms, phi_rm) * gmat *
           channel::steering_matrix(n_bs, theta_br).adjoint();
}

Mat reconstruct_channel(const LinkParams& link_rm, const LinkParams& link_br,
                        const PhaseControl& omega, int n_ms, int n_bs, int n_ris)
{
    if (link_rm.gains.empty() || link_br.gains.empty())
        throw std::invalid_argument("reconstruct_channel: missing link parameters");
    const Mat h_rm = channel::link_matrix(n_ms, n_ris, link_rm);
    const Mat h_br = channel::link_matrix(n_ris, n_bs, link_br);
    return channel::cascade(h_rm, omega, h_br);
}

std::pair<Vec, Vec> design_beamformers(const Mat& h_hat)
{
    if (h_hat.norm() <= 0.0)
        throw std::invalid_argument("design_beamformers: zero channel");
    Eigen::JacobiSVD<Mat> svd(h_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vec f = svd.matrixV().col(0);
    Vec w = svd.matrixU().col(0);
    f /= f.norm();
    w /= w.norm();
    return {f, w};
}

} // namespace risanm::control
