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

#include "risanm/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "risanm/channel.hpp"
#include "risanm/spectral.hpp"

namespace risanm::metrics
{

double mse_freqs(const std::vector<double>& truth, const std::vector<double>& est, int l_norm)
{
    if (truth.size() != est.size())
        throw std::invalid_argument("mse_freqs: length mismatch");
    const std::vector<int> perm = spectral::match_permutation(truth, est);
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); i++)
    {
        // sin values are 2f; on the torus the sin-domain gap is 2 wrap(df)
        const double d = 2.0 * channel::wrap_freq(truth[i] - est[static_cast<std::size_t>(perm[i])]);
        acc += d * d;
    }
    return acc / l_norm;
}

double mse_gains(const std::vector<double>& delta_truth, const std::vector<cxd>& rho_truth,
                 const std::vector<double>& delta_est, const std::vector<cxd>& rho_est)
{
    if (rho_truth.size() != rho_est.size() || delta_truth.size() != delta_est.size() ||
        delta_truth.size() != rho_truth.size())
        throw std::invalid_argument("mse_gains: length mismatch");
    const std::vector<int> perm = spectral::match_permutation(delta_truth, delta_est);
    double acc = 0.0;
    for (std::size_t i = 0; i < rho_truth.size(); i++)
        acc += std::norm(rho_truth[i] - rho_est[static_cast<std::size_t>(perm[i])]);
    return acc / static_cast<double>(rho_truth.size());
}

double ris_gain(const std::vector<double>& theta_rm, const std::vector<double>& phi_br,
                const PhaseControl& omega)
{
    const int n_ris = static_cast<int>(omega.omega.size());
    const Mat a1 = channel::steering_matrix(n_ris, theta_rm);
    const Mat a2 = channel::steering_matrix(n_ris, phi_br);
    const Mat g = a1.adjoint() * omega.omega.asDiagonal() * a2;
    const double denom = static_cast<double>(theta_rm.size()) *
                         static_cast<double>(phi_br.size()) * static_cast<double>(n_ris) *
                         static_cast<double>(n_ris);
    return g.squaredNorm() / denom;
}

double se_bound(const Mat& h, const Vec& f, const Vec& w, double sigma2)
{
    const cxd gain = (w.adjoint() * h * f)(0);
    return std::log2(1.0 + std::norm(gain) / sigma2);
}

double se_bound(const Mat& h_br, const Mat& h_rm, const PhaseControl& omega, const Vec& f,
                const Vec& w, double sigma2)
{
    return se_bound(channel::cascade(h_rm, omega, h_br), f, w, sigma2);
}

int overhead_hybrid(int n, int k, int n_rf)
{
    if (n < 1 || k < 1 || n_rf < 1 || n_rf > k)
        throw std::invalid_argument("overhead_hybrid: invalid inputs");
    return 2 * n * ((k + n_rf - 1) / n_rf);
}

int overhead_passive(int n0, int m0, int t, int l_br, int l_rm, int n_rf_ms)
{
    if (n0 < 1 || m0 < 1 || t < 0 || l_br < 1 || l_rm < 1 || n_rf_ms < 1)
        throw std::invalid_argument("overhead_passive: invalid inputs");
    return n0 * ((m0 + n_rf_ms - 1) / n_rf_ms) + t * l_br * ((l_rm + n_rf_ms - 1) / n_rf_ms);
}

} // namespace risanm::metrics
