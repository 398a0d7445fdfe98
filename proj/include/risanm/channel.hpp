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

#ifndef RISANM_CHANNEL_HPP
#define RISANM_CHANNEL_HPP

#include "risanm/rng.hpp"
#include "risanm/types.hpp"

namespace risanm::channel
{

// Wraps a spatial frequency into [-0.5, 0.5).
double wrap_freq(double f);

// ULA response [exp(j 2 pi k f)]_{k=0..n-1}; norm is sqrt(n).
Vec steering_vector(int n, double f);

// Columns are steering vectors of the given frequencies.
Mat steering_matrix(int n, const std::vector<double>& freqs);

struct Link
{
    LinkParams params;
    Mat matrix; // n_rx x n_tx
};

// Draws a random L-path channel: arrival/departure frequencies uniform with
// wrap-aware minimum separation per array side, gains CN(0,1). The matrix is
// A(arrival) diag(gains) A(departure)^H.
Link synth_link(int n_rx, int n_tx, int paths, double min_sep_rx, double min_sep_tx, Rng& rng);

// Rebuilds the channel matrix from parameters.
Mat link_matrix(int n_rx, int n_tx, const LinkParams& params);

// Through-RIS channel H_rm * diag(omega) * H_br.
Mat cascade(const Mat& h_rm, const PhaseControl& omega, const Mat& h_br);

// Wrapped differences phi_br[l] - theta_rm[p], entry i = p * L_br + l.
std::vector<double> angle_differences(const std::vector<double>& phi_br,
                                      const std::vector<double>& theta_rm);

// Kronecker product rho_rm (x) rho_br, same ordering as angle_differences.
std::vector<cxd> product_gains(const std::vector<cxd>& rho_rm,
                               const std::vector<cxd>& rho_br);

// Entry i = product_gains[i] * omega^T steering_vector(N_R, delta[i]).
Vec effective_g(const CascadeParams& cascade, const PhaseControl& omega);

} // namespace risanm::channel

#endif
