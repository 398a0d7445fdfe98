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

#ifndef RISANM_CONTROL_HPP
#define RISANM_CONTROL_HPP

#include <utility>

#include "risanm/types.hpp"

namespace risanm::control
{

// Phase-only projection of the principal eigenvector of C C^H with
// C = A(delta) diag(rho): omega* entries exp(-j phase(e1)).
PhaseControl design_phase(const CascadeParams& cascade, int n_ris);

// Rank-(L_br * L_rm) reconstruction A(phi_rm) * Ghat * A(theta_br)^H of the
// through-RIS channel from cascade estimates under the given phase control.
Mat reconstruct_channel(const std::vector<double>& phi_rm, const std::vector<double>& theta_br,
                        const CascadeParams& cascade, const PhaseControl& omega, int n_ms,
                        int n_bs);

// Equivalent reconstruction from two full link estimates.
Mat reconstruct_channel(const LinkParams& link_rm, const LinkParams& link_br,
                        const PhaseControl& omega, int n_ms, int n_bs, int n_ris);

// Top singular-vector pair of the reconstructed channel: f (transmit, length
// n_bs) and w (receive, length n_ms), both unit norm.
std::pair<Vec, Vec> design_beamformers(const Mat& h_hat);

} // namespace risanm::control

#endif
