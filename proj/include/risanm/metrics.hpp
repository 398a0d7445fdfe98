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

#ifndef RISANM_METRICS_HPP
#define RISANM_METRICS_HPP

#include <vector>

#include "risanm/types.hpp"

namespace risanm::metrics
{

// Per-trial sin-domain MSE ||sin(true) - sin(est)||^2 / L_norm with
// sin values = 2 * frequency; best pairing, wrap-aware differences.
double mse_freqs(const std::vector<double>& truth, const std::vector<double>& est, int l_norm);

// ||rho - rho_hat||^2 / (L_br * L_rm); the pairing is inherited from the
// delta pairing, so both delta lists are required.
double mse_gains(const std::vector<double>& delta_truth, const std::vector<cxd>& rho_truth,
                 const std::vector<double>& delta_est, const std::vector<cxd>& rho_est);

// ||A(theta_rm)^H diag(omega) A(phi_br)||_F^2 / (L_br L_rm N_R^2), evaluated
// at the true angles; 1.0 is the per-path coherent ceiling.
double ris_gain(const std::vector<double>& theta_rm, const std::vector<double>& phi_br,
                const PhaseControl& omega);

// log2(1 + |w^H H f|^2 / sigma2) on an explicit channel matrix.
double se_bound(const Mat& h, const Vec& f, const Vec& w, double sigma2);

// log2(1 + |w^H cascade(H_rm, omega, H_br) f|^2 / sigma2).
double se_bound(const Mat& h_br, const Mat& h_rm, const PhaseControl& omega, const Vec& f,
                const Vec& w, double sigma2);

// T_h = 2 N ceil(K / N_RF).
int overhead_hybrid(int n, int k, int n_rf);

// T_p = N0 ceil(M0 / N_RF_M) + T L_br ceil(L_rm / N_RF_M).
int overhead_passive(int n0, int m0, int t, int l_br, int l_rm, int n_rf_ms);

} // namespace risanm::metrics

#endif
