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

#ifndef RISANM_ANM_HPP
#define RISANM_ANM_HPP

#include <vector>

#include "risanm/types.hpp"

namespace risanm::anm
{

// Hermitian Toeplitz matrix with first column g.first_col.
Mat toeplitz_materialize(const ToeplitzGenerator& g);

// Adjoint of the materialization, normalized so adjoint(materialize(g)) = g:
// entry d is the mean of the d-th subdiagonal of (M + M^H)/2.
ToeplitzGenerator toeplitz_adjoint(const Mat& m);

// Nearest PSD matrix: symmetrize, clip negative eigenvalues.
Mat psd_project(const Mat& h);

// tau = tau_scale * sigma * sqrt(n1 n2 ln(n1 n2)).
double tau_rule(double sigma, int n1, int n2, const SolverOptions& opts);

// ADMM solution of
//   min_H  tau/(2 n1) Tr T(u) + tau/(2 n2) Tr T(v) + 1/2 ||Meff H X - Y||_F^2
//   s.t.   [[T(u), H], [H^H, T(v)]] >= 0
// with H of size n1 x n2, Meff (rows x n1), X (n2 x cols).
AnmSolution matrix_anm(const Mat& y, const Mat& meff, const Mat& x, int n1, int n2,
                       double tau, const SolverOptions& opts);

// Same SDP with a per-slot fidelity 1/2 sum_s ||M_s H x_s - y_s||^2; used when
// the left operator changes from snapshot to snapshot.
AnmSolution matrix_anm_slotted(const std::vector<Vec>& ys, const std::vector<Mat>& left_ops,
                               const std::vector<Vec>& pilots, int n1, int n2, double tau,
                               const SolverOptions& opts);

// ADMM solution of the single-measurement-vector problem
//   min_h  tau/2 (Tr T(u)/n + s) + 1/2 ||Phi h - y||^2
//   s.t.   [[T(u), h], [h^H, s]] >= 0.
AnmSolution vector_anm(const Vec& y, const Mat& phi, double tau, const SolverOptions& opts);

} // namespace risanm::anm

#endif
