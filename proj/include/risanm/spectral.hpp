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

#ifndef RISANM_SPECTRAL_HPP
#define RISANM_SPECTRAL_HPP

#include <vector>

#include "risanm/types.hpp"

namespace risanm::spectral
{

// ROOTMUSIC frequency extraction from a Hermitian Toeplitz generator: noise
// subspace from the n-L smallest eigenvalues, companion-matrix rooting of the
// noise polynomial, one root per conjugate-reciprocal pair. Frequencies are
// returned sorted ascending in [-0.5, 0.5).
std::vector<double> rootmusic(const ToeplitzGenerator& t, int paths);

// Least-squares amplitudes: solves min ||op * g - y||. Throws when the
// operator is rank-deficient (condition number above 1e10).
std::vector<cxd> ls_gains(const Vec& y, const Mat& op);

// Permutation p minimizing sum_i wrap(truth[i] - est[p[i]])^2 by exhaustive
// search (lengths <= 6).
std::vector<int> match_permutation(const std::vector<double>& truth,
                                   const std::vector<double>& est);

} // namespace risanm::spectral

#endif
