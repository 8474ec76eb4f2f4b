// Copyright 2026 The chshq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Moment-reducing maps on two-qubit operators for a Generic setting. All of
// them are linear and accept any Hermitian input.
//
//     t1(rho)     = (rho + (E3 (x) F3) rho (E3 (x) F3)) / 2
//     t2(rho)     = (rho + partial_transpose(rho)) / 2
//     reduce(rho) = t2(t1(rho))
//
// reduce() keeps the four correlations and w33 and removes every odd moment
// together with w03 and w30.

#ifndef CHSHQ_TRANSFORMS_H
#define CHSHQ_TRANSFORMS_H

#include "chshq/linalg.h"
#include "chshq/observables.h"

namespace chshq {

/// u rho u^dagger. u must be unitary to within tol::kEigenvalue, in which
/// case this equals u rho u^{-1}; throws std::invalid_argument otherwise.
template <int N>
Matrix<N> ad(const Matrix<N> &u, const Matrix<N> &rho);

Herm4 t1(const Herm4 &rho, const Setting &setting);

/// Transpose in the E1 (x) F1 eigenbasis, applied in the frame picture:
/// x0 I + x1 E1 + x2 E2 + x3 E3 -> x0 I + x1 E1 + x2 E2 - x3 E3 on each
/// factor, so w_{mu nu} flips sign when exactly one of mu, nu is 3.
Herm4 partial_transpose(const Herm4 &rho, const Setting &setting);

Herm4 t2(const Herm4 &rho, const Setting &setting);

DensityOperator reduce(const DensityOperator &rho, const Setting &setting);

}  // namespace chshq

#endif  // CHSHQ_TRANSFORMS_H
